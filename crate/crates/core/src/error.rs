use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable token via [`Error::code`],
/// which the command-line front end prints on standard error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime >= 5")]
    InvalidPrime(u64),
    #[error("extension modulus is not monic irreducible of degree {0}")]
    InvalidModulus(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("splitting field degree {needed} exceeds bound {bound}")]
    DegreeOverflow { needed: usize, bound: usize },

    #[error("curve does not pass through (0:1:0)")]
    NotOnCurveAtInfinity,
    #[error("F(x,y,0) is not c*x^4 with c != 0")]
    NoHyperflexNormalization,
    #[error("tangent line at (0:1:0) is not z = 0")]
    WrongTangent,
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("form vanishes identically on the curve")]
    ComponentShared,

    #[error("divisor has degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("divisor point is not on the curve")]
    PointOffCurve,
    #[error("divisor is not stable under Frobenius")]
    NotRational,
    #[error("divisor is not contained in the minuend")]
    NotContained,
    #[error("random sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),

    #[error("linear system for the pencil is singular")]
    SingularSystem,
    #[error("divisor or conic pair is outside the open set Z: {0}")]
    NotInZ(String),
    #[error("F = A G + B H has no solution for the given (A, B)")]
    NoDecomposition,
    #[error("conics share a common component")]
    CommonComponent,
    #[error("conic cannot be normalized to the B shape")]
    ShapeViolation,

    #[error("point count over F_{{p^{k}}} exceeds the enumeration budget")]
    BudgetExceeded { k: u32 },
    #[error("point counts are inconsistent: {0}")]
    InconsistentCounts(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable `E_<CODE>` token for scripting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "E_INVALID_PRIME",
            Error::InvalidModulus(_) => "E_INVALID_MODULUS",
            Error::DivisionByZero => "E_DIVISION_BY_ZERO",
            Error::FieldMismatch(_) => "E_FIELD_MISMATCH",
            Error::ZeroPolynomial => "E_ZERO_POLYNOMIAL",
            Error::DegreeOverflow { .. } => "E_DEGREE_OVERFLOW",
            Error::NotOnCurveAtInfinity => "E_NOT_ON_CURVE_AT_INFINITY",
            Error::NoHyperflexNormalization => "E_NO_HYPERFLEX_NORMALIZATION",
            Error::WrongTangent => "E_WRONG_TANGENT",
            Error::SingularCurve(_) => "E_SINGULAR_CURVE",
            Error::NotOnCurve => "E_NOT_ON_CURVE",
            Error::SingularPoint => "E_SINGULAR_POINT",
            Error::ComponentShared => "E_COMPONENT_SHARED",
            Error::WrongDegree { .. } => "E_WRONG_DEGREE",
            Error::PointOffCurve => "E_POINT_OFF_CURVE",
            Error::NotRational => "E_NOT_RATIONAL",
            Error::NotContained => "E_NOT_CONTAINED",
            Error::SamplingExhausted(_) => "E_SAMPLING_EXHAUSTED",
            Error::SingularSystem => "E_SINGULAR_SYSTEM",
            Error::NotInZ(_) => "E_NOT_IN_Z",
            Error::NoDecomposition => "E_NO_DECOMPOSITION",
            Error::CommonComponent => "E_COMMON_COMPONENT",
            Error::ShapeViolation => "E_SHAPE_VIOLATION",
            Error::BudgetExceeded { .. } => "E_BUDGET_EXCEEDED",
            Error::InconsistentCounts(_) => "E_INCONSISTENT_COUNTS",
            Error::Parse(_) => "E_PARSE",
            Error::Internal(_) => "E_INTERNAL",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
