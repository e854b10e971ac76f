//! Exact arithmetic in `F_p`, its extensions, and univariate polynomials.

pub mod embed;
pub mod factor;
pub mod gf;
pub mod linalg;
pub mod poly;

pub use factor::{poly_factor, splitting_field, Factor, Splitting, DEFAULT_DEGREE_BOUND};
pub use gf::{field_arith, field_of_degree, ArithOp, FieldRef, Fq, GaloisField, PrimeField};
pub use linalg::Matrix;
pub use poly::UniPoly;
