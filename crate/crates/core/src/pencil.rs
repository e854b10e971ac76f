//! The bijection between non-special degree-3 divisors and quadruples of
//! conics `(A, B, G, H)` with `F = A G + B H`.
//!
//! `A = a00 z^2 + a10 xz + a01 yz - x^2` is the conic through `D` tangent to
//! `z = 0` at infinity, `B = b00 z^2 + b10 xz + b01 yz - xy` the conic
//! through `D`, infinity and `(1:0:0)`.

use std::fmt;

use crate::curve::form::Monomial;
use crate::curve::intersect::{contact_conditions, rational_vector};
use crate::curve::{CurveContext, PlaneForm, PlanePoint};
use crate::divisor::{classify, Divisor};
use crate::error::{Error, Result};
use crate::fields::{embed, splitting_field, FieldRef, Fq, Matrix, UniPoly};

/// Monomial of a conic with affine exponents `x^i y^j`.
pub const fn conic_monomial(i: u32, j: u32) -> Monomial {
    [i, j, 2 - i - j]
}

const Z2: Monomial = conic_monomial(0, 0);
const XZ: Monomial = conic_monomial(1, 0);
const YZ: Monomial = conic_monomial(0, 1);
const X2: Monomial = conic_monomial(2, 0);
const XY: Monomial = conic_monomial(1, 1);
const Y2: Monomial = conic_monomial(0, 2);

/// Four times the determinant of the symmetric matrix of a conic; zero
/// exactly when the conic is singular (a line pair or double line).
pub fn conic_discriminant(c: &PlaneForm) -> Fq {
    let f = c.field();
    let two = Fq::from_u64(f, 2);
    let m = Matrix::from_rows(
        f,
        3,
        vec![
            vec![&two * c.coeff(X2), c.coeff(XY).clone(), c.coeff(XZ).clone()],
            vec![c.coeff(XY).clone(), &two * c.coeff(Y2), c.coeff(YZ).clone()],
            vec![c.coeff(XZ).clone(), c.coeff(YZ).clone(), &two * c.coeff(Z2)],
        ],
    );
    m.determinant()
}

/// `a00 z^2 + a10 xz + a01 yz - x^2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicA {
    pub a00: Fq,
    pub a10: Fq,
    pub a01: Fq,
}

impl ConicA {
    pub fn form(&self) -> PlaneForm {
        let f = self.a00.field();
        let mut c = PlaneForm::zero(f, 2);
        c.set_coeff(Z2, self.a00.clone());
        c.set_coeff(XZ, self.a10.clone());
        c.set_coeff(YZ, self.a01.clone());
        c.set_coeff(X2, -Fq::one(f));
        c
    }

    /// Rescales a conic of the shape `span{z^2, xz, yz, x^2}` with nonzero
    /// `x^2` coefficient.
    pub fn from_form(c: &PlaneForm) -> Result<ConicA> {
        if !c.coeff(XY).is_zero() || !c.coeff(Y2).is_zero() || c.coeff(X2).is_zero() {
            return Err(Error::ShapeViolation);
        }
        let s = -c.coeff(X2).inv()?;
        Ok(ConicA {
            a00: c.coeff(Z2) * &s,
            a10: c.coeff(XZ) * &s,
            a01: c.coeff(YZ) * &s,
        })
    }

    /// `a01 != 0`; otherwise `A` splits into two lines through infinity.
    pub fn is_irreducible(&self) -> bool {
        !self.a01.is_zero()
    }

    pub fn coeffs(&self) -> [&Fq; 3] {
        [&self.a00, &self.a10, &self.a01]
    }
}

/// `b00 z^2 + b10 xz + b01 yz - xy`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicB {
    pub b00: Fq,
    pub b10: Fq,
    pub b01: Fq,
}

impl ConicB {
    pub fn form(&self) -> PlaneForm {
        let f = self.b00.field();
        let mut c = PlaneForm::zero(f, 2);
        c.set_coeff(Z2, self.b00.clone());
        c.set_coeff(XZ, self.b10.clone());
        c.set_coeff(YZ, self.b01.clone());
        c.set_coeff(XY, -Fq::one(f));
        c
    }

    /// Rescales a conic of the shape `span{z^2, xz, yz, xy}` with nonzero
    /// `xy` coefficient.
    pub fn from_form(c: &PlaneForm) -> Result<ConicB> {
        if !c.coeff(X2).is_zero() || !c.coeff(Y2).is_zero() || c.coeff(XY).is_zero() {
            return Err(Error::ShapeViolation);
        }
        let s = -c.coeff(XY).inv()?;
        Ok(ConicB {
            b00: c.coeff(Z2) * &s,
            b10: c.coeff(XZ) * &s,
            b01: c.coeff(YZ) * &s,
        })
    }

    pub fn coeffs(&self) -> [&Fq; 3] {
        [&self.b00, &self.b10, &self.b01]
    }
}

/// A point of the affine variety `Z`: conics with `F = A G + B H` and the
/// `xy` coefficient of `G` equal to 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ZPoint {
    pub a: ConicA,
    pub b: ConicB,
    pub g: PlaneForm,
    pub h: PlaneForm,
}

impl ZPoint {
    pub fn field(&self) -> &FieldRef {
        self.a.a00.field()
    }

    /// `G` coefficient of `x^i y^j`.
    pub fn g(&self, i: u32, j: u32) -> &Fq {
        self.g.coeff(conic_monomial(i, j))
    }

    /// `H` coefficient of `x^i y^j`.
    pub fn h(&self, i: u32, j: u32) -> &Fq {
        self.h.coeff(conic_monomial(i, j))
    }

    /// `A G + B H`.
    pub fn product(&self) -> PlaneForm {
        self.a.form().mul(&self.g).add(&self.b.form().mul(&self.h))
    }
}

impl fmt::Debug for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZPoint")
            .field("A", &self.a.form())
            .field("B", &self.b.form())
            .field("G", &self.g)
            .field("H", &self.h)
            .finish()
    }
}

/// Basis `z^2, xz, yz` shared by the two conic shapes.
fn linear_part_basis(f: &FieldRef) -> Vec<PlaneForm> {
    [Z2, XZ, YZ]
        .iter()
        .map(|&m| PlaneForm::from_terms(f, 2, &[(m, 1)]))
        .collect()
}

/// Solves `X . (L + fixed) >= D` for `L` in `span{z^2, xz, yz}`.
fn solve_shape(ctx: &CurveContext, d: &Divisor, fixed: &PlaneForm) -> Result<[Fq; 3]> {
    let mut basis = linear_part_basis(ctx.field());
    basis.push(fixed.clone());
    let m = contact_conditions(ctx, &basis, d)?;
    if m.rows() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: m.rows(),
        });
    }
    let lhs = Matrix::from_rows(
        m.field(),
        3,
        (0..3).map(|r| m.row(r)[..3].to_vec()).collect(),
    );
    let rhs: Vec<Fq> = (0..3).map(|r| -m.get(r, 3)).collect();
    let (x, kernel) = lhs.solve(&rhs).ok_or(Error::SingularSystem)?;
    if !kernel.is_empty() {
        return Err(Error::SingularSystem);
    }
    let x = rational_vector(&x, ctx.field())?;
    Ok([x[0].clone(), x[1].clone(), x[2].clone()])
}

/// The conics `A` (with `X . A >= D + 2 inf`) and `B` (with `X . B >= D + inf`)
/// attached to a divisor in the non-special open set.
pub fn conics_from_divisor(ctx: &CurveContext, d: &Divisor) -> Result<(ConicA, ConicB)> {
    let report = classify(ctx, d)?;
    if !report.in_z {
        return Err(Error::NotInZ(format!("{:?}", report.violations)));
    }
    conics_from_divisor_unchecked(ctx, d)
}

/// As [`conics_from_divisor`] without the membership test; the linear
/// systems are still required to be invertible.
pub fn conics_from_divisor_unchecked(ctx: &CurveContext, d: &Divisor) -> Result<(ConicA, ConicB)> {
    let f = ctx.field();
    let minus_x2 = PlaneForm::from_terms(f, 2, &[(X2, -1)]);
    let minus_xy = PlaneForm::from_terms(f, 2, &[(XY, -1)]);
    let [a00, a10, a01] = solve_shape(ctx, d, &minus_x2)?;
    let [b00, b10, b01] = solve_shape(ctx, d, &minus_xy)?;
    Ok((ConicA { a00, a10, a01 }, ConicB { b00, b10, b01 }))
}

/// The interpolation matrix with rows `(1, x_i, y_i)` for simple points
/// and `(0, F_y, -F_x)` for the tangency condition at a doubled point,
/// with the right-hand sides for `A` and for `B`. Points of multiplicity 3
/// are not covered by this explicit form.
pub fn interpolation_system(ctx: &CurveContext, d: &Divisor) -> Result<(Matrix, Vec<Fq>, Vec<Fq>)> {
    let field = d.field();
    let mut m = Matrix::zeros(field, 0, 3);
    let mut rhs_a = Vec::new();
    let mut rhs_b = Vec::new();
    let fx = ctx.gradient()[0].lift(field)?;
    let fy = ctx.gradient()[1].lift(field)?;
    for (pt, mult) in d.points() {
        if pt.is_infinity() || *mult > 2 {
            return Err(Error::SingularSystem);
        }
        let (x, y) = (pt.x().clone(), pt.y().clone());
        m.push_row(vec![Fq::one(field), x.clone(), y.clone()]);
        rhs_a.push(&x * &x);
        rhs_b.push(&x * &y);
        if *mult == 2 {
            let gx = fx.eval_coords(pt.coords());
            let gy = fy.eval_coords(pt.coords());
            m.push_row(vec![Fq::zero(field), gy.clone(), -&gx]);
            let two = Fq::from_u64(field, 2);
            rhs_a.push(&(&two * &x) * &gy);
            rhs_b.push(&(&y * &gy) - &(&x * &gx));
        }
    }
    Ok((m, rhs_a, rhs_b))
}

/// Coefficient matrix of `(G, H) -> A G + B H` (15 x 12, columns `G` then
/// `H` in the frozen conic order).
fn decomposition_matrix(a: &PlaneForm, b: &PlaneForm) -> Matrix {
    let f = a.field();
    let mut cols = Vec::with_capacity(12);
    for factor in [a, b] {
        for m in crate::curve::monomials(2) {
            let e = PlaneForm::from_terms(f, 2, &[(m, 1)]);
            cols.push(factor.mul(&e));
        }
    }
    let rows = (0..15)
        .map(|r| cols.iter().map(|c| c.coeffs()[r].clone()).collect())
        .collect();
    Matrix::from_rows(f, 12, rows)
}

/// Dimension of the affine space of `(G, H)` with `F = A G + B H`, or
/// `None` when there is no solution.
pub fn decomposition_solution_dimension(
    ctx: &CurveContext,
    a: &ConicA,
    b: &ConicB,
) -> Option<usize> {
    let m = decomposition_matrix(&a.form(), &b.form());
    m.solve(ctx.quartic().coeffs()).map(|(_, k)| k.len())
}

/// The unique `(G, H)` with `F = A G + B H` and `g11 = 1`.
pub fn complete_decomposition(
    ctx: &CurveContext,
    a: &ConicA,
    b: &ConicB,
) -> Result<(PlaneForm, PlaneForm)> {
    let m = decomposition_matrix(&a.form(), &b.form());
    let (x, kernel) = m
        .solve(ctx.quartic().coeffs())
        .ok_or(Error::NoDecomposition)?;
    let f = ctx.field();
    let g11 = crate::curve::form::monomial_index(XY);
    let x = match kernel.len() {
        0 => {
            if !x[g11].is_one() {
                return Err(Error::NoDecomposition);
            }
            x
        }
        1 => {
            // The kernel is spanned by (B, -A); its g11 entry is -1.
            let k = &kernel[0];
            let lambda = (&Fq::one(f) - &x[g11]).try_div(&k[g11])?;
            x.iter()
                .zip(k)
                .map(|(xi, ki)| xi + &(&lambda * ki))
                .collect()
        }
        n => {
            return Err(Error::Internal(format!(
                "decomposition solution space has dimension {n}"
            )))
        }
    };
    let g = PlaneForm::from_coeffs(f, 2, x[..6].to_vec())?;
    let h = PlaneForm::from_coeffs(f, 2, x[6..].to_vec())?;
    Ok((g, h))
}

/// Builds the full `Z` point of a divisor in the non-special open set.
pub fn zpoint_from_divisor(ctx: &CurveContext, d: &Divisor) -> Result<ZPoint> {
    let (a, b) = conics_from_divisor(ctx, d)?;
    let (g, h) = complete_decomposition(ctx, &a, &b)?;
    Ok(ZPoint { a, b, g, h })
}

/// Affine points of `A . B` with multiplicities, for `A` irreducible. On
/// `A` the curve is the graph `y = (x^2 - a10 x - a00) / a01`; substituting
/// into `a01 B` leaves the cubic `a01 b00 + a01 b10 x + (b01 - x)(x^2 - a10 x - a00)`.
fn conic_intersection(a: &ConicA, b: &ConicB) -> Result<Vec<(PlanePoint, u32)>> {
    let f = a.a00.field();
    let q = UniPoly::new(f, vec![-&a.a00, -&a.a10, Fq::one(f)]);
    let lin = UniPoly::new(f, vec![b.b01.clone(), -Fq::one(f)]);
    let base = UniPoly::new(f, vec![&a.a01 * &b.b00, &a.a01 * &b.b10]);
    let cubic = base.add(&lin.mul(&q));
    let split = splitting_field(&cubic)?;
    let k = &split.field;
    let a01 = embed::lift(&a.a01, k)?.inv()?;
    let qk = q.lift(k)?;
    Ok(split
        .roots
        .iter()
        .map(|(x0, m)| {
            let y0 = &qk.eval(x0) * &a01;
            (PlanePoint::affine(x0.clone(), y0), *m)
        })
        .collect())
}

/// The divisor `D` with `A . B = D + inf`, validated to be in the
/// non-special open set and to come from a decomposition of `F`.
pub fn divisor_from_conics(ctx: &CurveContext, a: &ConicA, b: &ConicB) -> Result<Divisor> {
    if !a.is_irreducible() {
        // A = -(x - r1 z)(x - r2 z); B contains x = r z iff b01 = r and b00 + b10 r = 0.
        let r = &b.b01;
        let on_a = (&(&(-&(r * r)) + &(&a.a10 * r)) + &a.a00).is_zero();
        let on_b = (&b.b00 + &(&b.b10 * r)).is_zero();
        if on_a && on_b {
            return Err(Error::CommonComponent);
        }
        return Err(Error::NotInZ("A is reducible (a01 = 0)".into()));
    }
    if complete_decomposition(ctx, a, b).is_err() {
        return Err(Error::NotInZ("F = A G + B H has no solution".into()));
    }
    let pts = conic_intersection(a, b)?;
    for (pt, _) in &pts {
        if !ctx.contains(pt)? {
            return Err(Error::NotInZ("A . B is not contained in X".into()));
        }
    }
    let d = Divisor::from_points(ctx.p(), pts)?;
    let report = classify(ctx, &d)?;
    if !report.in_z {
        return Err(Error::NotInZ(format!("{:?}", report.violations)));
    }
    let (a2, b2) = conics_from_divisor_unchecked(ctx, &d)?;
    if &a2 != a || &b2 != b {
        return Err(Error::Internal("conic pair does not round-trip".into()));
    }
    Ok(d)
}

/// Failures reported by [`zpoint_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZDiagnostic {
    FieldMismatch,
    CoefficientMismatch(Monomial),
    G11NotOne,
    ReducibleA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZValidation {
    pub valid: bool,
    pub diagnostics: Vec<ZDiagnostic>,
}

/// Checks the defining equations and normalizations of `Z`.
pub fn zpoint_validate(ctx: &CurveContext, z: &ZPoint) -> ZValidation {
    let mut diagnostics = Vec::new();
    let f = ctx.field();
    let same = [&z.a.a00, &z.a.a10, &z.a.a01, &z.b.b00, &z.b.b10, &z.b.b01]
        .iter()
        .all(|c| c.field().same_as(f))
        && z.g.field().same_as(f)
        && z.h.field().same_as(f)
        && z.g.degree() == 2
        && z.h.degree() == 2;
    if !same {
        diagnostics.push(ZDiagnostic::FieldMismatch);
        return ZValidation {
            valid: false,
            diagnostics,
        };
    }
    let prod = z.product();
    for (m, c) in ctx.quartic().terms() {
        if prod.coeff(m) != c {
            diagnostics.push(ZDiagnostic::CoefficientMismatch(m));
        }
    }
    if !z.g(1, 1).is_one() {
        diagnostics.push(ZDiagnostic::G11NotOne);
    }
    if !z.a.is_irreducible() || conic_discriminant(&z.a.form()).is_zero() {
        diagnostics.push(ZDiagnostic::ReducibleA);
    }
    ZValidation {
        valid: diagnostics.is_empty(),
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::intersection_divisor;
    use crate::divisor::random_reduced_divisor;

    fn ctx() -> CurveContext {
        CurveContext::reference(31).unwrap()
    }

    #[test]
    fn seeded_decomposition_satisfies_identity() {
        let c = ctx();
        for seed in 0..5 {
            let d = random_reduced_divisor(&c, seed).unwrap();
            let z = zpoint_from_divisor(&c, &d).unwrap();
            assert_eq!(&z.product(), c.quartic());
            assert!(z.g(1, 1).is_one());
            assert!(zpoint_validate(&c, &z).valid);
            assert_eq!(decomposition_solution_dimension(&c, &z.a, &z.b), Some(1));
            assert_eq!(divisor_from_conics(&c, &z.a, &z.b).unwrap(), d);
        }
    }

    #[test]
    fn conics_meet_the_curve_as_expected() {
        let c = ctx();
        let d = random_reduced_divisor(&c, 3).unwrap();
        let (a, b) = conics_from_divisor(&c, &d).unwrap();
        let xa = intersection_divisor(&c, &a.form()).unwrap();
        let xb = intersection_divisor(&c, &b.form()).unwrap();
        assert_eq!(xa.infinity_multiplicity(), 2);
        assert_eq!(xb.infinity_multiplicity(), 1);
        assert!(xa.contains(&d));
        assert!(xb.contains(&d));
    }

    #[test]
    fn explicit_interpolation_agrees() {
        let c = ctx();
        let d = random_reduced_divisor(&c, 4).unwrap();
        let (a, b) = conics_from_divisor(&c, &d).unwrap();
        let (m, ra, rb) = interpolation_system(&c, &d).unwrap();
        assert!(!m.determinant().is_zero());
        let (sa, _) = m.solve(&ra).unwrap();
        let (sb, _) = m.solve(&rb).unwrap();
        assert_eq!(sa, a.coeffs().map(|c| c.clone()).to_vec());
        assert_eq!(sb, b.coeffs().map(|c| c.clone()).to_vec());
    }

    #[test]
    fn gauge_shift_repins_to_the_same_pair() {
        let c = ctx();
        let d = random_reduced_divisor(&c, 5).unwrap();
        let z = zpoint_from_divisor(&c, &d).unwrap();
        let g2 = z.g.add(&z.b.form());
        let h2 = z.h.sub(&z.a.form());
        assert_eq!(&z.a.form().mul(&g2).add(&z.b.form().mul(&h2)), c.quartic());
        let (g, h) = complete_decomposition(&c, &z.a, &z.b).unwrap();
        assert_eq!((g, h), (z.g.clone(), z.h.clone()));
    }

    #[test]
    fn perturbed_h_is_pinpointed() {
        let c = ctx();
        let d = random_reduced_divisor(&c, 6).unwrap();
        let mut z = zpoint_from_divisor(&c, &d).unwrap();
        let m = conic_monomial(0, 0);
        let bumped = z.h.coeff(m) + &Fq::one(c.field());
        z.h.set_coeff(m, bumped);
        let v = zpoint_validate(&c, &z);
        assert!(!v.valid);
        assert!(v
            .diagnostics
            .iter()
            .all(|d| matches!(d, ZDiagnostic::CoefficientMismatch(_))));
        // B H gains B z^2: exactly the monomials of B times z^2 change.
        let support = z.b.form().coeffs().iter().filter(|c| !c.is_zero()).count();
        assert_eq!(v.diagnostics.len(), support);
    }

    #[test]
    fn reducible_a_is_flagged() {
        let c = ctx();
        let d = random_reduced_divisor(&c, 7).unwrap();
        let mut z = zpoint_from_divisor(&c, &d).unwrap();
        z.a.a01 = Fq::zero(c.field());
        let v = zpoint_validate(&c, &z);
        assert!(v.diagnostics.contains(&ZDiagnostic::ReducibleA));
    }

    #[test]
    fn shared_line_is_a_common_component() {
        let c = ctx();
        let f = c.field();
        let a = ConicA {
            a00: Fq::zero(f),
            a10: Fq::from_u64(f, 3),
            a01: Fq::zero(f),
        };
        let b = ConicB {
            b00: Fq::zero(f),
            b10: Fq::from_u64(f, 5),
            b01: Fq::zero(f),
        };
        assert_eq!(
            divisor_from_conics(&c, &a, &b).unwrap_err(),
            Error::CommonComponent
        );
    }
}
