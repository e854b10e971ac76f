//! Intersection divisors `X . C` and linear systems cut by contact
//! conditions.

use crate::curve::context::CurveContext;
use crate::curve::form::PlaneForm;
use crate::curve::local::{Branch, PRECISION};
use crate::curve::point::PlanePoint;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::fields::embed;
use crate::fields::factor::{self, lcm_usize, DEFAULT_DEGREE_BOUND};
use crate::fields::{field_of_degree, poly_factor, FieldRef, Fq, Matrix, UniPoly};

/// Class of `c` (coefficients in `y` over `K[x]`) modulo the monic cubic
/// `y^3 + e[2] y^2 + e[1] y + e[0]`.
fn reduce_mod_cubic(c: &[UniPoly], e: &[UniPoly; 3]) -> [UniPoly; 3] {
    let field = e[0].field().clone();
    let mut acc: [UniPoly; 3] = [
        UniPoly::zero(&field),
        UniPoly::zero(&field),
        UniPoly::zero(&field),
    ];
    for ck in c.iter().rev() {
        acc = times_y(&acc, e);
        acc[0] = acc[0].add(ck);
    }
    acc
}

fn times_y(r: &[UniPoly; 3], e: &[UniPoly; 3]) -> [UniPoly; 3] {
    [
        r[2].mul(&e[0]).neg(),
        r[0].sub(&r[2].mul(&e[1])),
        r[1].sub(&r[2].mul(&e[2])),
    ]
}

/// Norm of `c` from `K[x][y]/(f)` down to `K[x]`, where `f` is cubic in `y`
/// with constant leading coefficient. Equals `Res_y(f, c)` up to a nonzero
/// constant, so its roots are the `x`-coordinates of the affine common zeros.
pub(crate) fn norm_y(f: &[UniPoly], c: &[UniPoly]) -> Result<UniPoly> {
    if f.len() != 4 || f[3].degree() != Some(0) {
        return Err(Error::Internal("curve is not monic cubic in y".into()));
    }
    let lead = f[3].coeff(0).inv()?;
    let e = [f[0].scale(&lead), f[1].scale(&lead), f[2].scale(&lead)];
    let v0 = reduce_mod_cubic(c, &e);
    let v1 = times_y(&v0, &e);
    let v2 = times_y(&v1, &e);
    // Columns v0, v1, v2 of the multiplication matrix.
    let m = |r: usize, col: usize| -> &UniPoly {
        match col {
            0 => &v0[r],
            1 => &v1[r],
            _ => &v2[r],
        }
    };
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m(r1, c1).mul(m(r2, c2)).sub(&m(r1, c2).mul(m(r2, c1)))
    };
    let det = m(0, 0)
        .mul(&minor(1, 2, 1, 2))
        .sub(&m(0, 1).mul(&minor(1, 2, 0, 2)))
        .add(&m(0, 2).mul(&minor(1, 2, 0, 1)));
    Ok(det)
}

/// Evaluates a polynomial in `y` with `K[x]` coefficients at `x = x0`.
pub(crate) fn specialize_x(c: &[UniPoly], x0: &Fq) -> Result<UniPoly> {
    let field = x0.field().clone();
    let coeffs = c
        .iter()
        .map(|p| Ok(p.lift(&field)?.eval(x0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(&field, coeffs))
}

/// The effective divisor `X . C` of degree `4 deg C`, in one common field.
pub fn intersection_divisor(ctx: &CurveContext, c: &PlaneForm) -> Result<Divisor> {
    intersection_divisor_bounded(ctx, c, DEFAULT_DEGREE_BOUND)
}

pub fn intersection_divisor_bounded(
    ctx: &CurveContext,
    c: &PlaneForm,
    bound: usize,
) -> Result<Divisor> {
    if c.is_zero() {
        return Err(Error::ComponentShared);
    }
    let p = ctx.p();
    let f = ctx.affine();
    let cy = c.affine_in_y();
    let n = if cy.is_empty() {
        // C is a power of z times a constant: only meets X at infinity.
        UniPoly::one(ctx.field())
    } else {
        norm_y(f, &cy)?
    };
    if n.is_zero() {
        return Err(Error::ComponentShared);
    }

    // Field degree needed for every point of the divisor.
    let mut degree = 1;
    let factors = if n.degree() == Some(0) {
        vec![]
    } else {
        poly_factor(&n)?
    };
    for fac in &factors {
        let e = fac.poly.degree().unwrap();
        let k = field_of_degree(p, e)?;
        let x0 = factor::roots(&fac.poly.lift(&k)?)?
            .into_iter()
            .map(|(r, _)| r)
            .min()
            .ok_or_else(|| Error::Internal("irreducible factor without root".into()))?;
        let g = specialize_x(f, &x0)?.gcd(&specialize_x(&cy, &x0)?);
        let s = factor::splitting_degree(&g)?;
        degree = lcm_usize(degree, e * s);
    }
    if degree > bound {
        return Err(Error::DegreeOverflow {
            needed: degree,
            bound,
        });
    }
    let target = field_of_degree(p, degree)?;

    let mut points = Vec::new();
    let ctarget = c.lift(&target)?;
    for fac in &factors {
        for (x0, _) in factor::roots(&fac.poly.lift(&target)?)? {
            let g = specialize_x(f, &x0)?.gcd(&specialize_x(&cy, &x0)?);
            for (y0, _) in factor::roots(&g)? {
                let pt = PlanePoint::affine(x0.clone(), y0);
                let v = local_multiplicity(ctx, &ctarget, &pt)?;
                points.push((pt, v));
            }
        }
    }
    let inf = PlanePoint::infinity(ctx.field());
    let v_inf = local_multiplicity(ctx, c, &inf)?;
    if v_inf > 0 {
        points.push((inf, v_inf));
    }
    let d = Divisor::from_points(p, points)?;
    let expected = 4 * c.degree() as usize;
    if d.degree() != expected {
        return Err(Error::Internal(format!(
            "intersection has degree {} instead of {expected}",
            d.degree()
        )));
    }
    Ok(d)
}

fn local_multiplicity(ctx: &CurveContext, c: &PlaneForm, pt: &PlanePoint) -> Result<u32> {
    let br = Branch::at(ctx.quartic(), pt, PRECISION)?;
    match br.valuation(c)? {
        Some(v) => Ok(v as u32),
        None => Err(Error::ComponentShared),
    }
}

/// Rows imposing `I_P(form, X) >= m_P` at every point of `d` on forms
/// `sum lambda_j basis[j]`. The matrix lives over the field of `d`.
pub fn contact_conditions(ctx: &CurveContext, basis: &[PlaneForm], d: &Divisor) -> Result<Matrix> {
    contact_conditions_at(ctx, basis, d.field(), d.points())
}

/// As [`contact_conditions`] for points that need not form a rational
/// divisor; every point must lie in `field`.
pub fn contact_conditions_at(
    ctx: &CurveContext,
    basis: &[PlaneForm],
    field: &FieldRef,
    points: &[(PlanePoint, u32)],
) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, 0, basis.len());
    for (pt, mult) in points {
        let mult = *mult as usize;
        if mult >= PRECISION {
            return Err(Error::Internal(
                "contact order beyond series precision".into(),
            ));
        }
        let pt = pt.lift(field)?;
        let br = Branch::at(ctx.quartic(), &pt, PRECISION)?;
        let mut cache: Vec<(u32, Vec<Vec<Fq>>)> = Vec::new();
        let mut series = Vec::with_capacity(basis.len());
        for b in basis {
            let deg = b.degree();
            if !cache.iter().any(|(d, _)| *d == deg) {
                cache.push((deg, br.monomial_series(deg)));
            }
            let mono = &cache.iter().find(|(d, _)| *d == deg).unwrap().1;
            series.push(br.series_with(b, mono)?);
        }
        for i in 0..mult {
            m.push_row(series.iter().map(|s| s[i].clone()).collect());
        }
    }
    Ok(m)
}

/// Restricts a vector over an extension to `F_p`, failing loudly if some
/// entry is not rational.
pub(crate) fn rational_vector(v: &[Fq], prime: &FieldRef) -> Result<Vec<Fq>> {
    v.iter()
        .map(|c| {
            embed::restrict(c, prime)?.ok_or_else(|| {
                Error::Internal("Galois-stable system has an irrational solution".into())
            })
        })
        .collect()
}

/// Basis over `F_p` of the forms in `span(basis)` with `X . form >= d`.
pub fn forms_through(
    ctx: &CurveContext,
    basis: &[PlaneForm],
    d: &Divisor,
) -> Result<Vec<PlaneForm>> {
    let m = contact_conditions(ctx, basis, d)?;
    m.kernel()
        .iter()
        .map(|v| {
            let v = rational_vector(v, ctx.field())?;
            Ok(combine(basis, &v))
        })
        .collect()
}

/// `sum v_j basis[j]`.
pub fn combine(basis: &[PlaneForm], v: &[Fq]) -> PlaneForm {
    let mut acc = PlaneForm::zero(basis[0].field(), basis[0].degree());
    for (b, c) in basis.iter().zip(v) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Dimension of `{ form in span(basis) : X . form >= d }`.
pub fn system_dimension(ctx: &CurveContext, basis: &[PlaneForm], d: &Divisor) -> Result<usize> {
    let m = contact_conditions(ctx, basis, d)?;
    Ok(basis.len() - m.rank())
}

/// All monomials of degree `deg` as forms over `F_p`, in the frozen order.
pub fn monomial_basis(field: &FieldRef, deg: u32) -> Vec<PlaneForm> {
    crate::curve::form::monomials(deg)
        .into_iter()
        .map(|m| PlaneForm::from_terms(field, deg, &[(m, 1)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> CurveContext {
        CurveContext::reference(31).unwrap()
    }

    #[test]
    fn line_at_infinity_is_hyperflex() {
        let c = ctx();
        let z = PlaneForm::from_terms(c.field(), 1, &[([0, 0, 1], 1)]);
        let d = intersection_divisor(&c, &z).unwrap();
        assert_eq!(d, Divisor::infinity(31, 4).unwrap());
    }

    #[test]
    fn bezout_for_random_cubics() {
        let c = ctx();
        let f = c.field();
        for s in 0..5i64 {
            let cubic = PlaneForm::from_terms(
                f,
                3,
                &[
                    ([3, 0, 0], s + 1),
                    ([1, 1, 1], 7 - s),
                    ([0, 2, 1], 3),
                    ([0, 0, 3], 2 * s + 5),
                    ([1, 0, 2], s),
                ],
            );
            let d = intersection_divisor(&c, &cubic).unwrap();
            assert_eq!(d.degree(), 12);
            for (pt, _) in d.points() {
                assert!(cubic.evaluate(pt).unwrap().is_zero());
                assert!(c.quartic().evaluate(pt).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn product_is_additive() {
        let c = ctx();
        let f = c.field();
        let l1 = PlaneForm::from_terms(f, 1, &[([1, 0, 0], 1), ([0, 1, 0], 3), ([0, 0, 1], 4)]);
        let l2 = PlaneForm::from_terms(f, 1, &[([1, 0, 0], 2), ([0, 0, 1], 9)]);
        let d1 = intersection_divisor(&c, &l1).unwrap();
        let d2 = intersection_divisor(&c, &l2).unwrap();
        let d12 = intersection_divisor(&c, &l1.mul(&l2)).unwrap();
        assert_eq!(d1.add(&d2), d12);
    }
}
