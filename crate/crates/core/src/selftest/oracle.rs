//! Enumeration oracle for linear equivalence of degree-3 divisors over a
//! small prime field. It finds conics by exhaustive search and locates
//! points by substitution and univariate root finding; nothing here goes
//! through contact matrices, local series or the group law.

use crate::curve::{CurveContext, PlaneForm, PlanePoint};
use crate::divisor::Divisor;
use crate::error::Result;
use crate::fields::factor::lcm_usize;
use crate::fields::{embed, field_of_degree, splitting_field, Fq, UniPoly};

/// Every projective conic `c0 z^2 + c1 xz + c2 yz + c3 x^2`, first nonzero
/// coefficient 1. These are the conics meeting `X` at least twice at
/// infinity.
pub fn conics_through_double_infinity(ctx: &CurveContext) -> Vec<PlaneForm> {
    let p = ctx.p();
    let f = ctx.field();
    let mono = [[0, 0, 2], [1, 0, 1], [0, 1, 1], [2, 0, 0]];
    let mut out = Vec::new();
    for lead in 0..4 {
        let free = 3 - lead;
        for code in 0..p.pow(free as u32) {
            let mut c = PlaneForm::zero(f, 2);
            c.set_coeff(mono[lead], Fq::one(f));
            let mut r = code;
            for m in &mono[lead + 1..] {
                c.set_coeff(*m, Fq::from_u64(f, r % p));
                r /= p;
            }
            out.push(c);
        }
    }
    out
}

/// `I_P(C, X) >= m` for `m <= 2` at an affine point, via the derivative of
/// `C` along the tangent direction `(F_y, -F_x, 0)`.
fn vanishes_to(ctx: &CurveContext, c: &PlaneForm, pt: &PlanePoint, m: u32) -> Result<bool> {
    if !c.evaluate(pt)?.is_zero() {
        return Ok(false);
    }
    if m < 2 {
        return Ok(true);
    }
    let g = ctx.gradient();
    let (fx, fy) = (g[0].evaluate(pt)?, g[1].evaluate(pt)?);
    let (cx, cy) = (c.partial(0).evaluate(pt)?, c.partial(1).evaluate(pt)?);
    Ok((&(&cx * &fy) - &(&cy * &fx)).is_zero())
}

fn vanishes_on(ctx: &CurveContext, c: &PlaneForm, pts: &[(PlanePoint, u32)]) -> Result<bool> {
    for (pt, m) in pts {
        if !vanishes_to(ctx, c, pt, *m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides `d1 - 3 inf ~ d2 - 3 inf` as `d1 + d2' ~ 6 inf`, where
/// `X . A = d2 + d2' + 2 inf`. `None` when the configuration needs contact
/// of order three or more, or a point at infinity.
pub fn brute_equivalent(ctx: &CurveContext, d1: &Divisor, d2: &Divisor) -> Result<Option<bool>> {
    let conics = conics_through_double_infinity(ctx);
    let simple =
        |d: &Divisor| d.infinity_multiplicity() == 0 && d.points().iter().all(|(_, m)| *m <= 2);
    if !simple(d1) || !simple(d2) {
        return Ok(None);
    }
    let mut a = None;
    for c in &conics {
        if vanishes_on(ctx, c, d2.points())? {
            a = Some(c.clone());
            break;
        }
    }
    let Some(a) = a else { return Ok(None) };

    // On A the curve is the graph y = -(c0 + c1 x + c3 x^2) / c2.
    let f = ctx.field();
    let coef = |m: [u32; 3]| a.coeff(m).clone();
    let c2 = coef([0, 1, 1]);
    if c2.is_zero() {
        return Ok(None);
    }
    let s = -c2.inv()?;
    let ya = UniPoly::new(f, vec![coef([0, 0, 2]), coef([1, 0, 1]), coef([2, 0, 0])]).scale(&s);
    let mut r = UniPoly::zero(f);
    let mut pw = UniPoly::one(f);
    for fj in ctx.affine() {
        r = r.add(&fj.mul(&pw));
        pw = pw.mul(&ya);
    }
    if r.degree() != Some(6) {
        return Ok(None);
    }
    let k2 = d2.field();
    let mut known = UniPoly::one(k2);
    for (pt, m) in d2.points() {
        known = known.mul(&UniPoly::linear_root(pt.x()).pow(*m));
    }
    let known = UniPoly::new(
        f,
        known
            .coeffs()
            .iter()
            .map(|c| embed::restrict(c, f).map(|v| v.expect("divisor is rational")))
            .collect::<Result<_>>()?,
    );
    let (residual, rem) = r.divrem(&known)?;
    if !rem.is_zero() {
        return Ok(None);
    }
    let split = splitting_field(&residual)?;
    let common = field_of_degree(
        ctx.p(),
        lcm_usize(split.field.degree(), d1.field().degree()),
    )?;
    let ya_big = ya.lift(&common)?;
    let mut e: Vec<(PlanePoint, u32)> = Vec::new();
    let mut push = |pt: PlanePoint, m: u32| match e.iter_mut().find(|(q, _)| *q == pt) {
        Some(entry) => entry.1 += m,
        None => e.push((pt, m)),
    };
    for (x0, m) in &split.roots {
        let x0 = embed::lift(x0, &common)?;
        let y0 = ya_big.eval(&x0);
        push(PlanePoint::affine(x0, y0), *m);
    }
    for (pt, m) in d1.points() {
        push(pt.lift(&common)?, *m);
    }
    if e.iter().any(|(_, m)| *m > 2) {
        return Ok(None);
    }
    for c in &conics {
        if vanishes_on(ctx, c, &e)? {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}
