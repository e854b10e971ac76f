//! The group `JX` of classes `D - 3 inf` with `D` effective of degree 3.
//!
//! `K ~ 4 inf` is cut by lines, conics cut `8 inf` and cubics `12 inf`, so
//! residuation against these linear systems realizes negation and addition.

mod kummer;
mod tangent;

pub use kummer::{kummer_coords, kummer_reducibility_check, KummerCoords, KummerWitness};
pub use tangent::{tangent_dimension, tangent_matrix, TANGENT_UNKNOWNS};

use crate::curve::intersect::{forms_through, monomial_basis, system_dimension};
use crate::curve::{intersection_divisor, CurveContext, PlaneForm, PlanePoint};
use crate::divisor::{classify, Divisor};
use crate::error::{Error, Result};
use crate::fields::Fq;
use crate::pencil::{conic_monomial, zpoint_from_divisor, ConicB, ZPoint};

/// A class `D - 3 inf`, stored through a canonical effective representative.
///
/// When `D` is non-special it is the only effective divisor in its class.
/// Otherwise `D` lies on a line `l` with `X . l = D + P`, the class is
/// `inf - P`, and the representative is `X . {x = x(P) z} - P` (for
/// `P = inf`, the zero class, `X . {x = 0} - inf`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianClass {
    rep: Divisor,
    certificate: Option<ZPoint>,
}

impl JacobianClass {
    /// The class of `d - 3 inf`.
    pub fn new(ctx: &CurveContext, d: &Divisor) -> Result<JacobianClass> {
        if d.degree() != 3 {
            return Err(Error::WrongDegree {
                expected: 3,
                found: d.degree(),
            });
        }
        for (pt, _) in d.points() {
            if !ctx.contains(pt)? {
                return Err(Error::PointOffCurve);
            }
        }
        let rep = canonical_rep(ctx, d)?;
        let certificate = if classify(ctx, &rep)?.in_z {
            Some(zpoint_from_divisor(ctx, &rep)?)
        } else {
            None
        };
        Ok(JacobianClass { rep, certificate })
    }

    /// The class of the divisor encoded by a point of `Z`.
    pub fn from_zpoint(ctx: &CurveContext, z: &ZPoint) -> Result<JacobianClass> {
        let v = crate::pencil::zpoint_validate(ctx, z);
        if !v.valid {
            return Err(Error::NotInZ(format!("{:?}", v.diagnostics)));
        }
        let d = crate::pencil::divisor_from_conics(ctx, &z.a, &z.b)?;
        Ok(JacobianClass {
            rep: d,
            certificate: Some(z.clone()),
        })
    }

    pub fn zero(ctx: &CurveContext) -> Result<JacobianClass> {
        let x = PlaneForm::from_terms(ctx.field(), 1, &[([1, 0, 0], 1)]);
        let rep = intersection_divisor(ctx, &x)?.sub(&Divisor::infinity(ctx.p(), 1)?)?;
        Ok(JacobianClass {
            rep,
            certificate: None,
        })
    }

    pub fn rep(&self) -> &Divisor {
        &self.rep
    }

    pub fn certificate(&self) -> Option<&ZPoint> {
        self.certificate.as_ref()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }
}

fn line_basis(ctx: &CurveContext) -> Vec<PlaneForm> {
    monomial_basis(ctx.field(), 1)
}

fn canonical_rep(ctx: &CurveContext, d: &Divisor) -> Result<Divisor> {
    let lines = forms_through(ctx, &line_basis(ctx), d)?;
    let Some(l) = lines.first() else {
        return Ok(d.clone());
    };
    let residual = intersection_divisor(ctx, l)?.sub(d)?;
    let (p, _) = residual
        .points()
        .first()
        .ok_or_else(|| Error::Internal("line residual is empty".into()))?;
    let f = ctx.field();
    let vertical = if p.is_infinity() {
        PlaneForm::from_terms(f, 1, &[([1, 0, 0], 1)])
    } else {
        PlaneForm::line(Fq::one(f), Fq::zero(f), -p.x())
    };
    intersection_divisor(ctx, &vertical)?.sub(&residual)
}

/// Diagnostics of [`neg_with_scalars`]: `lambda` moves `H` into the shape of
/// `B`, `s` rescales it to `xy` coefficient `-1`, `mu` restores `g11 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegScalars {
    pub lambda: Fq,
    pub s: Fq,
    pub mu: Fq,
}

/// Negation on `Z`: `(A, B, G, H) -> (A, H, G, B)` up to the gauge
/// `(G, H) -> (G + t B, H - t A)` and rescaling.
pub fn neg_with_scalars(z: &ZPoint) -> Result<(ZPoint, NegScalars)> {
    let f = z.field().clone();
    let a = z.a.form();
    let b = z.b.form();
    // Remove the x^2 term of H; A has x^2 coefficient -1.
    let lambda = z.h(2, 0).clone();
    let h1 = z.h.add(&a.scale(&lambda));
    let g1 = z.g.sub(&b.scale(&lambda));
    if !h1.coeff(conic_monomial(0, 2)).is_zero() || h1.coeff(conic_monomial(1, 1)).is_zero() {
        return Err(Error::ShapeViolation);
    }
    let s = -h1.coeff(conic_monomial(1, 1)).inv()?;
    let new_b = ConicB::from_form(&h1.scale(&s))?;
    let h2 = b.scale(&s.inv()?);
    let mu = z_g11(&g1) - Fq::one(&f);
    let nb = new_b.form();
    let g = g1.add(&nb.scale(&mu));
    let h = h2.sub(&a.scale(&mu));
    let out = ZPoint {
        a: z.a.clone(),
        b: new_b,
        g,
        h,
    };
    if out.product() != z.product() {
        return Err(Error::Internal("negation broke F = A G + B H".into()));
    }
    Ok((out, NegScalars { lambda, s, mu }))
}

fn z_g11(g: &PlaneForm) -> Fq {
    g.coeff(conic_monomial(1, 1)).clone()
}

pub fn neg(z: &ZPoint) -> Result<ZPoint> {
    Ok(neg_with_scalars(z)?.0)
}

/// Conics `span{z^2, xz, yz, x^2}`: every member meets `X` at least twice
/// at infinity.
fn a_space(ctx: &CurveContext) -> Vec<PlaneForm> {
    [(0, 0), (1, 0), (0, 1), (2, 0)]
        .iter()
        .map(|&(i, j)| PlaneForm::from_terms(ctx.field(), 2, &[(conic_monomial(i, j), 1)]))
        .collect()
}

/// `X . A - d - 2 inf` for the first conic `A` of the `A` shape with
/// `X . A >= d + 2 inf`. Any such conic gives the same class.
fn conic_residual(ctx: &CurveContext, d: &Divisor) -> Result<Divisor> {
    let two_inf = Divisor::infinity(ctx.p(), 2)?;
    let target = d.add(&two_inf);
    let conics = forms_through(ctx, &a_space(ctx), &target)?;
    let a = conics
        .first()
        .ok_or_else(|| Error::Internal("no conic through d + 2 inf".into()))?;
    intersection_divisor(ctx, a)?.sub(&target)
}

/// `-(D - 3 inf)` as the class of `X . A - D - 2 inf`.
pub fn neg_class(ctx: &CurveContext, c: &JacobianClass) -> Result<JacobianClass> {
    JacobianClass::new(ctx, &conic_residual(ctx, &c.rep)?)
}

/// Residual `E-` of a cubic through `d1 + d2 + 3 inf`, so that
/// `E- - 3 inf ~ -(d1 + d2 - 6 inf)`.
fn cubic_residual(ctx: &CurveContext, d1: &Divisor, d2: &Divisor) -> Result<Divisor> {
    let target = d1.add(d2).add(&Divisor::infinity(ctx.p(), 3)?);
    let cubics = forms_through(ctx, &monomial_basis(ctx.field(), 3), &target)?;
    let c = cubics
        .first()
        .ok_or_else(|| Error::Internal("no cubic through d1 + d2 + 3 inf".into()))?;
    intersection_divisor(ctx, c)?.sub(&target)
}

pub fn add(ctx: &CurveContext, c1: &JacobianClass, c2: &JacobianClass) -> Result<JacobianClass> {
    let e_minus = cubic_residual(ctx, &c1.rep, &c2.rep)?;
    JacobianClass::new(ctx, &conic_residual(ctx, &e_minus)?)
}

/// `n c` by double-and-add.
pub fn scalar_mul(ctx: &CurveContext, n: i128, c: &JacobianClass) -> Result<JacobianClass> {
    let mut base = if n < 0 { neg_class(ctx, c)? } else { c.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = JacobianClass::zero(ctx)?;
    while k > 0 {
        if k & 1 == 1 {
            acc = add(ctx, &acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = add(ctx, &base, &base)?;
        }
    }
    Ok(acc)
}

/// `D - 3 inf ~ 0` iff some line cuts `D + inf`.
pub fn is_zero(ctx: &CurveContext, c: &JacobianClass) -> Result<bool> {
    let target = c.rep.add(&Divisor::infinity(ctx.p(), 1)?);
    Ok(system_dimension(ctx, &line_basis(ctx), &target)? > 0)
}

/// Structural comparison when both classes are certified (non-special
/// divisors are alone in their class); otherwise `c1 - c2 = 0`.
pub fn class_equal(ctx: &CurveContext, c1: &JacobianClass, c2: &JacobianClass) -> Result<bool> {
    if c1.is_certified() && c2.is_certified() {
        return Ok(c1.rep == c2.rep);
    }
    is_zero(ctx, &add(ctx, c1, &neg_class(ctx, c2)?)?)
}

/// The class of `X . L - inf` for a line `L = x - c z` through infinity.
pub fn vertical_class(ctx: &CurveContext, c: &Fq) -> Result<JacobianClass> {
    let f = ctx.field();
    let l = PlaneForm::line(Fq::one(f), Fq::zero(f), -c);
    let d = intersection_divisor(ctx, &l)?.sub(&Divisor::infinity(ctx.p(), 1)?)?;
    JacobianClass::new(ctx, &d)
}

/// A point of `X . L` other than infinity, for tests that need one.
pub fn support_point(c: &JacobianClass) -> Option<&PlanePoint> {
    c.rep
        .points()
        .iter()
        .map(|(p, _)| p)
        .find(|p| !p.is_infinity())
}
