//! Coordinates that forget the sign of a class: `A`, the gauge `g11 = 0`
//! representative `G` of the pencil `G + t B`, and `Q = F - A G = B H`.

use crate::curve::{CurveContext, PlaneForm};
use crate::error::{Error, Result};
use crate::fields::factor::roots;
use crate::fields::{poly_factor, Fq, UniPoly};
use crate::pencil::{conic_monomial, ConicA, ZPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCoords {
    pub a: ConicA,
    pub g: PlaneForm,
    pub q: PlaneForm,
}

/// A factorization `Q = B H` into conics of `span{z^2, xz, yz, xy}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerWitness {
    pub b: PlaneForm,
    pub h: PlaneForm,
}

/// `(A, G + B, F - A (G + B))`. The same for `z` and its negation.
pub fn kummer_coords(ctx: &CurveContext, z: &ZPoint) -> Result<KummerCoords> {
    if z.product() != *ctx.quartic() {
        return Err(Error::NotInZ("A G + B H differs from F".into()));
    }
    let a = z.a.form();
    let g = z.g.add(&z.b.form());
    let q = ctx.quartic().sub(&a.mul(&g));
    Ok(KummerCoords {
        a: z.a.clone(),
        g,
        q,
    })
}

/// Affine monomials `x^i y^j` a product of two conics of
/// `span{1, x, y, xy}` never contains.
const FORBIDDEN: [(u32, u32); 6] = [(3, 0), (0, 3), (4, 0), (1, 3), (3, 1), (0, 4)];

/// Whether a nonzero quartic factors over `F_p` as `B H` with `B, H` in
/// `span{z^2, xz, yz, xy}`, with a witness when it does.
pub fn kummer_reducibility_check(q: &PlaneForm) -> Result<(bool, Option<KummerWitness>)> {
    if q.degree() != 4 {
        return Err(Error::Parse("expected a quartic".into()));
    }
    let f = q.field().clone();
    if q.is_zero() {
        return Ok((false, None));
    }
    let c = |i: u32, j: u32| q.coeff([i, j, 4 - i - j]).clone();
    if FORBIDDEN.iter().any(|&(i, j)| !c(i, j).is_zero()) {
        return Ok((false, None));
    }
    // Q = q2(x) y^2 + q1(x) y + q0(x) with deg q_j <= 2.
    let qy: Vec<UniPoly> = (0..3)
        .map(|j| UniPoly::new(&f, (0..3).map(|i| c(i, j)).collect()))
        .collect();
    let content = qy.iter().fold(UniPoly::zero(&f), |g, p| g.gcd(p)).monic();
    let pp: Vec<UniPoly> = qy
        .iter()
        .map(|p| p.exact_div(&content))
        .collect::<Result<_>>()?;

    // pp = P1 P2 with P1, P2 primitive and of degree <= 1 in y.
    let (p1, p2) = if pp[2].is_zero() {
        (vec![UniPoly::one(&f)], pp.clone())
    } else {
        let four = Fq::from_u64(&f, 4);
        let disc = pp[1].mul(&pp[1]).sub(&pp[0].mul(&pp[2]).scale(&four));
        let Some(s) = poly_sqrt(&disc)? else {
            return Ok((false, None));
        };
        let two = Fq::from_u64(&f, 2);
        let lin = [pp[1].sub(&s), pp[2].scale(&two)];
        let g = lin[0].gcd(&lin[1]).monic();
        let u = [lin[0].exact_div(&g)?, lin[1].exact_div(&g)?];
        let Some(v) = divide_linear(&pp, &u)? else {
            return Err(Error::Internal(
                "root of the discriminant does not divide".into(),
            ));
        };
        (u.to_vec(), v)
    };

    for d in monic_divisors(&content)? {
        let e = content.exact_div(&d)?;
        let u: Vec<UniPoly> = p1.iter().map(|p| p.mul(&d)).collect();
        let v: Vec<UniPoly> = p2.iter().map(|p| p.mul(&e)).collect();
        if let (Some(b), Some(h)) = (bilinear_conic(&f, &u), bilinear_conic(&f, &v)) {
            let (b, h) = normalize(b, h)?;
            debug_assert_eq!(b.mul(&h), *q);
            return Ok((true, Some(KummerWitness { b, h })));
        }
    }
    Ok((false, None))
}

/// Scales the pair so that `B` has `xy` coefficient `-1` when possible.
fn normalize(b: PlaneForm, h: PlaneForm) -> Result<(PlaneForm, PlaneForm)> {
    let xy = conic_monomial(1, 1);
    let (b, h) = if b.coeff(xy).is_zero() && !h.coeff(xy).is_zero() {
        (h, b)
    } else {
        (b, h)
    };
    let lead = b.coeff(xy).clone();
    if lead.is_zero() {
        return Ok((b, h));
    }
    let s = -lead.inv()?;
    Ok((b.scale(&s), h.scale(&s.inv()?)))
}

/// The conic `sum u_j(x) y^j` homogenized, if every `u_j` has degree at most
/// one and the `y` degree is at most one.
fn bilinear_conic(f: &crate::fields::FieldRef, u: &[UniPoly]) -> Option<PlaneForm> {
    let mut c = PlaneForm::zero(f, 2);
    for (j, uj) in u.iter().enumerate() {
        if uj.is_zero() {
            continue;
        }
        if j > 1 || uj.degree()? > 1 {
            return None;
        }
        for (i, a) in uj.coeffs().iter().enumerate() {
            c.set_coeff(conic_monomial(i as u32, j as u32), a.clone());
        }
    }
    Some(c)
}

/// `pp / (u1 y + u0)` in `K[x][y]` when the division is exact.
fn divide_linear(pp: &[UniPoly], u: &[UniPoly; 2]) -> Result<Option<Vec<UniPoly>>> {
    let (v1, r1) = pp[2].divrem(&u[1])?;
    if !r1.is_zero() {
        return Ok(None);
    }
    let (v0, r0) = pp[1].sub(&u[0].mul(&v1)).divrem(&u[1])?;
    if !r0.is_zero() || u[0].mul(&v0) != pp[0] {
        return Ok(None);
    }
    Ok(Some(vec![v0, v1]))
}

/// A square root in `K[x]`, if one exists.
pub(crate) fn poly_sqrt(d: &UniPoly) -> Result<Option<UniPoly>> {
    let f = d.field().clone();
    let Some(lead) = d.leading() else {
        return Ok(Some(UniPoly::zero(&f)));
    };
    let t2 = UniPoly::new(&f, vec![-lead, Fq::zero(&f), Fq::one(&f)]);
    let Some((r, _)) = roots(&t2)?.into_iter().next() else {
        return Ok(None);
    };
    let mut s = UniPoly::constant(r);
    if d.degree() == Some(0) {
        return Ok(Some(s));
    }
    for fac in poly_factor(d)? {
        if fac.multiplicity % 2 == 1 {
            return Ok(None);
        }
        s = s.mul(&fac.poly.pow(fac.multiplicity / 2));
    }
    Ok(Some(s))
}

/// Every monic divisor of `c`, smallest degree first.
fn monic_divisors(c: &UniPoly) -> Result<Vec<UniPoly>> {
    let f = c.field().clone();
    let mut out = vec![UniPoly::one(&f)];
    if c.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for fac in poly_factor(c)? {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..fac.multiplicity {
                pw = pw.mul(&fac.poly);
                next.push(pw.clone());
            }
        }
        out = next;
    }
    out.sort_by_key(|d| d.degree());
    Ok(out)
}
