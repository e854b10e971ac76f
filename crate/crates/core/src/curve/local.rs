//! Power-series parametrization of the curve at a smooth point.
//!
//! At a smooth point `P` one affine coordinate `u` serves as parameter,
//! `u = u(P) + t`, and the other is solved as a series `v(t)` from
//! `F = 0`. The valuation in `t` of a form restricted to this branch is its
//! local intersection number with the curve at `P`.

use crate::curve::form::{monomials, PlaneForm};
use crate::curve::point::PlanePoint;
use crate::error::{Error, Result};
use crate::fields::{FieldRef, Fq};

/// Number of series terms kept. Contact orders up to `PRECISION - 1` are
/// decided exactly; quartic-by-cubic contact never exceeds 12.
pub const PRECISION: usize = 16;

fn binomial(n: u32, k: u32) -> u64 {
    let mut r = 1u64;
    for i in 0..k as u64 {
        r = r * (n as u64 - i) / (i + 1);
    }
    r
}

fn series_mul(a: &[Fq], b: &[Fq], prec: usize) -> Vec<Fq> {
    let field = a[0].field();
    let mut out = vec![Fq::zero(field); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Local branch of the curve through a smooth point.
#[derive(Clone, Debug)]
pub struct Branch {
    point: PlanePoint,
    field: FieldRef,
    param: usize,
    coords: [Vec<Fq>; 3],
    prec: usize,
}

impl Branch {
    /// Expands the curve `quartic = 0` at `p` to `prec` terms.
    pub fn at(quartic: &PlaneForm, p: &PlanePoint, prec: usize) -> Result<Branch> {
        let field = p.field().clone();
        let f = quartic.lift(&field)?;
        let c = p.coords();
        let chart = c
            .iter()
            .rposition(|v| !v.is_zero())
            .expect("normalized point");
        let free: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let grad: Vec<Fq> = free.iter().map(|&i| f.partial(i).eval_coords(c)).collect();
        let (param, other) = if !grad[1].is_zero() {
            (free[0], free[1])
        } else if !grad[0].is_zero() {
            (free[1], free[0])
        } else if f.eval_coords(c).is_zero() {
            return Err(Error::SingularPoint);
        } else {
            return Err(Error::NotOnCurve);
        };

        // g[a][b]: coefficient of t^a w^b after translating to p.
        let d = f.degree() as usize;
        let mut g = vec![vec![Fq::zero(&field); d + 1]; d + 1];
        let p0 = &c[param];
        let o0 = &c[other];
        for (m, coef) in f.terms() {
            if coef.is_zero() {
                continue;
            }
            let (al, be) = (m[param], m[other]);
            for i in 0..=al {
                let ti =
                    coef * &(&Fq::from_u64(&field, binomial(al, i)) * &p0.pow((al - i) as u64));
                if ti.is_zero() {
                    continue;
                }
                for j in 0..=be {
                    let w = &Fq::from_u64(&field, binomial(be, j)) * &o0.pow((be - j) as u64);
                    g[i as usize][j as usize] += &(&ti * &w);
                }
            }
        }
        if !g[0][0].is_zero() {
            return Err(Error::NotOnCurve);
        }
        let g01_inv = g[0][1].inv()?;

        // pw[b][i]: coefficient of t^i in w(t)^b.
        let mut pw = vec![vec![Fq::zero(&field); prec]; d + 1];
        pw[0][0] = Fq::one(&field);
        for i in 1..prec {
            for b in 2..=d {
                let mut acc = Fq::zero(&field);
                for j in 1..i {
                    let wj = &pw[1][j];
                    if !wj.is_zero() {
                        acc += &(wj * &pw[b - 1][i - j]);
                    }
                }
                pw[b][i] = acc;
            }
            let mut e = Fq::zero(&field);
            for (a, row) in g.iter().enumerate().take(i + 1) {
                for (b, gab) in row.iter().enumerate() {
                    if gab.is_zero() || (a == 0 && b == 1) {
                        continue;
                    }
                    e += &(gab * &pw[b][i - a]);
                }
            }
            pw[1][i] = -(&e * &g01_inv);
        }

        let mut coords: [Vec<Fq>; 3] = Default::default();
        let mut unit = vec![Fq::zero(&field); prec];
        unit[0] = Fq::one(&field);
        coords[chart] = unit;
        let mut lin = vec![Fq::zero(&field); prec];
        lin[0] = p0.clone();
        if prec > 1 {
            lin[1] = Fq::one(&field);
        }
        coords[param] = lin;
        let mut ser = pw[1].clone();
        ser[0] = o0.clone();
        coords[other] = ser;
        Ok(Branch {
            point: p.clone(),
            field,
            param,
            coords,
            prec,
        })
    }

    pub fn point(&self) -> &PlanePoint {
        &self.point
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Index of the coordinate used as parameter.
    pub fn parameter(&self) -> usize {
        self.param
    }

    pub fn coordinate_series(&self, i: usize) -> &[Fq] {
        &self.coords[i]
    }

    /// Series of every monomial of degree `d`, in the frozen order.
    pub fn monomial_series(&self, d: u32) -> Vec<Vec<Fq>> {
        let powers: Vec<Vec<Vec<Fq>>> = self
            .coords
            .iter()
            .map(|s| {
                let mut row = Vec::with_capacity(d as usize + 1);
                let mut one = vec![Fq::zero(&self.field); self.prec];
                one[0] = Fq::one(&self.field);
                row.push(one);
                for e in 1..=d as usize {
                    let next = series_mul(&row[e - 1], s, self.prec);
                    row.push(next);
                }
                row
            })
            .collect();
        monomials(d)
            .into_iter()
            .map(|m| {
                let xy = series_mul(
                    &powers[0][m[0] as usize],
                    &powers[1][m[1] as usize],
                    self.prec,
                );
                series_mul(&xy, &powers[2][m[2] as usize], self.prec)
            })
            .collect()
    }

    /// Series of `form` along the branch, using precomputed monomial series.
    pub fn series_with(&self, form: &PlaneForm, mono: &[Vec<Fq>]) -> Result<Vec<Fq>> {
        let form = form.lift(&self.field)?;
        let mut out = vec![Fq::zero(&self.field); self.prec];
        for (c, s) in form.coeffs().iter().zip(mono) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(s) {
                if !v.is_zero() {
                    *o += &(c * v);
                }
            }
        }
        Ok(out)
    }

    pub fn series(&self, form: &PlaneForm) -> Result<Vec<Fq>> {
        self.series_with(form, &self.monomial_series(form.degree()))
    }

    /// Local intersection number of `form` with the curve at this point, or
    /// `None` when it is at least the precision.
    pub fn valuation(&self, form: &PlaneForm) -> Result<Option<usize>> {
        Ok(self.series(form)?.iter().position(|c| !c.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;

    fn reference(f: &FieldRef) -> PlaneForm {
        PlaneForm::from_terms(f, 4, &[([4, 0, 0], 1), ([0, 3, 1], 1), ([0, 0, 4], 1)])
    }

    #[test]
    fn series_satisfies_the_equation() {
        let f = PrimeField::new(31).unwrap().field();
        let q = reference(&f);
        // x^4 + y^3 + 1 = 0 at x = 1 needs y^3 = -2 = 29; 3^3 = 27, try all y.
        let mut found = None;
        for y in 0..31 {
            let p = PlanePoint::affine(Fq::from_u64(&f, 1), Fq::from_u64(&f, y));
            if q.evaluate(&p).unwrap().is_zero() {
                found = Some(p);
                break;
            }
        }
        let p = found.expect("rational point with x = 1");
        let br = Branch::at(&q, &p, PRECISION).unwrap();
        let s = br.series(&q).unwrap();
        assert!(s.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn hyperflex_contact_at_infinity() {
        let f = PrimeField::new(31).unwrap().field();
        let q = reference(&f);
        let br = Branch::at(&q, &PlanePoint::infinity(&f), PRECISION).unwrap();
        let z = PlaneForm::from_terms(&f, 1, &[([0, 0, 1], 1)]);
        let x = PlaneForm::from_terms(&f, 1, &[([1, 0, 0], 1)]);
        assert_eq!(br.valuation(&z).unwrap(), Some(4));
        assert_eq!(br.valuation(&x).unwrap(), Some(1));
    }

    #[test]
    fn off_curve_point_is_rejected() {
        let f = PrimeField::new(31).unwrap().field();
        let q = reference(&f);
        let p = PlanePoint::affine(Fq::from_u64(&f, 1), Fq::from_u64(&f, 1));
        assert_eq!(Branch::at(&q, &p, 8).unwrap_err(), Error::NotOnCurve);
    }
}
