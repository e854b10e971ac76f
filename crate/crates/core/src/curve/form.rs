use std::fmt;

use crate::curve::point::PlanePoint;
use crate::error::{Error, Result};
use crate::fields::embed;
use crate::fields::{FieldRef, Fq, UniPoly};

/// Exponents of `x^a y^b z^c`.
pub type Monomial = [u32; 3];

/// Monomials of degree `d` in the frozen order: `x` exponent descending,
/// then `y` exponent descending.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of `m` in [`monomials`] of its degree.
pub fn monomial_index(m: Monomial) -> usize {
    let d = m[0] + m[1] + m[2];
    let k = d - m[0];
    (k * (k + 1) / 2 + (k - m[1])) as usize
}

pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// Homogeneous polynomial in `x, y, z`, coefficients in the frozen order.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneForm {
    field: FieldRef,
    degree: u32,
    coeffs: Vec<Fq>,
}

/// The defining quartic is stored as a degree-4 form.
pub type Quartic = PlaneForm;

impl PlaneForm {
    pub fn zero(field: &FieldRef, degree: u32) -> PlaneForm {
        PlaneForm {
            field: field.clone(),
            degree,
            coeffs: vec![Fq::zero(field); monomial_count(degree)],
        }
    }

    pub fn from_coeffs(field: &FieldRef, degree: u32, coeffs: Vec<Fq>) -> Result<PlaneForm> {
        if coeffs.len() != monomial_count(degree) {
            return Err(Error::Parse(format!(
                "degree-{degree} form needs {} coefficients, got {}",
                monomial_count(degree),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            if !c.field().same_as(field) {
                return Err(Error::FieldMismatch("form coefficient".into()));
            }
        }
        Ok(PlaneForm {
            field: field.clone(),
            degree,
            coeffs,
        })
    }

    /// Builds a form from `(monomial, integer coefficient)` terms.
    pub fn from_terms(field: &FieldRef, degree: u32, terms: &[(Monomial, i64)]) -> PlaneForm {
        let mut f = PlaneForm::zero(field, degree);
        for &(m, c) in terms {
            assert_eq!(m[0] + m[1] + m[2], degree, "monomial degree");
            let i = monomial_index(m);
            f.coeffs[i] = &f.coeffs[i] + &Fq::from_i64(field, c);
        }
        f
    }

    /// The linear form `a x + b y + c z`.
    pub fn line(a: Fq, b: Fq, c: Fq) -> PlaneForm {
        let field = a.field().clone();
        PlaneForm {
            field,
            degree: 1,
            coeffs: vec![a, b, c],
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, m: Monomial) -> &Fq {
        &self.coeffs[monomial_index(m)]
    }

    pub fn set_coeff(&mut self, m: Monomial, c: Fq) {
        let i = monomial_index(m);
        self.coeffs[i] = c;
    }

    /// `(monomial, coefficient)` pairs in the frozen order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Fq)> {
        monomials(self.degree).into_iter().zip(self.coeffs.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &PlaneForm) -> PlaneForm {
        assert_eq!(
            self.degree, other.degree,
            "adding forms of different degree"
        );
        PlaneForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PlaneForm) -> PlaneForm {
        assert_eq!(
            self.degree, other.degree,
            "subtracting forms of different degree"
        );
        PlaneForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Fq) -> PlaneForm {
        PlaneForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &PlaneForm) -> PlaneForm {
        let mut out = PlaneForm::zero(&self.field, self.degree + other.degree);
        for (m1, c1) in self.terms() {
            if c1.is_zero() {
                continue;
            }
            for (m2, c2) in other.terms() {
                if c2.is_zero() {
                    continue;
                }
                let i = monomial_index([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]]);
                out.coeffs[i] += &(c1 * c2);
            }
        }
        out
    }

    /// Partial derivative with respect to coordinate `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> PlaneForm {
        assert!(self.degree > 0, "derivative of a constant form");
        let mut out = PlaneForm::zero(&self.field, self.degree - 1);
        for (m, c) in self.terms() {
            if m[var] == 0 || c.is_zero() {
                continue;
            }
            let mut dm = m;
            dm[var] -= 1;
            let i = monomial_index(dm);
            out.coeffs[i] += &(c * &Fq::from_u64(&self.field, m[var] as u64));
        }
        out
    }

    /// Value at coordinates that already live in the coefficient field.
    pub fn eval_coords(&self, p: &[Fq; 3]) -> Fq {
        let d = self.degree as usize;
        let powers: Vec<Vec<Fq>> = p
            .iter()
            .map(|v| {
                let mut row = vec![Fq::one(v.field())];
                for i in 1..=d {
                    let next = &row[i - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc = Fq::zero(p[0].field());
        for (m, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let t = &(&powers[0][m[0] as usize] * &powers[1][m[1] as usize])
                * &powers[2][m[2] as usize];
            acc += &(&t * c);
        }
        acc
    }

    /// Value at `p`, computed in the field of `p` (coefficients are lifted).
    pub fn evaluate(&self, p: &PlanePoint) -> Result<Fq> {
        let target = p.field();
        if self.field.same_as(target) {
            return Ok(self.eval_coords(p.coords()));
        }
        Ok(self.lift(target)?.eval_coords(p.coords()))
    }

    /// The same form with coefficients embedded in `target`.
    pub fn lift(&self, target: &FieldRef) -> Result<PlaneForm> {
        if self.field.same_as(target) {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| embed::lift(c, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(PlaneForm {
            field: target.clone(),
            degree: self.degree,
            coeffs,
        })
    }

    /// The same form over `sub`, or `None` if some coefficient is not in `sub`.
    pub fn restrict(&self, sub: &FieldRef) -> Result<Option<PlaneForm>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match embed::restrict(c, sub)? {
                Some(r) => coeffs.push(r),
                None => return Ok(None),
            }
        }
        Ok(Some(PlaneForm {
            field: sub.clone(),
            degree: self.degree,
            coeffs,
        }))
    }

    /// Scales so the last nonzero coefficient is 1.
    pub fn normalized(&self) -> PlaneForm {
        match self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Dehomogenization at `z = 1`, as polynomials in `x` indexed by the
    /// power of `y`.
    pub fn affine_in_y(&self) -> Vec<UniPoly> {
        let d = self.degree as usize;
        let mut rows = vec![vec![Fq::zero(&self.field); d + 1]; d + 1];
        for (m, c) in self.terms() {
            rows[m[1] as usize][m[0] as usize] = c.clone();
        }
        let mut out: Vec<UniPoly> = rows
            .into_iter()
            .map(|r| UniPoly::new(&self.field, r))
            .collect();
        while out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        out
    }

    /// Restriction to the line `z = 0` as a binary form, coefficients of
    /// `x^d, x^(d-1) y, ..., y^d`.
    pub fn at_infinity_line(&self) -> Vec<Fq> {
        (0..=self.degree)
            .map(|b| self.coeff([self.degree - b, b, 0]).clone())
            .collect()
    }
}

impl fmt::Debug for PlaneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mut s = if c.field().degree() == 1 {
                c.coeffs()[0].to_string()
            } else {
                format!("{c}")
            };
            for (v, e) in ["x", "y", "z"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{v}")),
                    _ => s.push_str(&format!("*{v}^{e}")),
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;

    #[test]
    fn quartic_order_is_frozen() {
        let names: Vec<String> = monomials(4)
            .iter()
            .map(|m| format!("{}{}{}", m[0], m[1], m[2]))
            .collect();
        assert_eq!(
            names,
            [
                "400", "310", "301", "220", "211", "202", "130", "121", "112", "103", "040", "031",
                "022", "013", "004"
            ]
        );
        for (i, m) in monomials(4).into_iter().enumerate() {
            assert_eq!(monomial_index(m), i);
        }
        let conic: Vec<Monomial> = monomials(2);
        assert_eq!(
            conic,
            vec![
                [2, 0, 0],
                [1, 1, 0],
                [1, 0, 1],
                [0, 2, 0],
                [0, 1, 1],
                [0, 0, 2]
            ]
        );
    }

    #[test]
    fn product_and_derivative() {
        let f = PrimeField::new(31).unwrap().field();
        let a = PlaneForm::from_terms(&f, 1, &[([1, 0, 0], 1), ([0, 0, 1], 2)]);
        let b = PlaneForm::from_terms(&f, 1, &[([0, 1, 0], 3), ([0, 0, 1], -1)]);
        let ab = a.mul(&b);
        let expected = PlaneForm::from_terms(
            &f,
            2,
            &[
                ([1, 1, 0], 3),
                ([1, 0, 1], -1),
                ([0, 1, 1], 6),
                ([0, 0, 2], -2),
            ],
        );
        assert_eq!(ab, expected);
        // d/dz (3xy - xz + 6yz - 2z^2) = -x + 6y - 4z
        let dz = PlaneForm::from_terms(&f, 1, &[([1, 0, 0], -1), ([0, 1, 0], 6), ([0, 0, 1], -4)]);
        assert_eq!(ab.partial(2), dz);
    }

    #[test]
    fn euler_identity() {
        let f = PrimeField::new(13).unwrap().field();
        let q = PlaneForm::from_terms(
            &f,
            4,
            &[
                ([4, 0, 0], 1),
                ([0, 3, 1], 1),
                ([0, 0, 4], 1),
                ([2, 1, 1], 5),
            ],
        );
        let p = [
            Fq::from_u64(&f, 2),
            Fq::from_u64(&f, 7),
            Fq::from_u64(&f, 11),
        ];
        let lhs: Fq = (0..3).fold(Fq::zero(&f), |acc, i| {
            &acc + &(&p[i] * &q.partial(i).eval_coords(&p))
        });
        assert_eq!(lhs, &Fq::from_u64(&f, 4) * &q.eval_coords(&p));
    }
}
