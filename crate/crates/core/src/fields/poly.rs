use std::fmt;

use crate::error::{Error, Result};
use crate::fields::gf::{FieldRef, Fq};

/// Dense univariate polynomial, low degree first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldRef,
    coeffs: Vec<Fq>,
}

impl UniPoly {
    pub fn new(field: &FieldRef, coeffs: Vec<Fq>) -> UniPoly {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_u64s(field: &FieldRef, c: &[u64]) -> UniPoly {
        UniPoly::new(field, c.iter().map(|&v| Fq::from_u64(field, v)).collect())
    }

    pub fn zero(field: &FieldRef) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &FieldRef) -> UniPoly {
        UniPoly::constant(Fq::one(field))
    }

    pub fn constant(c: Fq) -> UniPoly {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(field: &FieldRef) -> UniPoly {
        UniPoly::new(field, vec![Fq::zero(field), Fq::one(field)])
    }

    /// `x - a`.
    pub fn linear_root(a: &Fq) -> UniPoly {
        let field = a.field().clone();
        UniPoly::new(&field, vec![-a, Fq::one(&field)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Fq::zero(&self.field))
    }

    pub fn leading(&self) -> Option<&Fq> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        UniPoly::new(&self.field, c)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Fq) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut c = vec![Fq::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::new(&self.field, c)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![Fq::zero(&self.field); r.len() - dd];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] * &lead_inv;
            let shift = top - dd;
            for (j, b) in d.coeffs.iter().enumerate() {
                r[shift + j] -= &(&c * b);
            }
            q[shift] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Fq::from_u64(&self.field, i as u64))
            .collect();
        UniPoly::new(&self.field, c)
    }

    pub fn eval(&self, x: &Fq) -> Fq {
        let mut acc = Fq::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn mulmod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m).expect("modulus is nonzero")
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m).expect("modulus is nonzero");
        let mut acc = UniPoly::one(&self.field)
            .rem(m)
            .expect("modulus is nonzero");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// `self^q mod m` where `q` is the size of the coefficient field.
    pub fn frobenius_mod(&self, m: &UniPoly) -> UniPoly {
        let p = self.field.p();
        let mut acc = self.rem(m).expect("modulus is nonzero");
        for _ in 0..self.field.degree() {
            acc = acc.powmod(p, m);
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Fq) -> Fq) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(f).collect())
    }

    /// Re-expresses every coefficient in `target` (see [`crate::fields::embed::lift`]).
    pub fn lift(&self, target: &FieldRef) -> Result<UniPoly> {
        let c = self
            .coeffs
            .iter()
            .map(|c| crate::fields::embed::lift(c, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(target, c))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if c.field().degree() == 1 {
                    c.coeffs()[0].to_string()
                } else {
                    format!("({:?})", c.coeffs())
                };
                match i {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::gf::PrimeField;

    #[test]
    fn division_identity() {
        let f = PrimeField::new(13).unwrap().field();
        let a = UniPoly::from_u64s(&f, &[3, 1, 4, 1, 5, 9, 2]);
        let b = UniPoly::from_u64s(&f, &[2, 7, 1, 8]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 3);
    }

    #[test]
    fn gcd_of_products() {
        let f = PrimeField::new(7).unwrap().field();
        let common = UniPoly::from_u64s(&f, &[1, 1, 1]);
        let a = common.mul(&UniPoly::from_u64s(&f, &[2, 1]));
        let b = common.mul(&UniPoly::from_u64s(&f, &[5, 1]));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn frobenius_mod_matches_pow() {
        let f = PrimeField::new(5).unwrap().extension(2).unwrap();
        let m = UniPoly::new(
            &f,
            vec![
                Fq::generator(&f),
                Fq::from_u64(&f, 2),
                Fq::zero(&f),
                Fq::one(&f),
            ],
        );
        let x = UniPoly::x(&f);
        assert_eq!(x.frobenius_mod(&m), x.powmod(25, &m));
    }
}
