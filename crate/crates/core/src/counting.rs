//! Point counts over `F_{p^k}` for `k <= 3`, the L-polynomial, and the
//! group order `L(1)`.

use crate::curve::intersect::specialize_x;
use crate::curve::CurveContext;
use crate::error::{Error, Result};
use crate::fields::{field_of_degree, Fq, UniPoly};
use crate::par::{try_sum, Execution};

/// Largest field size [`count_points`] enumerates.
pub const COUNT_BUDGET: u64 = 1_000_000;

/// `#X(F_{p^k})`.
pub fn count_points(ctx: &CurveContext, k: u32) -> Result<u64> {
    count_points_with(ctx, k, Execution::available())
}

pub fn count_points_with(ctx: &CurveContext, k: u32, exec: Execution) -> Result<u64> {
    let p = ctx.p();
    let q = match p.checked_pow(k) {
        Some(q) if q <= COUNT_BUDGET && k >= 1 => q,
        _ => return Err(Error::BudgetExceeded { k }),
    };
    let field = field_of_degree(p, k as usize)?;
    let y = UniPoly::x(&field);
    let affine = ctx.affine();
    let affine_points = try_sum(exec, q, |i| {
        let mut digits = Vec::with_capacity(k as usize);
        let mut r = i;
        for _ in 0..k {
            digits.push(r % p);
            r /= p;
        }
        let x0 = Fq::from_coeffs(&field, &digits)?;
        let g = specialize_x(affine, &x0)?;
        // Distinct roots of g in F_q: deg gcd(g, y^q - y).
        let frob = y.powmod(q, &g).sub(&y);
        Ok(g.gcd(&frob).degree().unwrap_or(0) as u64)
    })?;
    // The line z = 0 meets X only at infinity.
    Ok(affine_points + 1)
}

/// Counts, L-polynomial and group order of the Jacobian over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaData {
    pub p: u64,
    /// `N_1, N_2, N_3`.
    pub counts: [u64; 3],
    /// `L(T) = 1 + c_1 T + ... + c_6 T^6`, constant term first.
    pub l: [i128; 7],
    pub order: i128,
}

impl ZetaData {
    /// Builds the L-polynomial from the first three counts.
    pub fn from_counts(p: u64, counts: [u64; 3]) -> Result<ZetaData> {
        let pi = p as i128;
        // Power sums of the Frobenius eigenvalues.
        let s: Vec<i128> = (1..=3)
            .map(|k| pi.pow(k as u32) + 1 - counts[k - 1] as i128)
            .collect();
        let e1 = s[0];
        let e2 = exact(e1 * s[0] - s[1], 2)?;
        let e3 = exact(e2 * s[0] - e1 * s[1] + s[2], 3)?;
        let l = [1, -e1, e2, -e3, pi * e2, -pi * pi * e1, pi * pi * pi];
        let z = ZetaData {
            p,
            counts,
            l,
            order: l.iter().sum(),
        };
        z.check()?;
        Ok(z)
    }

    /// Functional equation, Hasse-Weil and positivity.
    pub fn check(&self) -> Result<()> {
        let pi = self.p as i128;
        for i in 0..=3 {
            if self.l[6 - i] != pi.pow(3 - i as u32) * self.l[i] {
                return Err(Error::InconsistentCounts(format!(
                    "functional equation fails at T^{}",
                    6 - i
                )));
            }
        }
        let t1 = pi + 1 - self.counts[0] as i128;
        if t1 * t1 > 36 * pi {
            return Err(Error::InconsistentCounts(
                "Hasse-Weil bound violated".into(),
            ));
        }
        if self.order <= 0 || self.order != self.l.iter().sum::<i128>() {
            return Err(Error::InconsistentCounts(
                "L(1) is not a positive order".into(),
            ));
        }
        Ok(())
    }

    /// `N_k` recovered from the L-polynomial for `k <= 3`.
    pub fn count_from_l(&self, k: usize) -> i128 {
        let pi = self.p as i128;
        let c = &self.l;
        // Newton: s1 = -c1, s2 = -c1 s1 - 2 c2, s3 = -c1 s2 - c2 s1 - 3 c3.
        let s1 = -c[1];
        let s2 = -c[1] * s1 - 2 * c[2];
        let s3 = -c[1] * s2 - c[2] * s1 - 3 * c[3];
        let s = [s1, s2, s3][k - 1];
        pi.pow(k as u32) + 1 - s
    }
}

fn exact(n: i128, d: i128) -> Result<i128> {
    if n % d != 0 {
        return Err(Error::InconsistentCounts(
            "Newton identities give a non-integral coefficient".into(),
        ));
    }
    Ok(n / d)
}

pub fn jacobian_order(ctx: &CurveContext) -> Result<ZetaData> {
    jacobian_order_with(ctx, Execution::available())
}

pub fn jacobian_order_with(ctx: &CurveContext, exec: Execution) -> Result<ZetaData> {
    let mut counts = [0; 3];
    for (k, n) in counts.iter_mut().enumerate() {
        *n = count_points_with(ctx, k as u32 + 1, exec)?;
    }
    ZetaData::from_counts(ctx.p(), counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::PlanePoint;

    /// Projective points by brute force over all `(x : y : z)`.
    fn brute_count(ctx: &CurveContext) -> u64 {
        let p = ctx.p();
        let f = ctx.field();
        let e = |v: u64| Fq::from_u64(f, v);
        let mut n = 0;
        for x in 0..p {
            for y in 0..p {
                if ctx.contains(&PlanePoint::affine(e(x), e(y))).unwrap() {
                    n += 1;
                }
            }
            let pt = PlanePoint::new(e(x), e(1), e(0)).unwrap();
            n += ctx.contains(&pt).unwrap() as u64;
        }
        let pt = PlanePoint::new(e(1), e(0), e(0)).unwrap();
        n + ctx.contains(&pt).unwrap() as u64
    }

    #[test]
    fn prime_field_count_matches_brute_force() {
        for p in [7, 11, 13] {
            let c = CurveContext::reference(p).unwrap();
            assert_eq!(count_points(&c, 1).unwrap(), brute_count(&c));
        }
    }

    #[test]
    fn zeta_data_is_consistent() {
        let c = CurveContext::reference(7).unwrap();
        let z = jacobian_order(&c).unwrap();
        for k in 1..=3 {
            assert_eq!(z.count_from_l(k), z.counts[k - 1] as i128);
        }
        assert!(z.counts[1] >= z.counts[0]);
        let (lo, hi) = ((7f64.sqrt() - 1.0).powi(6), (7f64.sqrt() + 1.0).powi(6));
        assert!(lo <= z.order as f64 && z.order as f64 <= hi);
        assert_eq!(z, jacobian_order_with(&c, Execution::Sequential).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c = CurveContext::reference(101).unwrap();
        assert_eq!(
            count_points(&c, 3).unwrap_err(),
            Error::BudgetExceeded { k: 3 }
        );
    }
}
