//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting, and Cantor–Zassenhaus equal-degree splitting.
//!
//! Equal-degree splitting draws its random polynomials from a ChaCha stream
//! seeded by a hash of the input, so repeated runs split identically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::embed;
use crate::fields::gf::{field_of_degree, FieldRef, Fq};
use crate::fields::poly::UniPoly;

/// Largest extension degree [`splitting_field`] builds by default.
pub const DEFAULT_DEGREE_BOUND: usize = 24;

/// A monic irreducible factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: UniPoly,
    pub multiplicity: u32,
}

/// All roots of a polynomial in one field that contains them.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub field: FieldRef,
    /// Distinct roots, sorted, with multiplicities summing to the degree.
    pub roots: Vec<(Fq, u32)>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn seed_of(f: &UniPoly) -> u64 {
    let mut h = splitmix(f.field().p() ^ (f.field().degree() as u64) << 40);
    for c in f.coeffs() {
        for &r in c.coeffs() {
            h = splitmix(h ^ r);
        }
    }
    h
}

/// `a^(1/p)` in `F_{p^k}`, i.e. `a^(p^(k-1))`.
fn pth_root(a: &Fq) -> Fq {
    let mut r = a.clone();
    for _ in 1..a.field().degree() {
        r = r.frobenius();
    }
    r
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime monic
/// squarefree parts with their multiplicities.
pub fn squarefree(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let p = f.field().p() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c)?;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y)?;
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if !c.is_one() {
        // Every remaining exponent is a multiple of p.
        let field = c.field().clone();
        let root: Vec<Fq> = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(pth_root)
            .collect();
        for (g, m) in squarefree(&UniPoly::new(&field, root))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree, returned as `(product, degree)`.
pub fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = UniPoly::x(f.field());
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.frobenius_mod(&rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

/// `h^((q^d - 1) / 2) mod m`, using `(p^n - 1)/2 = ((p - 1)/2) * (1 + p + ... + p^(n-1))`.
fn half_power(h: &UniPoly, d: usize, m: &UniPoly) -> UniPoly {
    let field = h.field();
    let p = field.p();
    let n = field.degree() * d;
    let mut s = h.rem(m).expect("nonzero");
    let mut acc = s.clone();
    for _ in 1..n {
        s = s.powmod(p, m);
        acc = acc.mulmod(&s, m);
    }
    acc.powmod((p - 1) / 2, m)
}

/// Splits a monic product of distinct irreducibles of degree `d`.
pub fn equal_degree(f: &UniPoly, d: usize) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(f));
    let mut pending = vec![f.monic()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        let gn = g.degree().unwrap_or(0);
        if gn == d {
            done.push(g);
            continue;
        }
        loop {
            let r = UniPoly::new(
                &field,
                (0..gn).map(|_| Fq::random(&field, &mut rng)).collect(),
            );
            if r.degree().unwrap_or(0) < 1 {
                continue;
            }
            let t = half_power(&r, d, &g).sub(&UniPoly::one(&field));
            let u = g.gcd(&t);
            let ud = u.degree().unwrap_or(0);
            if ud > 0 && ud < gn {
                let v = g.exact_div(&u).expect("gcd divides");
                pending.push(u);
                pending.push(v.monic());
                break;
            }
        }
    }
    done.sort_by(canonical_cmp);
    done
}

fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree and then coefficients. The product of the factors is
/// `f` divided by its leading coefficient.
pub fn poly_factor(f: &UniPoly) -> Result<Vec<Factor>> {
    let mut out: Vec<Factor> = Vec::new();
    for (part, m) in squarefree(f)? {
        for (prod, d) in distinct_degree(&part) {
            for g in equal_degree(&prod, d) {
                match out.iter_mut().find(|fa| fa.poly == g) {
                    Some(fa) => fa.multiplicity += m,
                    None => out.push(Factor {
                        poly: g,
                        multiplicity: m,
                    }),
                }
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.poly, &b.poly));
    Ok(out)
}

/// Rabin's test.
pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let x = UniPoly::x(f.field());
    let mut powers = vec![x.clone()];
    for _ in 0..n {
        let next = powers.last().unwrap().frobenius_mod(&f);
        powers.push(next);
    }
    if powers[n] != x.rem(&f)? {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let g = f.gcd(&powers[n / r].sub(&x));
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Roots of `f` lying in its own coefficient field, sorted, with multiplicity.
pub fn roots(f: &UniPoly) -> Result<Vec<(Fq, u32)>> {
    let mut out = Vec::new();
    for (part, m) in squarefree(f)? {
        let x = UniPoly::x(part.field());
        let linear = part.gcd(&x.frobenius_mod(&part).sub(&x));
        for g in equal_degree(&linear, 1) {
            out.push((-g.coeff(0), m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

pub fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

pub fn lcm_usize(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

/// Degree over the coefficient field of the smallest extension in which
/// `f` splits.
pub fn splitting_degree(f: &UniPoly) -> Result<usize> {
    let mut l = 1;
    for (part, _) in squarefree(f)? {
        for (_, d) in distinct_degree(&part) {
            l = lcm_usize(l, d);
        }
    }
    Ok(l)
}

/// The smallest field `F_{p^L}` (default modulus) in which `f` splits,
/// together with all roots of `f` there.
pub fn splitting_field(f: &UniPoly) -> Result<Splitting> {
    splitting_field_bounded(f, DEFAULT_DEGREE_BOUND)
}

pub fn splitting_field_bounded(f: &UniPoly, bound: usize) -> Result<Splitting> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = f.field();
    let needed = base.degree() * splitting_degree(f)?;
    if needed > bound {
        return Err(Error::DegreeOverflow { needed, bound });
    }
    let field = field_of_degree(base.p(), needed)?;
    let lifted = f.lift(&field)?;
    let roots = roots(&lifted)?;
    Ok(Splitting { field, roots })
}

/// Roots of `f` in the smallest field `F_{p^L}` that contains both the
/// coefficients of `f` and all of its roots, where `L` is a multiple of
/// `at_least`.
pub fn roots_in_common_field(f: &UniPoly, at_least: usize, bound: usize) -> Result<Splitting> {
    let base = f.field();
    let needed = lcm_usize(at_least, base.degree() * splitting_degree(f)?);
    if needed > bound {
        return Err(Error::DegreeOverflow { needed, bound });
    }
    let field = field_of_degree(base.p(), needed)?;
    let lifted = f.lift(&field)?;
    let roots = roots(&lifted)?;
    Ok(Splitting { field, roots })
}

/// Lifts a sorted root list into a larger field, keeping multiplicities.
pub fn lift_roots(roots: &[(Fq, u32)], target: &FieldRef) -> Result<Vec<(Fq, u32)>> {
    let mut out = roots
        .iter()
        .map(|(r, m)| Ok((embed::lift(r, target)?, *m)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::gf::PrimeField;

    fn f7() -> FieldRef {
        PrimeField::new(7).unwrap().field()
    }

    fn expand(factors: &[Factor], field: &FieldRef) -> UniPoly {
        factors.iter().fold(UniPoly::one(field), |acc, f| {
            acc.mul(&f.poly.pow(f.multiplicity))
        })
    }

    #[test]
    fn x_squared_minus_one() {
        let f = f7();
        let poly = UniPoly::from_u64s(&f, &[6, 0, 1]);
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!(fac[0].poly, UniPoly::from_u64s(&f, &[1, 1]));
        assert_eq!(fac[1].poly, UniPoly::from_u64s(&f, &[6, 1]));
        assert!(fac.iter().all(|x| x.multiplicity == 1));
    }

    #[test]
    fn x_squared_plus_one_is_irreducible_mod_7() {
        let f = f7();
        let poly = UniPoly::from_u64s(&f, &[1, 0, 1]);
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(
            fac,
            vec![Factor {
                poly: poly.clone(),
                multiplicity: 1
            }]
        );
        let s = splitting_field(&poly).unwrap();
        assert_eq!(s.field.degree(), 2);
        assert_eq!(s.roots.len(), 2);
        assert!(s.roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn cube_of_linear() {
        let f = f7();
        let poly = UniPoly::from_u64s(&f, &[5, 1]).pow(3); // (x - 2)^3
        let s = splitting_field(&poly).unwrap();
        assert_eq!(s.field.degree(), 1);
        assert_eq!(s.roots, vec![(Fq::from_u64(&f, 2), 3)]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            poly_factor(&UniPoly::zero(&f7())),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn pth_powers_are_handled() {
        // (x^7 + 3)^2 * (x + 1) over F_7 = (x + 3)^14 (x + 1)
        let f = f7();
        let inner = UniPoly::from_u64s(&f, &[3, 0, 0, 0, 0, 0, 0, 1]);
        let poly = inner.pow(2).mul(&UniPoly::from_u64s(&f, &[1, 1]));
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(expand(&fac, &f), poly);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().any(|x| x.multiplicity == 14));
    }

    #[test]
    fn factors_over_an_extension() {
        let f = PrimeField::new(5).unwrap().extension(2).unwrap();
        let t = Fq::generator(&f);
        let a = UniPoly::new(&f, vec![t.clone(), Fq::one(&f), Fq::one(&f)]);
        let b = UniPoly::new(&f, vec![Fq::one(&f), t.clone(), Fq::zero(&f), Fq::one(&f)]);
        let poly = a.mul(&b).mul(&a);
        let fac = poly_factor(&poly).unwrap();
        assert_eq!(expand(&fac, &f), poly.monic());
        for x in &fac {
            assert!(is_irreducible(&x.poly).unwrap());
        }
    }

    #[test]
    fn degree_overflow_is_reported() {
        let f = f7();
        let a = find_irreducible(&f, 5);
        let b = find_irreducible(&f, 7);
        let poly = a.mul(&b);
        assert_eq!(
            splitting_field(&poly).unwrap_err(),
            Error::DegreeOverflow {
                needed: 35,
                bound: DEFAULT_DEGREE_BOUND
            }
        );
    }

    fn find_irreducible(f: &FieldRef, d: usize) -> UniPoly {
        let ext = field_of_degree(f.p(), d).unwrap();
        UniPoly::from_u64s(f, ext.modulus())
    }
}
