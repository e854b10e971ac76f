use proptest::prelude::*;

use quartic_jacobian::curve::{monomials, CurveContext, PlaneForm};
use quartic_jacobian::divisor::{classify, random_divisor, random_reduced_divisor};
use quartic_jacobian::fields::factor::is_irreducible;
use quartic_jacobian::fields::{field_of_degree, poly_factor, splitting_field, Fq, UniPoly};
use quartic_jacobian::jacobian::{
    add, class_equal, is_zero, neg_class, tangent_matrix, JacobianClass,
};
use quartic_jacobian::pencil::{divisor_from_conics, zpoint_from_divisor};

const PRIMES: [u64; 4] = [5, 7, 13, 31];

fn poly(p: u64, c: &[u64]) -> UniPoly {
    let f = field_of_degree(p, 1).unwrap();
    UniPoly::from_u64s(&f, c)
}

fn eval_u64(p: u64, c: &[u64], x: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p)
}

fn reference() -> CurveContext {
    CurveContext::reference(31).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_re_expands(pi in 0..PRIMES.len(), c in prop::collection::vec(0u64..31, 2..10)) {
        let p = PRIMES[pi];
        let c: Vec<u64> = c.iter().map(|v| v % p).collect();
        let f = poly(p, &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let factors = poly_factor(&f).unwrap();
        let mut prod = UniPoly::constant(f.leading().unwrap().clone());
        for fac in &factors {
            prop_assert!(fac.poly.leading().unwrap().is_one());
            prop_assert!(is_irreducible(&fac.poly).unwrap());
            prod = prod.mul(&fac.poly.pow(fac.multiplicity));
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn rational_roots_match_exhaustive_search(pi in 0..PRIMES.len(), c in prop::collection::vec(0u64..31, 2..8)) {
        let p = PRIMES[pi];
        let c: Vec<u64> = c.iter().map(|v| v % p).collect();
        let f = poly(p, &c);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let split = splitting_field(&f).unwrap();
        let mut found: Vec<u64> = split.roots.iter().filter_map(|(r, _)| r.prime_value()).collect();
        found.sort();
        let exhaustive: Vec<u64> = (0..p).filter(|&x| eval_u64(p, &c, x) == 0).collect();
        prop_assert_eq!(found, exhaustive);
        let total: u32 = split.roots.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total as usize, f.degree().unwrap());
        for (r, _) in &split.roots {
            prop_assert!(f.lift(&split.field).unwrap().eval(r).is_zero());
        }
    }

    #[test]
    fn extension_field_axioms(pi in 0..PRIMES.len(), k in 1usize..5, a in prop::collection::vec(0u64..31, 4), b in prop::collection::vec(0u64..31, 4), c in prop::collection::vec(0u64..31, 4)) {
        let p = PRIMES[pi];
        let f = field_of_degree(p, k).unwrap();
        let el = |v: &[u64]| Fq::from_coeffs(&f, &v[..k].iter().map(|x| x % p).collect::<Vec<_>>()).unwrap();
        let (a, b, c) = (el(&a), el(&b), el(&c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow(p.pow(k as u32) - 1).is_one());
        }
        let mut fr = a.clone();
        for _ in 0..k {
            fr = fr.frobenius();
        }
        prop_assert_eq!(fr, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_divisors_are_frobenius_stable(p in prop::sample::select(vec![7u64, 11, 13]), seed in any::<u64>()) {
        let ctx = CurveContext::reference(p).unwrap();
        let d = random_divisor(&ctx, seed).unwrap();
        prop_assert_eq!(d.degree(), 3);
        for (pt, m) in d.points() {
            prop_assert!(ctx.contains(pt).unwrap());
            prop_assert_eq!(d.multiplicity(&pt.frobenius()), *m);
        }
        prop_assert!(classify(&ctx, &d).unwrap().in_z);
    }

    #[test]
    fn zpoint_round_trip(seed in any::<u64>()) {
        let ctx = reference();
        let d = random_reduced_divisor(&ctx, seed).unwrap();
        let z = zpoint_from_divisor(&ctx, &d).unwrap();
        prop_assert_eq!(z.product(), ctx.quartic().clone());
        prop_assert_eq!(divisor_from_conics(&ctx, &z.a, &z.b).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn group_law_invariants(s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = reference();
        let c1 = JacobianClass::new(&ctx, &random_reduced_divisor(&ctx, s1).unwrap()).unwrap();
        let c2 = JacobianClass::new(&ctx, &random_reduced_divisor(&ctx, s2).unwrap()).unwrap();
        let zero = JacobianClass::zero(&ctx).unwrap();
        let sum = add(&ctx, &c1, &c2).unwrap();
        prop_assert!(class_equal(&ctx, &sum, &add(&ctx, &c2, &c1).unwrap()).unwrap());
        prop_assert!(class_equal(&ctx, &add(&ctx, &c1, &zero).unwrap(), &c1).unwrap());
        let n1 = neg_class(&ctx, &c1).unwrap();
        prop_assert!(is_zero(&ctx, &add(&ctx, &c1, &n1).unwrap()).unwrap());
        prop_assert!(class_equal(&ctx, &add(&ctx, &sum, &neg_class(&ctx, &c2).unwrap()).unwrap(), &c1).unwrap());
    }
}

/// `(dA, dB, dG, dH) = (0, 0, B, -A)` solves the linearized equation before
/// the `xy` coefficient of `G` is pinned; after projecting that coefficient
/// out, the residual is exactly `-b11 xy A`.
#[test]
fn koszul_direction() {
    let ctx = reference();
    for seed in 0..4 {
        let z = zpoint_from_divisor(&ctx, &random_reduced_divisor(&ctx, seed).unwrap()).unwrap();
        let (a, b) = (z.a.form(), z.b.form());
        assert!(a.mul(&b).sub(&b.mul(&a)).is_zero());

        let f = ctx.field();
        let xy = [1, 1, 0];
        let mut v = vec![Fq::zero(f); 6];
        v.extend(
            monomials(2)
                .into_iter()
                .filter(|&m| m != xy)
                .map(|m| b.coeff(m).clone()),
        );
        v.extend(monomials(2).into_iter().map(|m| -a.coeff(m).clone()));
        let residual = tangent_matrix(&z).mul_vec(&v);

        let b11 = b.coeff(xy).clone();
        let expected = PlaneForm::from_terms(f, 2, &[(xy, 1)]).mul(&a).scale(&-b11);
        let expected: Vec<Fq> = monomials(4)
            .into_iter()
            .map(|m| expected.coeff(m).clone())
            .collect();
        assert_eq!(residual, expected);
        assert!(!residual.iter().all(Fq::is_zero));
    }
}
