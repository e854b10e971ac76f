//! Frozen values for the reference curve x^4 + y^3 z + z^4.

use quartic_jacobian::counting::{count_points, jacobian_order};
use quartic_jacobian::curve::CurveContext;
use quartic_jacobian::divisor::{classify, random_reduced_divisor};
use quartic_jacobian::text;

#[test]
fn seed_zero_divisor() {
    let ctx = CurveContext::reference(31).unwrap();
    let d = random_reduced_divisor(&ctx, 0).unwrap();
    assert_eq!(
        text::format_divisor(&d),
        "divisor p^L=31^1\n\
         31^1:[1] 31^1:[27] 31^1:[1] 1\n\
         31^1:[14] 31^1:[29] 31^1:[1] 1\n\
         31^1:[17] 31^1:[29] 31^1:[1] 1\n"
    );
    assert!(classify(&ctx, &d).unwrap().in_z);
    let d1 = random_reduced_divisor(&ctx, 1).unwrap();
    assert_ne!(d, d1);
    assert_eq!(d, random_reduced_divisor(&ctx, 0).unwrap());
}

#[test]
fn order_over_f7() {
    let ctx = CurveContext::reference(7).unwrap();
    let z = jacobian_order(&ctx).unwrap();
    assert_eq!(z.counts, [4, 20, 364]);
    assert_eq!(z.l, [1, -4, -7, 56, -49, -196, 343]);
    assert_eq!(z.order, 144);
    let (lo, hi) = ((7f64.sqrt() - 1.0).powi(6), (7f64.sqrt() + 1.0).powi(6));
    assert!(lo <= 144.0 && 144.0 <= hi);
}

#[test]
fn order_over_f11() {
    let ctx = CurveContext::reference(11).unwrap();
    let z = jacobian_order(&ctx).unwrap();
    assert_eq!(z.counts, [12, 188, 1332]);
    assert_eq!(z.l, [1, 0, 33, 0, 363, 0, 1331]);
    assert_eq!(z.order, 1728);
}

#[test]
fn prime_field_counts() {
    // Independent of the sweep: p = 2 mod 3 makes y -> y^3 a bijection, so
    // each x has exactly one affine y and the count is p + 1.
    for p in [5, 11, 17, 23, 29] {
        let ctx = CurveContext::reference(p).unwrap();
        assert_eq!(count_points(&ctx, 1).unwrap(), p + 1);
    }
}
