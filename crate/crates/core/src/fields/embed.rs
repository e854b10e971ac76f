//! Subfield embeddings `F_{p^a} -> F_{p^b}` for `a | b`.
//!
//! The image of the generator `t` of the smaller field is the root of its
//! modulus in the larger field with the smallest residue sequence, so the
//! embedding is a deterministic function of the two moduli.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::fields::factor::{self, lcm_usize};
use crate::fields::gf::{field_of_degree, FieldRef, Fq};
use crate::fields::linalg::Matrix;
use crate::fields::poly::UniPoly;

type EmbedKey = (u64, Vec<u64>, Vec<u64>);

fn cache() -> &'static Mutex<HashMap<EmbedKey, Fq>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbedKey, Fq>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mismatch(a: &FieldRef, b: &FieldRef) -> Error {
    Error::FieldMismatch(format!(
        "no embedding of {}^{} into {}^{}",
        a.p(),
        a.degree(),
        b.p(),
        b.degree()
    ))
}

/// Image of the generator of `src` inside `tgt`.
pub fn generator_image(src: &FieldRef, tgt: &FieldRef) -> Result<Fq> {
    if src.p() != tgt.p() || !tgt.degree().is_multiple_of(src.degree()) {
        return Err(mismatch(src, tgt));
    }
    let key = (src.p(), src.modulus().to_vec(), tgt.modulus().to_vec());
    if let Some(img) = cache().lock().unwrap().get(&key) {
        return Ok(img.clone());
    }
    let m = UniPoly::new(
        tgt,
        src.modulus()
            .iter()
            .map(|&c| Fq::from_u64(tgt, c))
            .collect(),
    );
    let roots = factor::roots(&m)?;
    let img = roots
        .into_iter()
        .map(|(r, _)| r)
        .min()
        .ok_or_else(|| Error::Internal("modulus has no root in the larger field".into()))?;
    cache().lock().unwrap().insert(key, img.clone());
    Ok(img)
}

/// Re-expresses `a` as an element of `target`, which must contain the field
/// of `a` (or `a` must lie in the prime field).
pub fn lift(a: &Fq, target: &FieldRef) -> Result<Fq> {
    let src = a.field();
    if src.same_as(target) {
        return Ok(a.clone());
    }
    if src.p() != target.p() {
        return Err(mismatch(src, target));
    }
    if a.is_prime_subfield() {
        return Ok(Fq::from_u64(target, a.coeffs()[0]));
    }
    let theta = generator_image(src, target)?;
    let mut acc = Fq::zero(target);
    let mut power = Fq::one(target);
    for &c in a.coeffs() {
        if c != 0 {
            acc += &(&power * &Fq::from_u64(target, c));
        }
        power = &power * &theta;
    }
    Ok(acc)
}

/// Preimage of `a` in the subfield `sub`, or `None` when `a` is not there.
pub fn restrict(a: &Fq, sub: &FieldRef) -> Result<Option<Fq>> {
    let big = a.field();
    if big.same_as(sub) {
        return Ok(Some(a.clone()));
    }
    if a.is_prime_subfield() {
        return Ok(Some(Fq::from_u64(sub, a.coeffs()[0])));
    }
    if big.p() != sub.p() || !big.degree().is_multiple_of(sub.degree()) {
        return Err(mismatch(sub, big));
    }
    let fp = field_of_degree(big.p(), 1)?;
    let theta = generator_image(sub, big)?;
    let k = sub.degree();
    let n = big.degree();
    // Column i holds the residues of theta^i.
    let mut m = Matrix::zeros(&fp, n, k);
    let mut power = Fq::one(big);
    for i in 0..k {
        for (r, &c) in power.coeffs().iter().enumerate() {
            m.set(r, i, Fq::from_u64(&fp, c));
        }
        power = &power * &theta;
    }
    let rhs: Vec<Fq> = a.coeffs().iter().map(|&c| Fq::from_u64(&fp, c)).collect();
    match m.solve(&rhs) {
        Some((x, _)) => {
            let residues: Vec<u64> = x.iter().map(|c| c.coeffs()[0]).collect();
            Ok(Some(Fq::from_coeffs(sub, &residues)?))
        }
        None => Ok(None),
    }
}

/// The default field `F_{p^lcm(a,b)}` containing both arguments.
pub fn common_field(a: &FieldRef, b: &FieldRef) -> Result<FieldRef> {
    if a.p() != b.p() {
        return Err(mismatch(a, b));
    }
    if a.same_as(b) {
        return Ok(a.clone());
    }
    field_of_degree(a.p(), lcm_usize(a.degree(), b.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::gf::PrimeField;

    #[test]
    fn embedding_is_a_ring_map() {
        let base = PrimeField::new(7).unwrap();
        let f2 = base.extension(2).unwrap();
        let f6 = base.extension(6).unwrap();
        let t = Fq::generator(&f2);
        let a = &t + &Fq::from_u64(&f2, 3);
        let b = &(&t * &t) + &Fq::from_u64(&f2, 5);
        let la = lift(&a, &f6).unwrap();
        let lb = lift(&b, &f6).unwrap();
        assert_eq!(lift(&(&a * &b), &f6).unwrap(), &la * &lb);
        assert_eq!(lift(&(&a + &b), &f6).unwrap(), &la + &lb);
        assert_eq!(la.algebraic_degree(), 2);
    }

    #[test]
    fn restrict_inverts_lift() {
        let base = PrimeField::new(5).unwrap();
        let f3 = base.extension(3).unwrap();
        let f6 = base.extension(6).unwrap();
        let a = Fq::from_coeffs(&f3, &[1, 4, 2]).unwrap();
        let up = lift(&a, &f6).unwrap();
        assert_eq!(restrict(&up, &f3).unwrap(), Some(a));
        let gen6 = Fq::generator(&f6);
        assert_eq!(restrict(&gen6, &f3).unwrap(), None);
    }

    #[test]
    fn incompatible_degrees_are_rejected() {
        let base = PrimeField::new(5).unwrap();
        let f2 = base.extension(2).unwrap();
        let f3 = base.extension(3).unwrap();
        assert!(matches!(
            lift(&Fq::generator(&f2), &f3),
            Err(Error::FieldMismatch(_))
        ));
    }
}
