//! Prime fields, their extensions `F_p[t]/(m(t))`, and elements.
//!
//! A field is described by a shared [`GaloisField`] handle. Elements carry a
//! handle to their field so that mixing elements of different fields is
//! detected instead of silently producing garbage.
//!
//! Extension moduli default to the smallest monic irreducible polynomial of
//! each degree, where polynomials are compared by their coefficient sequence
//! from the constant term upward. Because the choice is deterministic, an
//! element's serialization `p^k:[c0,...,c_{k-1}]` is reproducible.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fields::factor;
use crate::fields::poly::UniPoly;

type Coeffs = SmallVec<[u64; 4]>;

/// Shared handle to a field descriptor.
pub type FieldRef = Arc<GaloisField>;

/// A validated prime `p >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The field `F_p` itself.
    pub fn field(&self) -> FieldRef {
        field_of_degree(self.p, 1).expect("degree one field always exists")
    }

    /// `F_{p^k}` with the default modulus.
    pub fn extension(&self, k: usize) -> Result<FieldRef> {
        field_of_degree(self.p, k)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `F_{p^k}` presented as `F_p[t]/(m(t))`.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    degree: usize,
    /// Monic, low degree first, length `degree + 1`.
    modulus: Vec<u64>,
}

impl GaloisField {
    /// Builds an extension with an explicit modulus, checking irreducibility.
    pub fn with_modulus(base: PrimeField, modulus: &[u64]) -> Result<FieldRef> {
        let p = base.p();
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] % p != 1 {
            return Err(Error::InvalidModulus(k));
        }
        let m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if k == 1 {
            // Any monic linear modulus gives F_p itself.
            return Ok(base.field());
        }
        let fp = base.field();
        let poly = UniPoly::new(&fp, m.iter().map(|&c| Fq::from_u64(&fp, c)).collect());
        if !factor::is_irreducible(&poly)? {
            return Err(Error::InvalidModulus(k));
        }
        if let Ok(existing) = field_of_degree(p, k) {
            if existing.modulus == m {
                return Ok(existing);
            }
        }
        Ok(Arc::new(GaloisField {
            p,
            degree: k,
            modulus: m,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prime(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let mut q: u128 = 1;
        for _ in 0..self.degree {
            q = q.checked_mul(self.p as u128)?;
        }
        Some(q)
    }

    pub fn same_as(&self, other: &GaloisField) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }

    fn reduce_raw(&self, t: &mut Vec<u64>) {
        let k = self.degree;
        let p = self.p;
        for i in (k..t.len()).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let sub = c * self.modulus[j] % p;
                let idx = i - k + j;
                t[idx] = (t[idx] + p - sub) % p;
            }
            t[i] = 0;
        }
        t.truncate(k);
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GaloisField {}

fn registry() -> &'static Mutex<HashMap<(u64, usize), FieldRef>> {
    static FIELDS: OnceLock<Mutex<HashMap<(u64, usize), FieldRef>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `F_{p^k}` with the default (smallest irreducible) modulus, memoized.
pub fn field_of_degree(p: u64, k: usize) -> Result<FieldRef> {
    if k == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let base = PrimeField::new(p)?;
    let field = if k == 1 {
        Arc::new(GaloisField {
            p,
            degree: 1,
            modulus: vec![0, 1],
        })
    } else {
        let modulus = smallest_irreducible(base, k)?;
        Arc::new(GaloisField {
            p,
            degree: k,
            modulus,
        })
    };
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, k)).or_insert(field).clone())
}

fn smallest_irreducible(base: PrimeField, k: usize) -> Result<Vec<u64>> {
    let p = base.p();
    // Lexicographic order on (c0, c1, ..., c_{k-1}); c0 = 0 is divisible by t.
    let mut c = vec![0u64; k];
    c[0] = 1;
    loop {
        let mut m = c.clone();
        m.push(1);
        if raw::is_irreducible(&m, p) {
            return Ok(m);
        }
        // Increment with c_{k-1} least significant.
        let mut i = k - 1;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            if i == 0 {
                return Err(Error::Internal(format!(
                    "no irreducible polynomial of degree {k} over F_{p}"
                )));
            }
            i -= 1;
        }
    }
}

/// Dense `F_p[x]` arithmetic on residue vectors, used where the generic
/// element type would dominate the cost.
mod raw {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        super::inv_mod(a, p)
    }

    /// Remainder of `a` modulo the nonzero `m`.
    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                let shift = top - dm;
                for (j, &b) in m.iter().enumerate() {
                    r[shift + j] = (r[shift + j] + p - c * b % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut t = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] += (x * y) as u128;
            }
        }
        let t: Vec<u64> = t.into_iter().map(|v| (v % p as u128) as u64).collect();
        rem(&t, m, p)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            e >>= 1;
            if e > 0 {
                b = mulmod(&b, &b, m, p);
            }
        }
        acc
    }

    fn gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a.len() == 1
    }

    /// Ben-Or: `m` (monic, degree `n`) is irreducible iff
    /// `gcd(m, x^(p^i) - x) = 1` for `1 <= i <= n/2`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let n = m.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = powmod(&xp, p, m, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            if !gcd_is_one(m, &diff, p) {
                return false;
            }
        }
        true
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// An element of some `F_{p^k}`.
#[derive(Clone)]
pub struct Fq {
    field: FieldRef,
    coeffs: Coeffs,
}

/// The binary operations exposed by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// Power of the first operand; the second is ignored.
    Pow(u64),
}

/// Checked arithmetic entry point: reports mismatched fields and division
/// by zero as errors instead of panicking.
pub fn field_arith(a: &Fq, b: &Fq, op: ArithOp) -> Result<Fq> {
    match op {
        ArithOp::Inv => return a.inv(),
        ArithOp::Pow(e) => return Ok(a.pow(e)),
        _ => {}
    }
    a.check_same(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.try_div(b)?,
        ArithOp::Inv | ArithOp::Pow(_) => unreachable!(),
    })
}

impl Fq {
    pub fn zero(field: &FieldRef) -> Fq {
        Fq {
            field: field.clone(),
            coeffs: SmallVec::from_elem(0, field.degree),
        }
    }

    pub fn one(field: &FieldRef) -> Fq {
        Fq::from_u64(field, 1)
    }

    pub fn from_u64(field: &FieldRef, v: u64) -> Fq {
        let mut e = Fq::zero(field);
        e.coeffs[0] = v % field.p;
        e
    }

    pub fn from_i64(field: &FieldRef, v: i64) -> Fq {
        let p = field.p as i64;
        Fq::from_u64(field, v.rem_euclid(p) as u64)
    }

    /// Element with the given residues (missing high coefficients are zero).
    pub fn from_coeffs(field: &FieldRef, c: &[u64]) -> Result<Fq> {
        if c.len() > field.degree {
            return Err(Error::FieldMismatch(format!(
                "{} residues for a degree {} field",
                c.len(),
                field.degree
            )));
        }
        let mut e = Fq::zero(field);
        for (slot, &v) in e.coeffs.iter_mut().zip(c) {
            *slot = v % field.p;
        }
        Ok(e)
    }

    /// The class of `t` in `F_p[t]/(m)`.
    pub fn generator(field: &FieldRef) -> Fq {
        if field.degree == 1 {
            // t = -m0 for a linear modulus t + m0.
            return Fq::from_u64(field, (field.p - field.modulus[0]) % field.p);
        }
        let mut e = Fq::zero(field);
        e.coeffs[1] = 1;
        e
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldRef, rng: &mut R) -> Fq {
        let mut e = Fq::zero(field);
        for c in e.coeffs.iter_mut() {
            *c = rng.gen_range(0..field.p);
        }
        e
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The residue in `F_p`, when the element lies there.
    pub fn prime_value(&self) -> Option<u64> {
        self.is_prime_subfield().then(|| self.coeffs[0])
    }

    pub fn same_field(&self, other: &Fq) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.same_as(&other.field)
    }

    pub fn check_same(&self, other: &Fq) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{}^{} vs {}^{}",
                self.field.p, self.field.degree, other.field.p, other.field.degree
            )))
        }
    }

    fn assert_same(&self, other: &Fq) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    pub fn inv(&self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        if self.field.degree == 1 {
            return Ok(Fq::from_u64(&self.field, inv_mod(self.coeffs[0], p)));
        }
        let inv = raw_inverse(&self.coeffs, &self.field.modulus, p)
            .ok_or_else(|| Error::Internal("modulus shares a factor with an element".into()))?;
        Fq::from_coeffs(&self.field, &inv)
    }

    pub fn try_div(&self, other: &Fq) -> Result<Fq> {
        self.check_same(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut base = self.clone();
        let mut acc = Fq::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Fq {
        if self.field.degree == 1 {
            return self.clone();
        }
        self.pow(self.field.p)
    }

    /// Degree over `F_p` of the smallest subfield containing the element.
    pub fn algebraic_degree(&self) -> usize {
        let k = self.field.degree;
        let mut x = self.clone();
        for d in 1..=k {
            x = x.frobenius();
            if k.is_multiple_of(d) && x == *self {
                return d;
            }
        }
        k
    }

    /// Parses `p^k:[c0,...,c_{k-1}]`, resolving the field to the default
    /// modulus of that degree.
    pub fn parse(s: &str) -> Result<Fq> {
        let bad = || Error::Parse(format!("malformed field element `{s}`"));
        let s = s.trim();
        let (head, body) = s.split_once(':').ok_or_else(bad)?;
        let (p, k) = head.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let k: usize = k.parse().map_err(|_| bad())?;
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let residues: Vec<u64> = body
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if residues.len() != k || residues.iter().any(|&c| c >= p) {
            return Err(bad());
        }
        let field = field_of_degree(p, k).map_err(|e| Error::Parse(e.to_string()))?;
        Fq::from_coeffs(&field, &residues)
    }

    /// Parses an element of a known field; a bare decimal integer is read as
    /// a residue in the prime subfield.
    pub fn parse_in(field: &FieldRef, s: &str) -> Result<Fq> {
        let s = s.trim();
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Fq::from_i64(field, v));
        }
        let e = Fq::parse(s)?;
        if e.field.p != field.p {
            return Err(Error::Parse(format!(
                "element `{s}` is not over F_{}",
                field.p
            )));
        }
        crate::fields::embed::lift(&e, field).map_err(|err| Error::Parse(err.to_string()))
    }
}

fn raw_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Inverse of `a` modulo the monic `m` over `F_p` by the extended Euclidean
/// algorithm on residue vectors.
fn raw_inverse(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    raw_trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        // (q, r) = divrem(r0, r1)
        let mut r = r0.clone();
        let d = r1.len() - 1;
        let lead_inv = inv_mod(r1[d], p);
        let mut q = vec![0u64; r.len().saturating_sub(d).max(1)];
        while r.len() > d {
            let top = r.len() - 1;
            let c = mul_mod(r[top], lead_inv, p);
            let shift = top - d;
            q[shift] = c;
            for (j, &b) in r1.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul_mod(c, b, p)) % p;
            }
            raw_trim(&mut r);
            if r.len() <= d {
                break;
            }
        }
        // s_new = s0 - q * s1
        let mut qs = vec![0u64; q.len() + s1.len()];
        for (i, &qi) in q.iter().enumerate() {
            for (j, &sj) in s1.iter().enumerate() {
                qs[i + j] = (qs[i + j] + mul_mod(qi, sj, p)) % p;
            }
        }
        let mut s_new = s0.clone();
        if s_new.len() < qs.len() {
            s_new.resize(qs.len(), 0);
        }
        for (i, &v) in qs.iter().enumerate() {
            s_new[i] = (s_new[i] + p - v) % p;
        }
        raw_trim(&mut s_new);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&v| mul_mod(v, c, p)).collect();
    out.resize(m.len() - 1, 0);
    Some(out)
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by residue sequence, constant term first.
impl Ord for Fq {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p, self.field.degree, &self.coeffs[..]).cmp(&(
            other.field.p,
            other.field.degree,
            &other.coeffs[..],
        ))
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:[", self.field.p, self.field.degree)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn add(self, rhs: &'a Fq) -> Fq {
        self.assert_same(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Fq {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl<'a> Sub<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn sub(self, rhs: &'a Fq) -> Fq {
        self.assert_same(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Fq {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl<'a> Mul<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn mul(self, rhs: &'a Fq) -> Fq {
        self.assert_same(rhs);
        let p = self.field.p;
        let k = self.field.degree;
        if k == 1 {
            return Fq {
                field: self.field.clone(),
                coeffs: SmallVec::from_elem(mul_mod(self.coeffs[0], rhs.coeffs[0], p), 1),
            };
        }
        let mut t = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                t[i + j] = (t[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        self.field.reduce_raw(&mut t);
        Fq {
            field: self.field.clone(),
            coeffs: SmallVec::from_vec(t),
        }
    }
}

impl Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.field.p;
        Fq {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| if c == 0 { 0 } else { p - c })
                .collect(),
        }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Fq> for Fq {
            type Output = Fq;
            fn $m(self, rhs: Fq) -> Fq {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Fq> for Fq {
            type Output = Fq;
            fn $m(self, rhs: &'a Fq) -> Fq {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Fq> for &'a Fq {
            type Output = Fq;
            fn $m(self, rhs: Fq) -> Fq {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Fq> for Fq {
    fn add_assign(&mut self, rhs: &Fq) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Fq> for Fq {
    fn sub_assign(&mut self, rhs: &Fq) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Fq> for Fq {
    fn mul_assign(&mut self, rhs: &Fq) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldRef {
        PrimeField::new(7).unwrap().field()
    }

    #[test]
    fn raw_test_agrees_with_rabin() {
        let fp = PrimeField::new(5).unwrap().field();
        for code in 0..625u64 {
            let mut m: Vec<u64> = (0..4).map(|i| code / 5u64.pow(i) % 5).collect();
            m.push(1);
            let poly = UniPoly::new(&fp, m.iter().map(|&v| Fq::from_u64(&fp, v)).collect());
            assert_eq!(
                raw::is_irreducible(&m, 5),
                factor::is_irreducible(&poly).unwrap(),
                "{m:?}"
            );
        }
    }

    #[test]
    fn prime_field_products() {
        let f = f7();
        let a = Fq::from_u64(&f, 3);
        let b = Fq::from_u64(&f, 5);
        assert_eq!(field_arith(&a, &b, ArithOp::Mul).unwrap(), Fq::one(&f));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = f7();
        let z = Fq::zero(&f);
        assert_eq!(
            field_arith(&z, &z, ArithOp::Inv),
            Err(Error::DivisionByZero)
        );
        assert_eq!(z.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn t_squared_is_minus_one_mod_t2_plus_1() {
        let f = GaloisField::with_modulus(PrimeField::new(7).unwrap(), &[1, 0, 1]).unwrap();
        let t = Fq::generator(&f);
        let sq = &t * &t;
        assert_eq!(sq.coeffs(), &[6, 0]);
        assert_eq!(sq, -Fq::one(&f));
    }

    #[test]
    fn default_quadratic_modulus_over_f7() {
        let f = PrimeField::new(7).unwrap().extension(2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_small_and_composite_primes() {
        for p in [0, 1, 2, 3, 4, 9, 15, 49] {
            assert_eq!(PrimeField::new(p), Err(Error::InvalidPrime(p)));
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        let base = PrimeField::new(5).unwrap();
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(GaloisField::with_modulus(base, &[4, 0, 1]).is_err());
    }

    #[test]
    fn mismatched_fields_are_reported() {
        let a = Fq::one(&f7());
        let b = Fq::one(&PrimeField::new(11).unwrap().field());
        assert!(matches!(
            field_arith(&a, &b, ArithOp::Add),
            Err(Error::FieldMismatch(_))
        ));
    }

    #[test]
    fn inverses_in_extension() {
        let f = PrimeField::new(11).unwrap().extension(3).unwrap();
        let mut rng = rand::rngs::mock::StepRng::new(3, 7);
        for _ in 0..50 {
            let a = Fq::random(&f, &mut rng);
            if a.is_zero() {
                continue;
            }
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn frobenius_order_matches_degree() {
        let f = PrimeField::new(5).unwrap().extension(4).unwrap();
        let t = Fq::generator(&f);
        assert_eq!(t.algebraic_degree(), 4);
        let mut x = t.clone();
        for _ in 0..4 {
            x = x.frobenius();
        }
        assert_eq!(x, t);
        assert_eq!(Fq::from_u64(&f, 3).algebraic_degree(), 1);
        // t^(1 + 5^2) lies in F_25.
        let norm_like = &t * &t.frobenius().frobenius();
        assert_eq!(norm_like.algebraic_degree(), 2);
    }

    #[test]
    fn text_grammar_round_trip() {
        let f = PrimeField::new(31).unwrap().extension(2).unwrap();
        let e = Fq::from_coeffs(&f, &[4, 17]).unwrap();
        let s = e.to_string();
        assert_eq!(s, "31^2:[4,17]");
        assert_eq!(Fq::parse(&s).unwrap(), e);
        assert!(Fq::parse("31^2:[4]").is_err());
        assert!(Fq::parse("31^1:[31]").is_err());
        assert!(Fq::parse("garbage").is_err());
    }
}
