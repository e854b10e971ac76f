//! Line-oriented text formats. Every record starts with a header naming its
//! kind; field elements use the `p^k:[c0,...]` grammar.

use std::fmt::Write as _;

use crate::counting::ZetaData;
use crate::curve::{monomials, CurveContext, PlaneForm, PlanePoint, Quartic};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::fields::{field_of_degree, FieldRef, Fq, PrimeField};
use crate::grassmann::PluckerVector;
use crate::jacobian::KummerCoords;
use crate::pencil::{conic_monomial, ConicA, ConicB, ZPoint};

/// The kind of a record, read from its header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordKind {
    Quartic,
    Divisor,
    ZPoint,
    Plucker,
    Zeta,
    Kummer,
}

pub fn record_kind(s: &str) -> Result<RecordKind> {
    let (head, _) = header(s)?;
    let word = head.split_whitespace().next().unwrap_or("");
    match word {
        "quartic" => Ok(RecordKind::Quartic),
        "divisor" => Ok(RecordKind::Divisor),
        "zpoint" => Ok(RecordKind::ZPoint),
        "plucker" => Ok(RecordKind::Plucker),
        "zeta" => Ok(RecordKind::Zeta),
        "kummer" => Ok(RecordKind::Kummer),
        other => Err(Error::Parse(format!("unknown record header `{other}`"))),
    }
}

/// Meaningful lines: trimmed, without blanks and `#` comments.
fn lines(s: &str) -> Vec<&str> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn header(s: &str) -> Result<(&str, Vec<&str>)> {
    let ls = lines(s);
    let (first, rest) = ls
        .split_first()
        .ok_or_else(|| Error::Parse("empty record".into()))?;
    Ok((first, rest.to_vec()))
}

/// Reads `<word> p=<p>`.
fn prime_header(head: &str, word: &str) -> Result<PrimeField> {
    let rest = head
        .strip_prefix(word)
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected `{word} p=<p>` header")))?;
    let p = rest
        .strip_prefix("p=")
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("malformed header `{head}`")))?;
    PrimeField::new(p).map_err(|e| Error::Parse(e.to_string()))
}

fn elements(field: &FieldRef, tokens: &[&str]) -> Result<Vec<Fq>> {
    tokens.iter().map(|t| Fq::parse_in(field, t)).collect()
}

fn join(v: &[Fq]) -> String {
    v.iter().map(Fq::to_string).collect::<Vec<_>>().join(" ")
}

/// `key: e1 e2 ...` with exactly `n` elements.
fn keyed(line: &str, key: &str, field: &FieldRef, n: usize) -> Result<Vec<Fq>> {
    let body = line
        .strip_prefix(key)
        .and_then(|l| l.strip_prefix(':'))
        .ok_or_else(|| Error::Parse(format!("expected line `{key}: ...`")))?;
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.len() != n {
        return Err(Error::Parse(format!(
            "line `{key}` needs {n} elements, found {}",
            tokens.len()
        )));
    }
    elements(field, &tokens)
}

pub fn format_quartic(q: &Quartic) -> String {
    format!("quartic p={}\n{}\n", q.field().p(), join(q.coeffs()))
}

/// The quartic and its prime field; not yet validated.
pub fn parse_quartic(s: &str) -> Result<(Quartic, PrimeField)> {
    let (head, rest) = header(s)?;
    let prime = prime_header(head, "quartic")?;
    let f = prime.field();
    let tokens: Vec<&str> = rest.iter().flat_map(|l| l.split_whitespace()).collect();
    if tokens.len() != 15 {
        return Err(Error::Parse(format!(
            "a quartic has 15 coefficients, found {}",
            tokens.len()
        )));
    }
    let q = PlaneForm::from_coeffs(&f, 4, elements(&f, &tokens)?)?;
    Ok((q, prime))
}

pub fn format_divisor(d: &Divisor) -> String {
    let mut out = format!("divisor p^L={}^{}\n", d.p(), d.field().degree());
    for (pt, m) in d.points() {
        writeln!(out, "{pt} {m}").unwrap();
    }
    out
}

pub fn parse_divisor(ctx: &CurveContext, s: &str) -> Result<Divisor> {
    let (head, rest) = header(s)?;
    let bad = || Error::Parse(format!("malformed header `{head}`"));
    let spec = head
        .strip_prefix("divisor")
        .map(str::trim)
        .and_then(|h| h.strip_prefix("p^L="))
        .ok_or_else(bad)?;
    let (p, l) = spec.split_once('^').ok_or_else(bad)?;
    let p: u64 = p.parse().map_err(|_| bad())?;
    let l: usize = l.parse().map_err(|_| bad())?;
    if p != ctx.p() {
        return Err(Error::Parse(format!(
            "divisor is over F_{p}, curve over F_{}",
            ctx.p()
        )));
    }
    let field = field_of_degree(p, l).map_err(|e| Error::Parse(e.to_string()))?;
    let mut points = Vec::with_capacity(rest.len());
    for line in rest {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 4 {
            return Err(Error::Parse(format!("expected `x y z m`, found `{line}`")));
        }
        let c = elements(&field, &t[..3])?;
        let m: u32 = t[3]
            .parse()
            .ok()
            .filter(|&m| m > 0)
            .ok_or_else(|| Error::Parse(format!("bad multiplicity `{}`", t[3])))?;
        let pt = PlanePoint::new(c[0].clone(), c[1].clone(), c[2].clone())
            .map_err(|e| Error::Parse(e.to_string()))?;
        points.push((pt, m));
    }
    Divisor::new(ctx, points)
}

/// Affine labels of the `G` line (`g11` is implied) and the `H` line.
const G_LABELS: [(u32, u32); 5] = [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)];
const H_LABELS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn conic_values(c: &PlaneForm, labels: &[(u32, u32)]) -> Vec<Fq> {
    labels
        .iter()
        .map(|&(i, j)| c.coeff(conic_monomial(i, j)).clone())
        .collect()
}

fn conic_from(field: &FieldRef, labels: &[(u32, u32)], v: &[Fq]) -> PlaneForm {
    let mut c = PlaneForm::zero(field, 2);
    for (&(i, j), x) in labels.iter().zip(v) {
        c.set_coeff(conic_monomial(i, j), x.clone());
    }
    c
}

pub fn format_zpoint(z: &ZPoint) -> String {
    let a: Vec<Fq> = z.a.coeffs().into_iter().cloned().collect();
    let b: Vec<Fq> = z.b.coeffs().into_iter().cloned().collect();
    format!(
        "zpoint p={}\nA: {}\nB: {}\nG: {}\nH: {}\n",
        z.field().p(),
        join(&a),
        join(&b),
        join(&conic_values(&z.g, &G_LABELS)),
        join(&conic_values(&z.h, &H_LABELS)),
    )
}

/// Reads the four lines; validation against the curve is left to the caller.
pub fn parse_zpoint(ctx: &CurveContext, s: &str) -> Result<ZPoint> {
    let (head, rest) = header(s)?;
    let prime = prime_header(head, "zpoint")?;
    if prime.p() != ctx.p() {
        return Err(Error::Parse("zpoint and curve use different primes".into()));
    }
    if rest.len() != 4 {
        return Err(Error::Parse("a zpoint has four lines A, B, G, H".into()));
    }
    let f = ctx.field();
    let a = keyed(rest[0], "A", f, 3)?;
    let b = keyed(rest[1], "B", f, 3)?;
    let g = keyed(rest[2], "G", f, 5)?;
    let h = keyed(rest[3], "H", f, 6)?;
    let mut g = conic_from(f, &G_LABELS, &g);
    g.set_coeff(conic_monomial(1, 1), Fq::one(f));
    Ok(ZPoint {
        a: ConicA {
            a00: a[0].clone(),
            a10: a[1].clone(),
            a01: a[2].clone(),
        },
        b: ConicB {
            b00: b[0].clone(),
            b10: b[1].clone(),
            b01: b[2].clone(),
        },
        g,
        h: conic_from(f, &H_LABELS, &h),
    })
}

pub fn format_plucker(v: &PluckerVector) -> String {
    format!("plucker p={}\n{}\n", v.field().p(), join(v.coords()))
}

pub fn parse_plucker(s: &str) -> Result<PluckerVector> {
    let (head, rest) = header(s)?;
    let prime = prime_header(head, "plucker")?;
    let tokens: Vec<&str> = rest.iter().flat_map(|l| l.split_whitespace()).collect();
    PluckerVector::new(elements(&prime.field(), &tokens)?)
}

/// Header, then `N1 N2 N3`, the six coefficients `c1..c6` of `L` and the
/// order, one integer per line.
pub fn format_zeta(z: &ZetaData) -> String {
    let mut out = format!("zeta p={}\n", z.p);
    for n in z.counts {
        writeln!(out, "{n}").unwrap();
    }
    for c in &z.l[1..] {
        writeln!(out, "{c}").unwrap();
    }
    writeln!(out, "{}", z.order).unwrap();
    out
}

pub fn parse_zeta(s: &str) -> Result<ZetaData> {
    let (head, rest) = header(s)?;
    let p = prime_header(head, "zeta")?.p();
    if rest.len() != 10 {
        return Err(Error::Parse("a zeta report has ten values".into()));
    }
    let v: Vec<i128> = rest
        .iter()
        .map(|l| {
            l.parse::<i128>()
                .map_err(|_| Error::Parse(format!("bad integer `{l}`")))
        })
        .collect::<Result<_>>()?;
    let counts = [v[0], v[1], v[2]].map(|n| n as u64);
    let z = ZetaData::from_counts(p, counts)?;
    if z.l[1..] != v[3..9] || z.order != v[9] {
        return Err(Error::Parse(
            "zeta report is inconsistent with its counts".into(),
        ));
    }
    Ok(z)
}

/// Header, `A: a00 a10 a01`, `G:` in the order of the `H` line of a
/// zpoint, and `Q:` in the quartic monomial order.
pub fn format_kummer(k: &KummerCoords) -> String {
    let a: Vec<Fq> = k.a.coeffs().into_iter().cloned().collect();
    format!(
        "kummer p={}\nA: {}\nG: {}\nQ: {}\n",
        k.a.a00.field().p(),
        join(&a),
        join(&conic_values(&k.g, &H_LABELS)),
        join(k.q.coeffs()),
    )
}

pub fn parse_kummer(s: &str) -> Result<KummerCoords> {
    let (head, rest) = header(s)?;
    let prime = prime_header(head, "kummer")?;
    if rest.len() != 3 {
        return Err(Error::Parse("a kummer record has lines A, G, Q".into()));
    }
    let f = prime.field();
    let a = keyed(rest[0], "A", &f, 3)?;
    let g = keyed(rest[1], "G", &f, 6)?;
    let q = keyed(rest[2], "Q", &f, monomials(4).len())?;
    Ok(KummerCoords {
        a: ConicA {
            a00: a[0].clone(),
            a10: a[1].clone(),
            a01: a[2].clone(),
        },
        g: conic_from(&f, &H_LABELS, &g),
        q: PlaneForm::from_coeffs(&f, 4, q)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::random_reduced_divisor;
    use crate::jacobian::kummer_coords;
    use crate::pencil::zpoint_from_divisor;

    #[test]
    fn records_round_trip() {
        let c = CurveContext::reference(31).unwrap();
        let q = format_quartic(c.quartic());
        assert_eq!(record_kind(&q).unwrap(), RecordKind::Quartic);
        assert_eq!(&parse_quartic(&q).unwrap().0, c.quartic());

        let d = random_reduced_divisor(&c, 0).unwrap();
        let ds = format_divisor(&d);
        assert!(ds.starts_with("divisor p^L=31^1\n"));
        assert_eq!(parse_divisor(&c, &ds).unwrap(), d);

        let z = zpoint_from_divisor(&c, &d).unwrap();
        let zs = format_zpoint(&z);
        assert_eq!(parse_zpoint(&c, &zs).unwrap(), z);

        let v = crate::grassmann::plucker(&z);
        assert_eq!(parse_plucker(&format_plucker(&v)).unwrap(), v);

        let k = kummer_coords(&c, &z).unwrap();
        assert_eq!(parse_kummer(&format_kummer(&k)).unwrap(), k);
    }

    #[test]
    fn zeta_round_trip() {
        let z = crate::counting::jacobian_order(&CurveContext::reference(7).unwrap()).unwrap();
        let s = format_zeta(&z);
        assert_eq!(s.lines().count(), 11);
        assert_eq!(parse_zeta(&s).unwrap(), z);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        let c = CurveContext::reference(31).unwrap();
        assert!(parse_divisor(&c, "divisor p^L=31^1\n31^1:[1] 31^1:[2]\n")
            .unwrap_err()
            .is_parse());
        assert!(parse_quartic("quartic p=31\n1 2 3\n")
            .unwrap_err()
            .is_parse());
        assert!(record_kind("bogus p=3").unwrap_err().is_parse());
    }
}
