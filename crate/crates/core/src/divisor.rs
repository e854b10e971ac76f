//! Effective divisors on the curve, membership in the open set of
//! non-special degree-3 divisors, and seeded sampling.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::intersect::{contact_conditions_at, monomial_basis};
use crate::curve::point::PlanePoint;
use crate::curve::{CurveContext, PlaneForm};
use crate::error::{Error, Result};
use crate::fields::factor::lcm_usize;
use crate::fields::{field_of_degree, FieldRef, Fq};

/// Effective divisor: points of the curve with positive multiplicities.
///
/// All points live in one field, the smallest `F_{p^L}` (default modulus)
/// containing every coordinate, and are sorted, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    field: FieldRef,
    points: Vec<(PlanePoint, u32)>,
}

impl Divisor {
    /// The zero divisor over `F_p`.
    pub fn empty(p: u64) -> Result<Divisor> {
        Ok(Divisor {
            field: field_of_degree(p, 1)?,
            points: vec![],
        })
    }

    /// Canonical divisor from points on the curve. Points may be given in
    /// different fields and in any order; repeated points are merged.
    pub fn new(ctx: &CurveContext, points: Vec<(PlanePoint, u32)>) -> Result<Divisor> {
        for (pt, _) in &points {
            if !ctx.contains(pt)? {
                return Err(Error::PointOffCurve);
            }
        }
        Divisor::from_points(ctx.p(), points)
    }

    /// Canonicalizes without checking curve membership.
    pub(crate) fn from_points(p: u64, points: Vec<(PlanePoint, u32)>) -> Result<Divisor> {
        let mut common = 1;
        for (pt, _) in &points {
            if pt.field().p() != p {
                return Err(Error::FieldMismatch("divisor point characteristic".into()));
            }
            common = lcm_usize(common, pt.field().degree());
        }
        let big = field_of_degree(p, common)?;
        let mut merged: BTreeMap<PlanePoint, u32> = BTreeMap::new();
        let mut minimal = 1;
        for (pt, m) in points {
            if m == 0 {
                continue;
            }
            let pt = pt.lift(&big)?;
            minimal = lcm_usize(minimal, pt.degree());
            *merged.entry(pt).or_insert(0) += m;
        }
        for (pt, m) in &merged {
            if merged.get(&pt.frobenius()) != Some(m) {
                return Err(Error::NotRational);
            }
        }
        let field = field_of_degree(p, minimal)?;
        let mut out = Vec::with_capacity(merged.len());
        for (pt, m) in merged {
            let r = pt
                .restrict(&field)?
                .ok_or_else(|| Error::Internal("point outside its own field".into()))?;
            out.push((r, m));
        }
        out.sort();
        Ok(Divisor { field, points: out })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn points(&self) -> &[(PlanePoint, u32)] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiplicity of `pt` (given in any field containing it).
    pub fn multiplicity(&self, pt: &PlanePoint) -> u32 {
        let Ok(Some(r)) = pt.restrict(&self.field) else {
            return 0;
        };
        self.points
            .iter()
            .find(|(q, _)| *q == r)
            .map_or(0, |(_, m)| *m)
    }

    pub fn infinity_multiplicity(&self) -> u32 {
        self.points
            .iter()
            .find(|(q, _)| q.is_infinity())
            .map_or(0, |(_, m)| *m)
    }

    /// Points lifted to `target`, which must contain the divisor's field.
    pub fn points_in(&self, target: &FieldRef) -> Result<Vec<(PlanePoint, u32)>> {
        self.points
            .iter()
            .map(|(pt, m)| Ok((pt.lift(target)?, *m)))
            .collect()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        Divisor::from_points(self.p(), pts).expect("sum of rational divisors")
    }

    /// `self - other`, which must be effective.
    pub fn sub(&self, other: &Divisor) -> Result<Divisor> {
        let big = field_of_degree(
            self.p(),
            lcm_usize(self.field.degree(), other.field.degree()),
        )?;
        let mut mine: BTreeMap<PlanePoint, u32> = self.points_in(&big)?.into_iter().collect();
        for (pt, m) in other.points_in(&big)? {
            match mine.get_mut(&pt) {
                Some(have) if *have >= m => *have -= m,
                _ => return Err(Error::NotContained),
            }
        }
        Divisor::from_points(self.p(), mine.into_iter().collect())
    }

    /// `self >= other` coefficientwise.
    pub fn contains(&self, other: &Divisor) -> bool {
        self.sub(other).is_ok()
    }

    /// `m` times the point at infinity.
    pub fn infinity(p: u64, m: u32) -> Result<Divisor> {
        let f = field_of_degree(p, 1)?;
        Divisor::from_points(p, vec![(PlanePoint::infinity(&f), m)])
    }
}

impl PartialOrd for Divisor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Divisor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.degree(), &self.points).cmp(&(other.field.degree(), &other.points))
    }
}

impl std::fmt::Debug for Divisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(pt, m)| format!("{m}*{pt:?}"))
            .collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// Reasons a degree-3 divisor lies outside the non-special open set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    ContainsInfinity,
    ThreePointsCollinear,
    TwoPointsPlusInfinityCollinear,
    TangentThroughInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub in_z: bool,
    pub violations: BTreeSet<Violation>,
}

/// Dimension of the lines in `span(basis)` meeting `X` in at least `points`.
fn lines_through(
    ctx: &CurveContext,
    basis: &[PlaneForm],
    field: &FieldRef,
    points: &[(PlanePoint, u32)],
) -> Result<usize> {
    let m = contact_conditions_at(ctx, basis, field, points)?;
    Ok(basis.len() - m.rank())
}

/// Decides membership of a degree-3 divisor in the domain of the
/// divisor-to-pencil bijection, by line incidence and tangency.
pub fn classify(ctx: &CurveContext, d: &Divisor) -> Result<MembershipReport> {
    if d.degree() != 3 {
        return Err(Error::WrongDegree {
            expected: 3,
            found: d.degree(),
        });
    }
    for (pt, _) in d.points() {
        if !ctx.contains(pt)? {
            return Err(Error::PointOffCurve);
        }
    }
    let field = d.field();
    let mut violations = BTreeSet::new();
    if d.infinity_multiplicity() > 0 {
        violations.insert(Violation::ContainsInfinity);
    }
    let all_lines = monomial_basis(ctx.field(), 1);
    if lines_through(ctx, &all_lines, field, d.points())? > 0 {
        violations.insert(Violation::ThreePointsCollinear);
    }

    // Lines x = c z (and z = 0) through infinity.
    let f = ctx.field();
    let vertical = vec![
        PlaneForm::from_terms(f, 1, &[([1, 0, 0], 1)]),
        PlaneForm::from_terms(f, 1, &[([0, 0, 1], 1)]),
    ];
    let inf = PlanePoint::infinity(field);
    let pts = d.points();
    let mut pairs: Vec<Vec<(PlanePoint, u32)>> = Vec::new();
    for (i, (p, m)) in pts.iter().enumerate() {
        if *m >= 2 {
            pairs.push(vec![(p.clone(), 2)]);
        }
        for (q, _) in &pts[i + 1..] {
            pairs.push(vec![(p.clone(), 1), (q.clone(), 1)]);
        }
    }
    for pair in pairs {
        let doubled = pair.len() == 1;
        let mut with_inf = pair.clone();
        match with_inf.iter_mut().find(|(q, _)| q.is_infinity()) {
            Some(entry) => entry.1 += 1,
            None => with_inf.push((inf.clone(), 1)),
        }
        if lines_through(ctx, &vertical, field, &with_inf)? > 0 {
            violations.insert(Violation::TwoPointsPlusInfinityCollinear);
            if doubled {
                violations.insert(Violation::TangentThroughInfinity);
            }
        }
    }
    Ok(MembershipReport {
        in_z: violations.is_empty(),
        violations,
    })
}

/// Default number of attempts before [`random_reduced_divisor`] gives up.
pub const SAMPLING_BUDGET: usize = 10_000;

/// A uniformly drawn `x` with a rational point above it; `y` uniform among
/// the rational roots.
pub fn random_rational_point<R: Rng + ?Sized>(
    ctx: &CurveContext,
    rng: &mut R,
    budget: &mut usize,
) -> Result<PlanePoint> {
    let f = ctx.field();
    loop {
        if *budget == 0 {
            return Err(Error::SamplingExhausted(SAMPLING_BUDGET));
        }
        *budget -= 1;
        let x = Fq::from_u64(f, rng.gen_range(0..ctx.p()));
        let ys = ctx.ys_over(&x)?;
        if ys.is_empty() {
            continue;
        }
        let y = ys[rng.gen_range(0..ys.len())].clone();
        return Ok(PlanePoint::affine(x, y));
    }
}

/// Three independent rational points, redrawn until the divisor is in the
/// non-special open set. Deterministic in `seed`.
pub fn random_reduced_divisor(ctx: &CurveContext, seed: u64) -> Result<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget = SAMPLING_BUDGET;
    loop {
        let mut pts = Vec::with_capacity(3);
        for _ in 0..3 {
            pts.push((random_rational_point(ctx, &mut rng, &mut budget)?, 1));
        }
        let d = Divisor::from_points(ctx.p(), pts)?;
        if classify(ctx, &d)?.in_z {
            return Ok(d);
        }
    }
}

/// A closed point of degree exactly `k`, as its Frobenius orbit.
pub fn random_closed_point<R: Rng + ?Sized>(
    ctx: &CurveContext,
    k: usize,
    rng: &mut R,
    budget: &mut usize,
) -> Result<Vec<PlanePoint>> {
    let field = field_of_degree(ctx.p(), k)?;
    loop {
        if *budget == 0 {
            return Err(Error::SamplingExhausted(SAMPLING_BUDGET));
        }
        *budget -= 1;
        let x = Fq::random(&field, rng);
        let ys = ctx.ys_over(&x)?;
        if ys.is_empty() {
            continue;
        }
        let y = ys[rng.gen_range(0..ys.len())].clone();
        let pt = PlanePoint::affine(x, y);
        if pt.degree() != k {
            continue;
        }
        let mut orbit = vec![pt];
        for _ in 1..k {
            let next = orbit.last().unwrap().frobenius();
            orbit.push(next);
        }
        return Ok(orbit);
    }
}

/// A degree-3 divisor in the non-special open set whose support is three
/// rational points, a point of degree 2 and a rational point, or one point
/// of degree 3 (the shape is drawn first). Unlike
/// [`random_reduced_divisor`] this also works when the rational points are
/// too few or badly placed. Deterministic in `seed`.
pub fn random_divisor(ctx: &CurveContext, seed: u64) -> Result<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut budget = SAMPLING_BUDGET;
    loop {
        let shape: &[usize] = match rng.gen_range(0..3) {
            0 => &[1, 1, 1],
            1 => &[2, 1],
            _ => &[3],
        };
        let mut pts = Vec::with_capacity(3);
        for &k in shape {
            for pt in random_closed_point(ctx, k, &mut rng, &mut budget)? {
                pts.push((pt, 1));
            }
        }
        let d = Divisor::from_points(ctx.p(), pts)?;
        if classify(ctx, &d)?.in_z {
            return Ok(d);
        }
    }
}

/// The first `count` pairwise distinct divisors produced by consecutive
/// seeds starting at `first_seed`, with their seeds.
pub fn distinct_samples(
    ctx: &CurveContext,
    first_seed: u64,
    count: usize,
) -> Result<Vec<(u64, Divisor)>> {
    distinct_samples_by(ctx, first_seed, count, random_reduced_divisor)
}

/// As [`distinct_samples`] with any seeded sampler.
pub fn distinct_samples_by<S>(
    ctx: &CurveContext,
    first_seed: u64,
    count: usize,
    sampler: S,
) -> Result<Vec<(u64, Divisor)>>
where
    S: Fn(&CurveContext, u64) -> Result<Divisor>,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut seed = first_seed;
    while out.len() < count {
        let d = sampler(ctx, seed)?;
        if seen.insert(d.clone()) {
            out.push((seed, d));
        }
        seed += 1;
        if seed - first_seed > 100 * count as u64 + 1000 {
            return Err(Error::SamplingExhausted(out.len()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> CurveContext {
        CurveContext::reference(31).unwrap()
    }

    fn rational_points(ctx: &CurveContext) -> Vec<PlanePoint> {
        let f = ctx.field();
        let mut out = Vec::new();
        for x in 0..ctx.p() {
            let x = Fq::from_u64(f, x);
            for y in ctx.ys_over(&x).unwrap() {
                out.push(PlanePoint::affine(x.clone(), y));
            }
        }
        out
    }

    #[test]
    fn triple_infinity_is_rejected() {
        let c = ctx();
        let d = Divisor::infinity(31, 3).unwrap();
        let r = classify(&c, &d).unwrap();
        assert!(r.violations.contains(&Violation::ContainsInfinity));
        assert!(!r.in_z);
    }

    #[test]
    fn collinear_points_are_flagged() {
        let c = ctx();
        let pts = rational_points(&c);
        // Find a line through two points that meets X in a third rational point.
        let line = |p: &PlanePoint, q: &PlanePoint| {
            let (a, b) = (p.coords(), q.coords());
            PlaneForm::line(
                &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
                &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
                &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
            )
        };
        let mut done = false;
        'outer: for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                let l = line(p, q);
                let d = crate::curve::intersection_divisor(&c, &l).unwrap();
                if d.field().degree() != 1 || d.infinity_multiplicity() > 0 {
                    continue;
                }
                let third = d
                    .points()
                    .iter()
                    .find(|(r, _)| r != p && r != q)
                    .map(|(r, _)| r.clone());
                if let Some(r) = third {
                    let three =
                        Divisor::new(&c, vec![(p.clone(), 1), (q.clone(), 1), (r, 1)]).unwrap();
                    let rep = classify(&c, &three).unwrap();
                    assert!(rep.violations.contains(&Violation::ThreePointsCollinear));
                    done = true;
                    break 'outer;
                }
            }
        }
        assert!(done);
    }

    #[test]
    fn same_x_is_flagged() {
        let c = ctx();
        let pts = rational_points(&c);
        let (p, q) = pts
            .iter()
            .zip(pts.iter().skip(1))
            .find(|(p, q)| p.x() == q.x())
            .expect("two points over one x");
        let other = pts.iter().find(|r| r.x() != p.x()).unwrap();
        let d = Divisor::new(&c, vec![(p.clone(), 1), (q.clone(), 1), (other.clone(), 1)]).unwrap();
        let rep = classify(&c, &d).unwrap();
        assert!(rep
            .violations
            .contains(&Violation::TwoPointsPlusInfinityCollinear));
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let c = ctx();
        let a = random_reduced_divisor(&c, 0).unwrap();
        let b = random_reduced_divisor(&c, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 3);
        assert!(classify(&c, &a).unwrap().in_z);
        assert_ne!(a, random_reduced_divisor(&c, 1).unwrap());
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let c = ctx();
        let pts = rational_points(&c);
        let d1 = Divisor::new(&c, vec![(pts[0].clone(), 1), (pts[3].clone(), 2)]).unwrap();
        let d2 = Divisor::new(
            &c,
            vec![
                (pts[3].clone(), 1),
                (pts[0].clone(), 1),
                (pts[3].clone(), 1),
            ],
        )
        .unwrap();
        assert_eq!(d1, d2);
        assert_eq!(d1.sub(&d2).unwrap(), Divisor::empty(31).unwrap());
        assert_eq!(
            Divisor::new(
                &c,
                vec![(
                    PlanePoint::affine(Fq::from_u64(c.field(), 1), Fq::from_u64(c.field(), 1)),
                    1
                )]
            )
            .unwrap_err(),
            Error::PointOffCurve
        );
    }

    #[test]
    fn orbit_sampler_reaches_small_fields() {
        // Over F_7 the rational points of the reference curve all lie on x = 0.
        let c = CurveContext::reference(7).unwrap();
        assert!(random_reduced_divisor(&c, 0).is_err());
        for seed in 0..5 {
            let d = random_divisor(&c, seed).unwrap();
            assert!(classify(&c, &d).unwrap().in_z);
            assert_eq!(d, random_divisor(&c, seed).unwrap());
        }
    }
}
