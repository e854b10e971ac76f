//! Pencils of conics through infinity as points of the Grassmannian of
//! 2-planes in `V = span{z^2, xz, yz, x^2, xy}`.
//!
//! `A = (a00, a10, a01, -1, 0)` and `B = (b00, b10, b01, 0, -1)` in this
//! basis. With the standard minors `p_ij = A_i B_j - A_j B_i` (`i < j`), the
//! published coordinate tuple is
//! `(-p01, -p02, p04, p12, p14, p24, -p03, -p13, -p23, p34)`.

use crate::curve::CurveContext;
use crate::divisor::{classify, Divisor};
use crate::error::{Error, Result};
use crate::fields::{FieldRef, Fq, Matrix};
use crate::pencil::{conics_from_divisor_unchecked, ConicA, ConicB, ZPoint};

/// Index pairs of the standard minors, lexicographic.
pub const MINOR_PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// Position in [`MINOR_PAIRS`] and sign of each published coordinate.
pub const DICTIONARY: [(usize, bool); 10] = [
    (0, true),
    (1, true),
    (3, false),
    (4, false),
    (6, false),
    (8, false),
    (2, true),
    (5, true),
    (7, true),
    (9, false),
];

/// A projective point of `P^9`, scaled so that its last nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerVector {
    coords: Vec<Fq>,
}

impl PluckerVector {
    pub fn new(coords: Vec<Fq>) -> Result<PluckerVector> {
        if coords.len() != 10 {
            return Err(Error::Parse(format!(
                "expected 10 Plücker coordinates, found {}",
                coords.len()
            )));
        }
        let last = coords
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::Parse("zero Plücker vector".into()))?
            .inv()?;
        Ok(PluckerVector {
            coords: coords.iter().map(|c| c * &last).collect(),
        })
    }

    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }

    /// Standard minors `p_ij` in the order of [`MINOR_PAIRS`].
    pub fn minors(&self) -> Vec<Fq> {
        let mut out = vec![Fq::zero(self.field()); 10];
        for (k, &(slot, flip)) in DICTIONARY.iter().enumerate() {
            out[slot] = if flip {
                -&self.coords[k]
            } else {
                self.coords[k].clone()
            };
        }
        out
    }

    /// The vector with the given standard minors.
    pub fn from_minors(minors: &[Fq]) -> Result<PluckerVector> {
        if minors.len() != 10 {
            return Err(Error::Parse("expected 10 minors".into()));
        }
        PluckerVector::new(
            DICTIONARY
                .iter()
                .map(|&(slot, flip)| {
                    if flip {
                        -&minors[slot]
                    } else {
                        minors[slot].clone()
                    }
                })
                .collect(),
        )
    }
}

/// The coordinates of `A` and `B` in the basis of `V`.
pub fn pencil_rows(a: &ConicA, b: &ConicB) -> [Vec<Fq>; 2] {
    let f = a.a00.field();
    let (zero, m1) = (Fq::zero(f), -Fq::one(f));
    [
        vec![
            a.a00.clone(),
            a.a10.clone(),
            a.a01.clone(),
            m1.clone(),
            zero.clone(),
        ],
        vec![b.b00.clone(), b.b10.clone(), b.b01.clone(), zero, m1],
    ]
}

/// All ten `2 x 2` minors of a `2 x 5` matrix, lexicographic.
pub fn standard_minors(rows: &[Vec<Fq>; 2]) -> Vec<Fq> {
    MINOR_PAIRS
        .iter()
        .map(|&(i, j)| &(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i]))
        .collect()
}

/// The published tuple, computed directly from the coefficients.
pub fn plucker_from_conics(a: &ConicA, b: &ConicB) -> PluckerVector {
    let f = a.a00.field();
    let (a0, a1, a2) = (&a.a00, &a.a10, &a.a01);
    let (b0, b1, b2) = (&b.b00, &b.b10, &b.b01);
    let cross = |x: &Fq, y: &Fq, u: &Fq, v: &Fq| &(x * y) - &(u * v);
    let coords = vec![
        cross(a1, b0, b1, a0),
        cross(a2, b0, b2, a0),
        -a0,
        cross(a1, b2, a2, b1),
        -a1,
        -a2,
        -b0,
        -b1,
        -b2,
        Fq::one(f),
    ];
    PluckerVector::new(coords).expect("last coordinate is 1")
}

/// Only `A` and `B` enter.
pub fn plucker(z: &ZPoint) -> PluckerVector {
    plucker_from_conics(&z.a, &z.b)
}

/// The five relations `p_ij p_kl - p_ik p_jl + p_il p_jk`, one per
/// 4-subset `i < j < k < l` of `{0..4}`.
pub fn plucker_relations(v: &PluckerVector) -> Vec<Fq> {
    let m = v.minors();
    let p = |i: usize, j: usize| -> &Fq {
        let k = MINOR_PAIRS.iter().position(|&q| q == (i, j)).unwrap();
        &m[k]
    };
    (0..5)
        .map(|skip| {
            let idx: Vec<usize> = (0..5).filter(|&t| t != skip).collect();
            let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
            &(&(p(i, j) * p(k, l)) - &(p(i, k) * p(j, l))) + &(p(i, l) * p(j, k))
        })
        .collect()
}

pub fn plucker_relations_check(v: &PluckerVector) -> bool {
    plucker_relations(v).iter().all(|r| r.is_zero())
}

/// A basis of the 2-plane of a decomposable vector: two rows of the skew
/// matrix of minors through a nonzero entry.
pub fn plane_from_plucker(v: &PluckerVector) -> Option<[Vec<Fq>; 2]> {
    if !plucker_relations_check(v) {
        return None;
    }
    let m = v.minors();
    let f = v.field();
    let entry = |i: usize, j: usize| -> Fq {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Fq::zero(f),
            std::cmp::Ordering::Less => {
                m[MINOR_PAIRS.iter().position(|&q| q == (i, j)).unwrap()].clone()
            }
            std::cmp::Ordering::Greater => {
                -&m[MINOR_PAIRS.iter().position(|&q| q == (j, i)).unwrap()]
            }
        }
    };
    let k = m.iter().position(|c| !c.is_zero())?;
    let (i, j) = MINOR_PAIRS[k];
    Some([
        (0..5).map(|t| entry(i, t)).collect(),
        (0..5).map(|t| entry(j, t)).collect(),
    ])
}

/// Whether two pairs of vectors span the same 2-plane.
pub fn same_plane(u: &[Vec<Fq>; 2], w: &[Vec<Fq>; 2]) -> bool {
    let f = u[0][0].field();
    let stacked = Matrix::from_rows(
        f,
        5,
        vec![u[0].clone(), u[1].clone(), w[0].clone(), w[1].clone()],
    );
    let left = Matrix::from_rows(f, 5, u.to_vec());
    let right = Matrix::from_rows(f, 5, w.to_vec());
    left.rank() == 2 && right.rank() == 2 && stacked.rank() == 2
}

/// The tuple of the pencil attached to any divisor whose interpolation
/// systems are invertible. `injective` is false outside the open set `Z`,
/// where distinct classes can share a pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPlucker {
    pub vector: PluckerVector,
    pub injective: bool,
}

pub fn plucker_of_divisor(ctx: &CurveContext, d: &Divisor) -> Result<DivisorPlucker> {
    let (a, b) = conics_from_divisor_unchecked(ctx, d)?;
    Ok(DivisorPlucker {
        vector: plucker_from_conics(&a, &b),
        injective: classify(ctx, d)?.in_z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::distinct_samples;
    use crate::fields::PrimeField;
    use crate::pencil::zpoint_from_divisor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn vec_of(f: &FieldRef, v: &[i64]) -> PluckerVector {
        PluckerVector::new(v.iter().map(|&c| Fq::from_i64(f, c)).collect()).unwrap()
    }

    /// Every 2-plane of `F_q^5` via reduced row echelon forms.
    fn all_planes(f: &FieldRef) -> HashSet<PluckerVector> {
        let q = f.p();
        let mut out = HashSet::new();
        for i in 0..5 {
            for j in i + 1..5 {
                let free0: Vec<usize> = (i + 1..5).filter(|&t| t != j).collect();
                let free1: Vec<usize> = (j + 1..5).collect();
                let n = free0.len() + free1.len();
                for code in 0..q.pow(n as u32) {
                    let mut c = code;
                    let mut rows = [vec![Fq::zero(f); 5], vec![Fq::zero(f); 5]];
                    rows[0][i] = Fq::one(f);
                    rows[1][j] = Fq::one(f);
                    for &t in free0.iter() {
                        rows[0][t] = Fq::from_u64(f, c % q);
                        c /= q;
                    }
                    for &t in free1.iter() {
                        rows[1][t] = Fq::from_u64(f, c % q);
                        c /= q;
                    }
                    out.insert(PluckerVector::from_minors(&standard_minors(&rows)).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn zero_coefficients_give_the_coordinate_plane() {
        let f = PrimeField::new(7).unwrap().field();
        let z = Fq::zero(&f);
        let a = ConicA {
            a00: z.clone(),
            a10: z.clone(),
            a01: z.clone(),
        };
        let b = ConicB {
            b00: z.clone(),
            b10: z.clone(),
            b01: z,
        };
        let v = plucker_from_conics(&a, &b);
        assert_eq!(v, vec_of(&f, &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
        assert!(plucker_relations_check(&v));
    }

    #[test]
    fn relations_decide_decomposability() {
        let f = PrimeField::new(5).unwrap().field();
        let planes = all_planes(&f);
        // Gaussian binomial [5 choose 2] at q = 5.
        assert_eq!(planes.len(), 20306);
        let probe = vec_of(&f, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(plucker_relations_check(&probe), planes.contains(&probe));
        assert!(!plucker_relations_check(&probe));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let v: Vec<Fq> = (0..10)
                .map(|_| Fq::from_u64(&f, rng.gen_range(0..5)))
                .collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let v = PluckerVector::new(v).unwrap();
            assert_eq!(plucker_relations_check(&v), planes.contains(&v));
        }
        for v in planes.iter().take(300) {
            assert!(plucker_relations_check(v));
        }
    }

    #[test]
    fn published_tuple_matches_minors_and_reconstructs() {
        let c = CurveContext::reference(31).unwrap();
        let mut seen = HashSet::new();
        for (_, d) in distinct_samples(&c, 0, 12).unwrap() {
            let z = zpoint_from_divisor(&c, &d).unwrap();
            let v = plucker(&z);
            let rows = pencil_rows(&z.a, &z.b);
            assert_eq!(
                v,
                PluckerVector::from_minors(&standard_minors(&rows)).unwrap()
            );
            assert!(plucker_relations_check(&v));
            let plane = plane_from_plucker(&v).unwrap();
            assert!(same_plane(&plane, &rows));
            let dv = plucker_of_divisor(&c, &d).unwrap();
            assert!(dv.injective);
            assert_eq!(dv.vector, v);
            assert!(seen.insert(v));
        }
    }
}
