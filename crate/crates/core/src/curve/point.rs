use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::embed;
use crate::fields::factor::lcm_usize;
use crate::fields::{FieldRef, Fq};

/// Projective point, scaled so the last nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    coords: [Fq; 3],
}

impl PlanePoint {
    pub fn new(x: Fq, y: Fq, z: Fq) -> Result<PlanePoint> {
        x.check_same(&y)?;
        x.check_same(&z)?;
        let mut coords = [x, y, z];
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::Parse("point (0:0:0)".into()))?;
        let inv = coords[last].inv()?;
        for c in coords.iter_mut() {
            *c = &*c * &inv;
        }
        Ok(PlanePoint { coords })
    }

    pub fn affine(x: Fq, y: Fq) -> PlanePoint {
        let one = Fq::one(x.field());
        PlanePoint::new(x, y, one).expect("affine point")
    }

    /// `(0:1:0)`.
    pub fn infinity(field: &FieldRef) -> PlanePoint {
        PlanePoint {
            coords: [Fq::zero(field), Fq::one(field), Fq::zero(field)],
        }
    }

    pub fn coords(&self) -> &[Fq; 3] {
        &self.coords
    }

    pub fn x(&self) -> &Fq {
        &self.coords[0]
    }

    pub fn y(&self) -> &Fq {
        &self.coords[1]
    }

    pub fn z(&self) -> &Fq {
        &self.coords[2]
    }

    pub fn field(&self) -> &FieldRef {
        self.coords[0].field()
    }

    pub fn is_infinity(&self) -> bool {
        self.coords[2].is_zero() && self.coords[0].is_zero()
    }

    /// Degree over `F_p` of the field generated by the coordinates.
    pub fn degree(&self) -> usize {
        self.coords
            .iter()
            .map(|c| c.algebraic_degree())
            .fold(1, lcm_usize)
    }

    pub fn frobenius(&self) -> PlanePoint {
        PlanePoint {
            coords: [
                self.coords[0].frobenius(),
                self.coords[1].frobenius(),
                self.coords[2].frobenius(),
            ],
        }
    }

    pub fn lift(&self, target: &FieldRef) -> Result<PlanePoint> {
        if self.field().same_as(target) {
            return Ok(self.clone());
        }
        Ok(PlanePoint {
            coords: [
                embed::lift(&self.coords[0], target)?,
                embed::lift(&self.coords[1], target)?,
                embed::lift(&self.coords[2], target)?,
            ],
        })
    }

    /// The same point over `sub`, or `None` if it is not defined there.
    pub fn restrict(&self, sub: &FieldRef) -> Result<Option<PlanePoint>> {
        let mut out = Vec::with_capacity(3);
        for c in &self.coords {
            match embed::restrict(c, sub)? {
                Some(r) => out.push(r),
                None => return Ok(None),
            }
        }
        let z = out.pop().unwrap();
        let y = out.pop().unwrap();
        let x = out.pop().unwrap();
        Ok(Some(PlanePoint { coords: [x, y, z] }))
    }
}

impl PartialOrd for PlanePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlanePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;

    #[test]
    fn normalization_is_canonical() {
        let f = PrimeField::new(7).unwrap().field();
        let e = |v| Fq::from_u64(&f, v);
        let p = PlanePoint::new(e(2), e(4), e(2)).unwrap();
        let q = PlanePoint::new(e(1), e(2), e(1)).unwrap();
        assert_eq!(p, q);
        let inf = PlanePoint::new(e(0), e(3), e(0)).unwrap();
        assert!(inf.is_infinity());
        assert_eq!(inf, PlanePoint::infinity(&f));
        assert!(PlanePoint::new(e(0), e(0), e(0)).is_err());
    }

    #[test]
    fn restrict_after_lift() {
        let base = PrimeField::new(11).unwrap();
        let f = base.field();
        let f2 = base.extension(2).unwrap();
        let p = PlanePoint::affine(Fq::from_u64(&f, 3), Fq::from_u64(&f, 5));
        let up = p.lift(&f2).unwrap();
        assert_eq!(up.degree(), 1);
        assert_eq!(up.restrict(&f).unwrap(), Some(p));
        let g = PlanePoint::affine(Fq::generator(&f2), Fq::one(&f2));
        assert_eq!(g.degree(), 2);
        assert_eq!(g.restrict(&f).unwrap(), None);
    }
}
