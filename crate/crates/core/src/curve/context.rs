use crate::curve::form::{PlaneForm, Quartic};
use crate::curve::intersect::{norm_y, specialize_x};
use crate::curve::point::PlanePoint;
use crate::error::{Error, Result};
use crate::fields::factor;
use crate::fields::{field_of_degree, poly_factor, FieldRef, Fq, PrimeField, UniPoly};

/// Evidence that the affine part of the curve is nonsingular.
///
/// `candidates` is `gcd(Res_y(f, f_x), Res_y(f, f_y))`; every singular affine
/// point has an `x`-coordinate among its roots. Each irreducible factor was
/// checked by a gcd in `y` over its residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub candidates: UniPoly,
    pub factors_checked: usize,
}

/// A validated smooth plane quartic with hyper-flex at `(0:1:0)` and
/// tangent `z = 0` there.
#[derive(Clone, Debug)]
pub struct CurveContext {
    quartic: Quartic,
    prime: PrimeField,
    field: FieldRef,
    gradient: [PlaneForm; 3],
    affine: Vec<UniPoly>,
    certificate: SmoothnessCertificate,
}

impl CurveContext {
    /// Checks the normalization at infinity and smoothness.
    pub fn validate(raw: Quartic, prime: PrimeField) -> Result<CurveContext> {
        let field = prime.field();
        if raw.degree() != 4 {
            return Err(Error::Parse("curve must be a quartic".into()));
        }
        let raw = raw.lift(&field)?;
        let at_inf = raw.at_infinity_line();
        if !at_inf[4].is_zero() && at_inf[0].is_zero() {
            return Err(Error::NotOnCurveAtInfinity);
        }
        if at_inf[0].is_zero() || at_inf[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NoHyperflexNormalization);
        }
        let gradient = [raw.partial(0), raw.partial(1), raw.partial(2)];
        let inf = PlanePoint::infinity(&field);
        let g_inf: Vec<Fq> = gradient
            .iter()
            .map(|g| g.eval_coords(inf.coords()))
            .collect();
        if g_inf[2].is_zero() {
            if g_inf[0].is_zero() && g_inf[1].is_zero() {
                return Err(Error::SingularCurve("singular at (0:1:0)".into()));
            }
            return Err(Error::WrongTangent);
        }
        if !g_inf[0].is_zero() || !g_inf[1].is_zero() {
            return Err(Error::WrongTangent);
        }
        let affine = raw.affine_in_y();
        let certificate = smoothness_certificate(&affine, &gradient)?;
        Ok(CurveContext {
            quartic: raw,
            prime,
            field,
            gradient,
            affine,
            certificate,
        })
    }

    /// `x^4 + y^3 z + z^4` over `F_p`.
    pub fn reference(p: u64) -> Result<CurveContext> {
        let prime = PrimeField::new(p)?;
        let f = prime.field();
        let q = PlaneForm::from_terms(&f, 4, &[([4, 0, 0], 1), ([0, 3, 1], 1), ([0, 0, 4], 1)]);
        CurveContext::validate(q, prime)
    }

    pub fn quartic(&self) -> &Quartic {
        &self.quartic
    }

    pub fn prime(&self) -> PrimeField {
        self.prime
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    /// `F_p` as a field reference.
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn gradient(&self) -> &[PlaneForm; 3] {
        &self.gradient
    }

    /// `F(x, y, 1)` as coefficients of `y^0..y^3` in `F_p[x]`.
    pub fn affine(&self) -> &[UniPoly] {
        &self.affine
    }

    pub fn certificate(&self) -> &SmoothnessCertificate {
        &self.certificate
    }

    pub fn evaluate(&self, form: &PlaneForm, p: &PlanePoint) -> Result<Fq> {
        form.evaluate(p)
    }

    pub fn contains(&self, p: &PlanePoint) -> Result<bool> {
        Ok(self.quartic.evaluate(p)?.is_zero())
    }

    /// The tangent line `F_x(P) x + F_y(P) y + F_z(P) z`, over the field of `P`.
    pub fn tangent_line(&self, p: &PlanePoint) -> Result<PlaneForm> {
        if !self.contains(p)? {
            return Err(Error::NotOnCurve);
        }
        let g: Vec<Fq> = self
            .gradient
            .iter()
            .map(|d| d.evaluate(p))
            .collect::<Result<_>>()?;
        if g.iter().all(|c| c.is_zero()) {
            return Err(Error::SingularPoint);
        }
        let [a, b, c]: [Fq; 3] = g.try_into().unwrap();
        Ok(PlaneForm::line(a, b, c))
    }

    /// Rational `y` with `F(x0, y, 1) = 0`, sorted, each listed once.
    pub fn ys_over(&self, x0: &Fq) -> Result<Vec<Fq>> {
        let g = specialize_x(&self.affine, x0)?;
        Ok(factor::roots(&g)?.into_iter().map(|(r, _)| r).collect())
    }
}

fn smoothness_certificate(
    affine: &[UniPoly],
    gradient: &[PlaneForm; 3],
) -> Result<SmoothnessCertificate> {
    // F_z is implied by Euler's relation once F = F_x = F_y = 0 (p does not divide 4).
    let fx = gradient[0].affine_in_y();
    let fy = gradient[1].affine_in_y();
    let field = affine[0].field().clone();
    let nx = if fx.is_empty() {
        UniPoly::zero(&field)
    } else {
        norm_y(affine, &fx)?
    };
    let ny = if fy.is_empty() {
        UniPoly::zero(&field)
    } else {
        norm_y(affine, &fy)?
    };
    let candidates = nx.gcd(&ny);
    if candidates.is_zero() {
        return Err(Error::SingularCurve(
            "partial derivatives share a component with F".into(),
        ));
    }
    let mut checked = 0;
    if candidates.degree() != Some(0) {
        for fac in poly_factor(&candidates)? {
            let e = fac.poly.degree().unwrap();
            let k = field_of_degree(field.p(), e)?;
            let x0 = factor::roots(&fac.poly.lift(&k)?)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("irreducible factor without root".into()))?
                .0;
            let h = specialize_x(affine, &x0)?
                .gcd(&specialize_x(&fx, &x0)?)
                .gcd(&specialize_x(&fy, &x0)?);
            if h.degree().is_some_and(|d| d > 0) {
                return Err(Error::SingularCurve(format!(
                    "singular point with x = {x0}"
                )));
            }
            checked += 1;
        }
    }
    Ok(SmoothnessCertificate {
        candidates,
        factors_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(f: &FieldRef, terms: &[([u32; 3], i64)]) -> Quartic {
        PlaneForm::from_terms(f, 4, terms)
    }

    #[test]
    fn reference_curve_is_valid() {
        let ctx = CurveContext::reference(31).unwrap();
        let inf = PlanePoint::infinity(ctx.field());
        assert!(ctx.contains(&inf).unwrap());
        let z = PlaneForm::from_terms(ctx.field(), 1, &[([0, 0, 1], 1)]);
        assert_eq!(ctx.tangent_line(&inf).unwrap(), z);
    }

    #[test]
    fn normalization_failures() {
        let prime = PrimeField::new(31).unwrap();
        let f = prime.field();
        let fermat = q(&f, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert_eq!(
            CurveContext::validate(fermat, prime).unwrap_err(),
            Error::NoHyperflexNormalization
        );
        let off = q(&f, &[([0, 4, 0], 1), ([0, 0, 4], 1), ([2, 1, 1], 1)]);
        assert_eq!(
            CurveContext::validate(off, prime).unwrap_err(),
            Error::NotOnCurveAtInfinity
        );
        let x4 = q(&f, &[([4, 0, 0], 1)]);
        assert!(matches!(
            CurveContext::validate(x4, prime).unwrap_err(),
            Error::SingularCurve(_)
        ));
    }

    #[test]
    fn affine_node_is_detected() {
        // Every affine term has order >= 2 at the origin.
        let prime = PrimeField::new(31).unwrap();
        let f = prime.field();
        let nodal = q(
            &f,
            &[
                ([4, 0, 0], 1),
                ([0, 3, 1], 1),
                ([2, 0, 2], 1),
                ([0, 2, 2], -1),
            ],
        );
        assert!(matches!(
            CurveContext::validate(nodal, prime).unwrap_err(),
            Error::SingularCurve(_)
        ));
    }

    #[test]
    fn singular_point_off_the_prime_field() {
        // y^3 z + (x^2 - 3 z^2)^2 is singular at (r, 0, 1) with r^2 = 3,
        // and 3 is a non-residue mod 7.
        let prime = PrimeField::new(7).unwrap();
        let f = prime.field();
        let c = q(
            &f,
            &[
                ([0, 3, 1], 1),
                ([4, 0, 0], 1),
                ([2, 0, 2], -6),
                ([0, 0, 4], 9),
            ],
        );
        assert!(matches!(
            CurveContext::validate(c, prime).unwrap_err(),
            Error::SingularCurve(_)
        ));
    }
}
