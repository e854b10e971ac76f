use crate::curve::form::monomial_index;
use crate::curve::{monomials, CurveContext, PlaneForm};
use crate::error::{Error, Result};
use crate::fields::Matrix;
use crate::pencil::{conic_monomial, ZPoint};

/// Number of unknowns `(dA, dB, dG, dH)`: three each for `A` and `B`, five
/// for `G` (its `xy` coefficient is pinned) and six for `H`.
pub const TANGENT_UNKNOWNS: usize = 17;

/// Linearization `dA G + A dG + dB H + B dH = 0` of the equations of `Z` at
/// `z`, one row per quartic monomial.
pub fn tangent_matrix(z: &ZPoint) -> Matrix {
    let f = z.field();
    let a = z.a.form();
    let b = z.b.form();
    let lin = [
        conic_monomial(0, 0),
        conic_monomial(1, 0),
        conic_monomial(0, 1),
    ];
    let mono = |m| PlaneForm::from_terms(f, 2, &[(m, 1)]);
    let mut columns: Vec<PlaneForm> = Vec::with_capacity(TANGENT_UNKNOWNS);
    columns.extend(lin.iter().map(|&m| mono(m).mul(&z.g)));
    columns.extend(lin.iter().map(|&m| mono(m).mul(&z.h)));
    let xy = conic_monomial(1, 1);
    columns.extend(
        monomials(2)
            .into_iter()
            .filter(|&m| m != xy)
            .map(|m| a.mul(&mono(m))),
    );
    columns.extend(monomials(2).into_iter().map(|m| b.mul(&mono(m))));
    let rows = monomials(4)
        .into_iter()
        .map(|m| {
            let i = monomial_index(m);
            columns.iter().map(|c| c.coeffs()[i].clone()).collect()
        })
        .collect();
    Matrix::from_rows(f, TANGENT_UNKNOWNS, rows)
}

/// Dimension of the Zariski tangent space of `Z` at `z`.
pub fn tangent_dimension(ctx: &CurveContext, z: &ZPoint) -> Result<usize> {
    if z.product() != *ctx.quartic() {
        return Err(Error::NotInZ("A G + B H differs from F".into()));
    }
    Ok(TANGENT_UNKNOWNS - tangent_matrix(z).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::random_reduced_divisor;
    use crate::pencil::zpoint_from_divisor;

    #[test]
    fn tangent_space_is_three_dimensional() {
        let c = CurveContext::reference(23).unwrap();
        for seed in 0..3 {
            let d = random_reduced_divisor(&c, seed).unwrap();
            let z = zpoint_from_divisor(&c, &d).unwrap();
            assert_eq!(tangent_matrix(&z).rank(), 14);
            assert_eq!(tangent_dimension(&c, &z).unwrap(), 3);
        }
    }
}
