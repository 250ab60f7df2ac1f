//! The μ = 1 degeneration, where the normal form has elementary solutions.

use crate::exactfield::{int, rat, GaussRational, TowerScalar};
use crate::ratcalc::{Poly, RatFunc};

use super::{ModelError, ModelParams, Potential};

/// The simplified r(z) for μ = 1.
pub fn mu1_r(m: &ModelParams) -> Result<RatFunc, ModelError> {
    if !m.is_mu_one() {
        return Err(ModelError::NotMu1);
    }
    let ctx = m.context();
    let zz0 = Poly::linear_root(&m.z0_scalar());
    let three_quarters = TowerScalar::from_rational(ctx, rat(3, 4));
    match m.potential {
        Potential::Newton => Ok(RatFunc::new(Poly::constant(three_quarters), &zz0 * &zz0)?),
        Potential::Oscillator => {
            let z0 = &m.z0;
            let l2 = &m.lambda_sq;
            let z0sq = z0 * z0;
            let num = Poly::from_gauss(
                ctx,
                &[
                    l2 * &(l2 - &z0sq.scale(&int(2))),
                    (l2 * z0).scale(&int(2)),
                    &z0sq - &l2.scale(&int(2)),
                ],
            )
            .scale(&three_quarters);
            let quad = Poly::from_gauss(ctx, &[-l2.clone(), GaussRational::zero(), GaussRational::one()]);
            Ok(RatFunc::new(num, &(&zz0 * &zz0) * &(&quad * &quad))?)
        }
    }
}

/// Logarithmic derivatives of the two independent solutions at μ = 1:
/// (z − z₀)^{3/2}, (z − z₀)^{−1/2} for Newton, and
/// (z² − λ²)^{3/4}(z − z₀)^{−1/2}, (z² − λ²)^{1/4}(z₀z − λ²)(z − z₀)^{−1/2}
/// for the oscillator.
pub fn mu1_solutions(m: &ModelParams) -> Result<(RatFunc, RatFunc), ModelError> {
    if !m.is_mu_one() {
        return Err(ModelError::NotMu1);
    }
    let ctx = m.context();
    let q = |a: i64, b: i64| TowerScalar::from_rational(ctx, rat(a, b));
    let z0 = m.z0_scalar();
    match m.potential {
        Potential::Newton => Ok((
            RatFunc::from_pole_terms(ctx, &[(z0.clone(), 1, q(3, 2))], None),
            RatFunc::from_pole_terms(ctx, &[(z0, 1, q(-1, 2))], None),
        )),
        Potential::Oscillator => {
            let z = Poly::z(ctx);
            let quad = Poly::from_gauss(ctx, &[-m.lambda_sq.clone(), GaussRational::zero(), GaussRational::one()]);
            let z_over_quad = RatFunc::new(z, quad)?;
            let half_pole = RatFunc::from_pole_terms(ctx, &[(z0.clone(), 1, q(-1, 2))], None);
            let w1 = &(&RatFunc::constant(q(3, 2)) * &z_over_quad) + &half_pole;
            let lin = Poly::new(ctx, vec![-&TowerScalar::from_gauss(ctx, m.lambda_sq.clone()), z0.clone()]);
            let w2 = &(&(&RatFunc::constant(q(1, 2)) * &z_over_quad) + &RatFunc::new(Poly::constant(z0), lin)?)
                + &half_pole;
            Ok((w1, w2))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linode::{riccati_residual, NormalFormODE};
    use crate::models::{closed_form_r, derive_params, pipeline_r, Space};

    #[test]
    fn mu1_forms_agree_with_pipeline_and_tables() {
        for space in [Space::Sphere, Space::Hyperbolic] {
            for (pot, strength, eps) in [(Potential::Newton, int(2), int(-3)), (Potential::Oscillator, int(1), int(-1))] {
                let m = derive_params(space, pot, strength, int(1), rat(3, 2), eps).unwrap();
                let simple = mu1_r(&m).unwrap();
                assert_eq!(pipeline_r(&m).unwrap().r, simple);
                assert_eq!(closed_form_r(&m).unwrap().to_ratfunc(), simple);
                let r = NormalFormODE { r: simple };
                let (w1, w2) = mu1_solutions(&m).unwrap();
                assert!(riccati_residual(&r, &w1).is_zero());
                assert!(riccati_residual(&r, &w2).is_zero());
                assert_ne!(w1, w2);
            }
        }
    }

    #[test]
    fn not_mu1() {
        let m = derive_params(Space::Sphere, Potential::Newton, int(2), rat(1, 2), int(1), int(0)).unwrap();
        assert_eq!(mu1_solutions(&m).unwrap_err(), ModelError::NotMu1);
        assert_eq!(mu1_r(&m).unwrap_err(), ModelError::NotMu1);
    }
}
