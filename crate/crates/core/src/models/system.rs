//! The linear system along Γ in the variable z and its normal form.

use crate::exactfield::{int, GaussRational, Rational, TowerScalar};
use crate::linode::{
    pole_multiplicities, reduce_to_second_order, to_normal_form, FirstOrderSystem, NormalFormODE,
};
use crate::ratcalc::{Poly, RatFunc};

use super::{ModelError, ModelParams, Potential, Space};

fn real_poly(m: &ModelParams, coeffs: &[Rational]) -> Poly {
    Poly::from_rationals(m.context(), coeffs)
}

/// The Γ-quadratic f(z): cot θ or coth θ for Newton, tan²θ or tanh²θ for
/// the oscillator.
pub(crate) fn gamma_f(m: &ModelParams) -> Poly {
    match m.potential {
        Potential::Newton => real_poly(m, &[-m.eps.clone(), int(0), &m.strength / (int(2) * &m.mu)]),
        Potential::Oscillator => real_poly(m, &[int(2) * &m.eps, int(0), -(&m.strength / &m.mu)]),
    }
}

/// Common denominator D of A, B and C.
fn system_denominator(m: &ModelParams, f: &Poly) -> Poly {
    let one = Poly::one(m.context());
    match (m.space, m.potential) {
        (Space::Sphere, Potential::Newton) => &(f * f) + &one,
        (Space::Hyperbolic, Potential::Newton) => &(f * f) - &one,
        (Space::Sphere, Potential::Oscillator) => f * &(f + &one),
        (Space::Hyperbolic, Potential::Oscillator) => f * &(&one - f),
    }
}

/// A, B, C (and the weight f for the oscillator) of
/// p₁′ = A p₁ + B√w p₂, p₂′ = C√w p₁ − A p₂.
pub fn build_system(m: &ModelParams) -> Result<FirstOrderSystem, ModelError> {
    let ctx = m.context();
    let f = gamma_f(m);
    let d = system_denominator(m, &f);
    let s = &m.strength;
    let p = RatFunc::from_rational(ctx, m.p.clone());
    let lin_b = real_poly(m, &[(int(2) - &m.mu) * &m.p, s.clone()]);
    let lin_c = real_poly(m, &[-(&m.mu * &m.p), s.clone()]);
    let b_frac = RatFunc::new(lin_b, d.clone())?;
    let c = RatFunc::new(lin_c, d.clone())?;
    let plus = m.space == Space::Hyperbolic;
    let (a, b_head, weight) = match m.potential {
        Potential::Newton => (
            &p * &RatFunc::new(f.clone(), d)?,
            RatFunc::from_rational(ctx, &m.p / &m.mu),
            None,
        ),
        Potential::Oscillator => (
            &p * &RatFunc::new(Poly::one(ctx), d)?,
            RatFunc::new(real_poly(m, &[&m.p / &m.mu]), &f * &f)?,
            Some(RatFunc::from_poly(f)),
        ),
    };
    let b = if plus { &b_head + &b_frac } else { &b_head - &b_frac };
    Ok(FirstOrderSystem { a, b, c, weight })
}

/// r(z) computed from the system by elimination and the normalizing gauge.
pub fn pipeline_r(m: &ModelParams) -> Result<NormalFormODE, ModelError> {
    let sys = build_system(m)?;
    let ode = reduce_to_second_order(&sys)?;
    Ok(to_normal_form(&ode))
}

/// z₀, κ, −κ, λ, −λ in table order.
pub fn candidate_poles(m: &ModelParams) -> Vec<TowerScalar> {
    let k = m.kappa();
    let l = m.lambda();
    vec![m.z0_scalar(), k.clone(), -&k, l.clone(), -&l]
}

/// Candidates that are actual poles of r, with multiplicities.
pub fn singular_poles(m: &ModelParams, r: &NormalFormODE) -> Result<Vec<(TowerScalar, usize)>, ModelError> {
    Ok(pole_multiplicities(&r.r, &candidate_poles(m))?)
}

/// The denominator D of the system and its factorization
/// c·(z² − κ²)(z² − λ²) with c = ±4/(κ² − λ²)² (Newton) or
/// ±1/(κ² − λ²)² (oscillator).
pub fn gamma_denominator_identity(m: &ModelParams) -> (Poly, Poly) {
    let ctx = m.context();
    let f = gamma_f(m);
    let lhs = system_denominator(m, &f);
    let dd = &m.kappa_sq - &m.lambda_sq;
    let inv_dd2 = (&dd * &dd).inv().expect("kappa^2 != lambda^2");
    let scale = match (m.space, m.potential) {
        (Space::Sphere, Potential::Newton) => inv_dd2.scale(&int(-4)),
        (Space::Hyperbolic, Potential::Newton) => inv_dd2.scale(&int(4)),
        (Space::Sphere, Potential::Oscillator) => inv_dd2,
        (Space::Hyperbolic, Potential::Oscillator) => -inv_dd2,
    };
    let quad = |c2: &GaussRational| Poly::from_gauss(ctx, &[-c2.clone(), GaussRational::zero(), GaussRational::one()]);
    let rhs = (&quad(&m.kappa_sq) * &quad(&m.lambda_sq)).scale(&TowerScalar::from_gauss(ctx, scale));
    (lhs, rhs)
}
