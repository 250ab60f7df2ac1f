//! Second-order linear ODEs with rational coefficients.

mod spectrum;

pub use spectrum::{
    infinity_moments, pole_multiplicities, singularity_spectrum, ExponentPair, Location,
    SingularPoint, SingularitySpectrum,
};

use crate::exactfield::{rat, TowerScalar};
use crate::ratcalc::{CalcError, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OdeError {
    #[error("coefficient C vanishes identically")]
    ZeroCoefficient,
    #[error("weight f vanishes identically")]
    ZeroWeight,
    #[error("supplied poles do not factor the denominator of r")]
    BadFactorization,
    #[error("irregular singular point {location} of order {order}")]
    NonFuchsian { location: String, order: usize },
    #[error(transparent)]
    Calc(#[from] CalcError),
}

/// p₁′ = A p₁ + B w p₂, p₂′ = C w p₁ − A p₂ with w = 1 or w = √f.
#[derive(Clone, Debug)]
pub struct FirstOrderSystem {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub weight: Option<RatFunc>,
}

/// w″ + p w′ + q w = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderODE {
    pub p: RatFunc,
    pub q: RatFunc,
}

/// y″ = r y.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormODE {
    pub r: RatFunc,
}

/// Logarithmic derivative of p₂'s companion factor: C′/C, plus f′/(2f)
/// when a weight is present.
pub fn log_weight(sys: &FirstOrderSystem) -> Result<RatFunc, OdeError> {
    if sys.c.is_zero() {
        return Err(OdeError::ZeroCoefficient);
    }
    let mut l = &sys.c.derivative() / &sys.c;
    if let Some(f) = &sys.weight {
        if f.is_zero() {
            return Err(OdeError::ZeroWeight);
        }
        let half = RatFunc::from_rational(f.context(), rat(1, 2));
        l = &l + &(&half * &(&f.derivative() / f));
    }
    Ok(l)
}

/// Eliminates p₁ to get the second-order equation for p₂.
pub fn reduce_to_second_order(sys: &FirstOrderSystem) -> Result<SecondOrderODE, OdeError> {
    let l = log_weight(sys)?;
    let cb = &sys.c * &sys.b;
    let cbf = match &sys.weight {
        Some(f) => &cb * f,
        None => cb,
    };
    let inner = &(&(&(&l * &sys.a) + &(&sys.a * &sys.a)) + &cbf) - &sys.a.derivative();
    Ok(SecondOrderODE { p: -&l, q: -&inner })
}

/// r = −q + p′/2 + p²/4.
pub fn to_normal_form(ode: &SecondOrderODE) -> NormalFormODE {
    let ctx = ode.p.context();
    let half = RatFunc::from_rational(ctx, rat(1, 2));
    let quarter = RatFunc::from_rational(ctx, rat(1, 4));
    let r = &(&(-&ode.q) + &(&half * &ode.p.derivative())) + &(&quarter * &(&ode.p * &ode.p));
    NormalFormODE { r }
}

/// Checks that u = g·y maps solutions of y″ = r y to solutions of
/// u″ + p u′ + q u = 0, where h = g′/g.
///
/// Substituting gives g·[(h′ + h² + r + p h + q) y + (2h + p) y′]; both
/// brackets must vanish identically.
pub fn verify_gauge_transform(r: &NormalFormODE, ode: &SecondOrderODE, h: &RatFunc) -> bool {
    let two = RatFunc::from_rational(h.context(), rat(2, 1));
    let y_prime = &(&two * h) + &ode.p;
    let y_coef = &(&(&(&h.derivative() + &(h * h)) + &r.r) + &(&ode.p * h)) + &ode.q;
    y_prime.is_zero() && y_coef.is_zero()
}

/// v‴ − 4 r v′ − 2 r′ v; zero iff v solves the second symmetric power.
pub fn symmetric_power_residual(r: &NormalFormODE, v: &RatFunc) -> RatFunc {
    let ctx = v.context();
    let four = RatFunc::constant(TowerScalar::from_int(ctx, 4));
    let two = RatFunc::constant(TowerScalar::from_int(ctx, 2));
    let v1 = v.derivative();
    let v3 = v1.derivative().derivative();
    &(&v3 - &(&four * &(&r.r * &v1))) - &(&two * &(&r.r.derivative() * v))
}

/// ω′ + ω² − r, zero iff exp(∫ω) solves y″ = r y.
pub fn riccati_residual(r: &NormalFormODE, omega: &RatFunc) -> RatFunc {
    &(&omega.derivative() + &(omega * omega)) - &r.r
}
