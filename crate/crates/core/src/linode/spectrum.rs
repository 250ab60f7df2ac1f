use std::fmt;
use std::sync::Arc;

use crate::exactfield::{int, rat, rational_sqrt, Rational, TowerContext, TowerScalar};
use crate::ratcalc::{partial_fractions, root_product, CalcError, PartialFraction, RatFunc};

use super::{NormalFormODE, OdeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Finite(TowerScalar),
    Infinity,
}

impl Location {
    pub fn finite(&self) -> Option<&TowerScalar> {
        match self {
            Location::Finite(c) => Some(c),
            Location::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Location::Infinity)
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Finite(c) => write!(f, "{c}"),
            Location::Infinity => f.write_str("infinity"),
        }
    }
}

/// Roots of ρ² − sum·ρ + product = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentPair {
    pub sum: Rational,
    pub product: TowerScalar,
    /// (larger, smaller) when Δ is rational.
    pub rational: Option<(Rational, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub location: Location,
    pub order: usize,
    pub alpha: TowerScalar,
    pub delta_squared: TowerScalar,
    pub delta_rational: Option<Rational>,
    pub exponents: ExponentPair,
}

impl SingularPoint {
    /// Builds a point from its order and α. At finite points the indicial
    /// equation is ρ(ρ − 1) = α; at infinity it is ρ(ρ + 1) = α, with
    /// y ~ z^(−ρ).
    pub fn new(location: Location, order: usize, alpha: TowerScalar) -> Self {
        let ctx = alpha.context().clone();
        let delta_squared = &TowerScalar::one(&ctx) + &alpha.scale_rational(&int(4));
        let delta_rational = delta_squared.is_real_rational().and_then(|d2| rational_sqrt(&d2));
        let sum = if location.is_infinity() { int(-1) } else { int(1) };
        let rational = delta_rational.as_ref().map(|d| {
            let half = rat(1, 2);
            ((&sum + d) * &half, (&sum - d) * &half)
        });
        let exponents = ExponentPair { sum, product: -&alpha, rational };
        if let Some((r1, r2)) = &exponents.rational {
            assert_eq!(r1 + r2, exponents.sum, "exponent trace");
            assert_eq!(TowerScalar::from_rational(&ctx, r1 * r2), exponents.product, "exponent norm");
        }
        Self { location, order, alpha, delta_squared, delta_rational, exponents }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularitySpectrum {
    /// Finite points in the supplied order, then infinity.
    pub points: Vec<SingularPoint>,
}

impl SingularitySpectrum {
    pub fn from_points(points: Vec<SingularPoint>) -> Self {
        Self { points }
    }

    pub fn finite(&self) -> impl Iterator<Item = &SingularPoint> {
        self.points.iter().filter(|p| !p.location.is_infinity())
    }

    pub fn infinity(&self) -> Option<&SingularPoint> {
        self.points.iter().find(|p| p.location.is_infinity())
    }

    pub fn context(&self) -> &Arc<TowerContext> {
        self.points[0].alpha.context()
    }

    /// Table rows: location, order, α, exponents, Δ.
    pub fn render_table(&self) -> Vec<[String; 5]> {
        self.points
            .iter()
            .map(|p| {
                let exps = match &p.exponents.rational {
                    Some((a, b)) => format!("{}/{}, {}/{}", a.numer(), a.denom(), b.numer(), b.denom()),
                    None => format!("({} ± sqrt(delta^2))/2", if p.location.is_infinity() { "-1" } else { "1" }),
                };
                let delta = match &p.delta_rational {
                    Some(d) => format!("{}/{}", d.numer(), d.denom()),
                    None => format!("sqrt({})", p.delta_squared),
                };
                [p.location.to_string(), p.order.to_string(), p.alpha.to_string(), exps, delta]
            })
            .collect()
    }
}

/// Multiplicity of each candidate as a root of den(r); zero-multiplicity
/// candidates are dropped.
pub fn pole_multiplicities(r: &RatFunc, candidates: &[TowerScalar]) -> Result<Vec<(TowerScalar, usize)>, OdeError> {
    let mut out = Vec::new();
    for c in candidates {
        let m = r.den().root_multiplicity(c)?;
        if m > 0 {
            out.push((c.clone(), m));
        }
    }
    Ok(out)
}

/// Order, α, Δ and exponents at every supplied pole and at infinity.
pub fn singularity_spectrum(r: &NormalFormODE, poles: &[(TowerScalar, usize)]) -> Result<SingularitySpectrum, OdeError> {
    let ctx = r.r.context().clone();
    let poles: Vec<_> = poles.iter().filter(|(_, m)| *m > 0).cloned().collect();
    if root_product(&ctx, &poles) != *r.r.den() {
        return Err(OdeError::BadFactorization);
    }
    if let Some((c, m)) = poles.iter().find(|(_, m)| *m > 2) {
        return Err(OdeError::NonFuchsian { location: c.to_string(), order: *m });
    }
    let pf = partial_fractions(&r.r, &poles).map_err(|e| match e {
        CalcError::BadFactorization => OdeError::BadFactorization,
        other => OdeError::Calc(other),
    })?;
    let mut points: Vec<SingularPoint> = poles
        .iter()
        .map(|(c, m)| {
            let alpha = if *m == 2 { pf.coefficient(c, 2) } else { TowerScalar::zero(&ctx) };
            SingularPoint::new(Location::Finite(c.clone()), *m, alpha)
        })
        .collect();
    let (ord_inf, alpha_inf) = infinity_data(&r.r);
    if ord_inf > 2 {
        return Err(OdeError::NonFuchsian { location: "infinity".into(), order: ord_inf });
    }
    points.push(SingularPoint::new(Location::Infinity, ord_inf, alpha_inf));
    Ok(SingularitySpectrum { points })
}

/// ord∞ = max(0, 4 + deg s − deg t) and α∞ = lim z² r.
fn infinity_data(r: &RatFunc) -> (usize, TowerScalar) {
    let ctx = r.context();
    let Some(balance) = r.degree_balance() else {
        return (0, TowerScalar::zero(ctx));
    };
    let ord = (4 + balance).max(0) as usize;
    let alpha = if balance == -2 {
        let lead = r.num().leading().unwrap();
        lead.clone()
    } else {
        TowerScalar::zero(ctx)
    };
    (ord, alpha)
}

/// Coefficients m_n of z^−(n+1), n < count, in the expansion at infinity of
/// the principal parts: m_n = Σ_c (β_c cⁿ + n α_c cⁿ⁻¹).
pub fn infinity_moments(pf: &PartialFraction, count: usize) -> Vec<TowerScalar> {
    let ctx = pf.context();
    (0..count)
        .map(|n| {
            pf.terms.iter().fold(TowerScalar::zero(ctx), |acc, t| {
                // 1/(z−c)^k = Σ_n C(n, k−1) c^(n−k+1) z^−(n+1)
                let k = t.order;
                if n + 1 < k {
                    return acc;
                }
                let binom = binomial(n, k - 1);
                let c_pow = t.pole.pow((n + 1 - k) as u32);
                &acc + &(&t.coefficient * &c_pow).scale_rational(&binom)
            })
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = int(1);
    for j in 0..k {
        acc = acc * int((n - j) as i64) / int((j + 1) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_context, GaussRational};

    #[test]
    fn mu_one_newton_spectrum() {
        let c = make_context(GaussRational::imag(rat(1, 2)), GaussRational::imag(rat(-1, 2))).unwrap();
        let z0 = TowerScalar::from_rational(&c, rat(1, 4));
        let r = NormalFormODE {
            r: RatFunc::from_pole_terms(&c, &[(z0.clone(), 2, TowerScalar::from_rational(&c, rat(3, 4)))], None),
        };
        let spec = singularity_spectrum(&r, &[(z0, 2)]).unwrap();
        assert_eq!(spec.points.len(), 2);
        assert_eq!(spec.points[0].delta_rational, Some(int(2)));
        assert_eq!(spec.points[0].exponents.rational, Some((rat(3, 2), rat(-1, 2))));
        let inf = spec.infinity().unwrap();
        assert_eq!(inf.order, 2);
        assert_eq!(inf.exponents.rational, Some((rat(1, 2), rat(-3, 2))));
    }

    #[test]
    fn rejects_irregular_points() {
        let c = make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap();
        let r = NormalFormODE { r: RatFunc::one(&c) };
        assert!(matches!(singularity_spectrum(&r, &[]), Err(OdeError::NonFuchsian { order: 4, .. })));
        let zero = TowerScalar::zero(&c);
        let r = NormalFormODE { r: RatFunc::from_pole_terms(&c, &[(zero.clone(), 3, TowerScalar::one(&c))], None) };
        assert!(matches!(singularity_spectrum(&r, &[(zero.clone(), 3)]), Err(OdeError::NonFuchsian { order: 3, .. })));
        assert_eq!(singularity_spectrum(&r, &[(zero, 2)]), Err(OdeError::BadFactorization));
    }

    #[test]
    fn moments_match_series() {
        let c = make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap();
        let k = TowerScalar::kappa(&c);
        let f = RatFunc::from_pole_terms(
            &c,
            &[(k.clone(), 2, TowerScalar::from_int(&c, 3)), (k.clone(), 1, TowerScalar::from_int(&c, 5))],
            None,
        );
        let pf = partial_fractions(&f, &[(k.clone(), 2)]).unwrap();
        let m = infinity_moments(&pf, 3);
        // 5/(z−κ) + 3/(z−κ)² = 5/z + (5κ + 3)/z² + (5κ² + 6κ)/z³ + …
        assert_eq!(m[0], TowerScalar::from_int(&c, 5));
        assert_eq!(m[1], &k.scale_rational(&int(5)) + &TowerScalar::from_int(&c, 3));
        assert_eq!(m[2], &TowerScalar::from_int(&c, 10) + &k.scale_rational(&int(6)));
    }
}
