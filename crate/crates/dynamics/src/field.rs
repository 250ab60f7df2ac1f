use twobody_core::exactfield::{to_f64, Rational};
use twobody_core::models::{HamiltonianKind, ReducedHamiltonian, Space};

use crate::poisson::PoissonStructure;
use crate::state::{casimir, PhaseState};
use crate::DynError;

/// |sin θ| below this counts as a collision or antipodal configuration.
pub(crate) const SINGULAR_SIN: f64 = 1e-12;

fn check(h: &ReducedHamiltonian, x: &[f64]) -> Result<(f64, f64), DynError> {
    if x.len() != h.dimension() {
        return Err(DynError::Domain(format!("expected {} coordinates, got {}", h.dimension(), x.len())));
    }
    let theta = x[0];
    let (s, c) = h.trig(theta);
    let bad = !theta.is_finite() || s.abs() < SINGULAR_SIN || (h.space == Space::Hyperbolic && theta <= 0.0);
    if bad {
        return Err(DynError::Domain(format!("theta = {theta}")));
    }
    Ok((s, c))
}

/// Closed-form ∂h/∂x in the coordinate layout of `h.kind`.
pub fn gradient(h: &ReducedHamiltonian, x: &[f64]) -> Result<Vec<f64>, DynError> {
    let (s, c) = check(h, x)?;
    let cot = c / s;
    let s2 = s * s;
    let mu = to_f64(&h.mu);
    let (_, dv) = h.potential_with_derivative(x[0]);
    let pt = x[1];
    Ok(match h.kind {
        HamiltonianKind::FullSphere | HamiltonianKind::FullHyperbolic => {
            let (p0, p1, p2) = (x[2], x[3], x[4]);
            vec![
                -p2 * p2 * c / (mu * s2 * s) - p1 * p2 / s2 + dv,
                pt / mu + p0,
                pt,
                p2 * cot,
                p2 / (mu * s2) + 2.0 * h.sign() * p2 + p1 * cot,
            ]
        }
        HamiltonianKind::FreePartS1 => {
            let p2 = x[4];
            vec![-p2 * p2 * c / (mu * s2 * s) + dv, pt / mu, 0.0, 0.0, p2 / (mu * s2)]
        }
        HamiltonianKind::FreePartS2 => {
            let (p0, p1, p2) = (x[2], x[3], x[4]);
            vec![-p1 * p2 / s2, p0, pt, p2 * cot, 2.0 * h.sign() * p2 + p1 * cot]
        }
        HamiltonianKind::GammaRestriction => vec![dv, pt / mu + to_f64(&h.p)],
        HamiltonianKind::RestrictedProblem => {
            let (psi, pp) = (x[2], x[3]);
            let m2 = to_f64(&h.m2);
            let om = to_f64(&h.omega);
            let (sp, cp) = psi.sin_cos();
            vec![
                -pp * pp * c / (m2 * s2 * s) + om * pp * sp / s2 + dv,
                pt / m2 + om * cp,
                -om * (pt * sp + pp * cp * cot),
                pp / (m2 * s2) - om * sp * cot,
            ]
        }
    })
}

/// Central differences of `h.eval`, for cross-checking [`gradient`].
pub fn central_difference_gradient(h: &ReducedHamiltonian, x: &[f64], step: f64) -> Result<Vec<f64>, DynError> {
    let mut out = Vec::with_capacity(x.len());
    let mut y = x.to_vec();
    for k in 0..x.len() {
        let d = step * x[k].abs().max(1.0);
        y[k] = x[k] + d;
        let hp = h.eval(&y)?;
        y[k] = x[k] - d;
        let hm = h.eval(&y)?;
        y[k] = x[k];
        out.push((hp - hm) / (2.0 * d));
    }
    Ok(out)
}

/// ẋ for any Hamiltonian kind: Lie–Poisson for the five-dimensional kinds,
/// canonical for Γ and the restricted problem.
pub fn vector_field_raw(h: &ReducedHamiltonian, x: &[f64]) -> Result<Vec<f64>, DynError> {
    let g = gradient(h, x)?;
    Ok(match h.dimension() {
        5 => {
            let pi = PoissonStructure::new(h.space).matrix(x);
            (0..5).map(|a| (0..5).map(|b| pi[a][b] * g[b]).sum()).collect()
        }
        2 => vec![g[1], -g[0]],
        _ => vec![g[1], -g[0], g[3], -g[2]],
    })
}

pub fn vector_field(h: &ReducedHamiltonian, x: &PhaseState) -> Result<PhaseState, DynError> {
    let d = vector_field_raw(h, &x.to_vec())?;
    Ok(PhaseState::from_slice(x.space, &d))
}

/// Functions monitored along trajectories.
#[derive(Clone, Debug, PartialEq)]
pub enum Invariant {
    Casimir,
    /// p₁ sin θ + p₂ cos θ, or p₁ sinh θ + p₂ cosh θ, at μ = 1.
    MassRatioOne,
    /// p₂ when the first body is fixed.
    AngularMomentum,
    /// A summand of the free Hamiltonian.
    Part(HamiltonianKind, Rational),
    /// p_θ² + p_ψ²/sin²θ in the free restricted problem.
    RestrictedKinetic,
    /// p_θ cos ψ − p_ψ sin ψ cot θ in the free restricted problem.
    RestrictedDrift,
}

impl Invariant {
    pub fn name(&self) -> String {
        match self {
            Invariant::Casimir => "casimir".into(),
            Invariant::MassRatioOne => "mu1_integral".into(),
            Invariant::AngularMomentum => "p2".into(),
            Invariant::Part(HamiltonianKind::FreePartS1, _) => "h_1".into(),
            Invariant::Part(_, _) => "h_2".into(),
            Invariant::RestrictedKinetic => "p_theta^2+p_psi^2/sin^2(theta)".into(),
            Invariant::RestrictedDrift => "p_theta*cos(psi)-p_psi*sin(psi)*cot(theta)".into(),
        }
    }

    pub fn eval(&self, h: &ReducedHamiltonian, x: &[f64]) -> Result<f64, DynError> {
        let (s, c) = check(h, x)?;
        Ok(match self {
            Invariant::Casimir => casimir(h.space, x),
            Invariant::MassRatioOne => x[3] * s + x[4] * c,
            Invariant::AngularMomentum => x[4],
            Invariant::Part(kind, mu) => {
                let mut part = ReducedHamiltonian::free_part(*kind, mu.clone());
                part.space = h.space;
                part.eval(x)?
            }
            Invariant::RestrictedKinetic => x[1] * x[1] + x[3] * x[3] / (s * s),
            Invariant::RestrictedDrift => {
                let (sp, cp) = x[2].sin_cos();
                x[1] * cp - x[3] * sp * c / s
            }
        })
    }
}

/// Extra first integrals of the trivially integrable cases.
pub fn extra_integrals(h: &ReducedHamiltonian) -> Vec<Invariant> {
    let mut out = Vec::new();
    match h.kind {
        HamiltonianKind::FullSphere | HamiltonianKind::FullHyperbolic => {
            if h.potential.is_none() {
                out.push(Invariant::Part(HamiltonianKind::FreePartS1, h.mu.clone()));
                out.push(Invariant::Part(HamiltonianKind::FreePartS2, h.mu.clone()));
            }
            if h.mu == Rational::from_integer(1.into()) {
                out.push(Invariant::MassRatioOne);
            }
        }
        HamiltonianKind::FreePartS1 => out.push(Invariant::AngularMomentum),
        HamiltonianKind::RestrictedProblem if h.potential.is_none() => {
            out.push(Invariant::RestrictedKinetic);
            out.push(Invariant::RestrictedDrift);
        }
        _ => {}
    }
    out
}
