use twobody_core::exactfield::to_f64;
use twobody_core::models::{HamiltonianKind, ReducedHamiltonian, Space};

use crate::state::PhaseState;
use crate::DynError;

/// Canonical cylinder coordinates (φ, p_φ) on the orbit, together with the
/// (θ, p_θ) pair and the Casimir value that fixes the orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylinderChart {
    pub theta: f64,
    pub p_theta: f64,
    pub phi: f64,
    pub p_phi: f64,
    pub casimir: f64,
    pub space: Space,
}

/// p₀ = ρ sin φ, p₁ = ρ cos φ, p₂ = p_φ with ρ = √(γ² − p_φ²) on the
/// sphere and ρ = √(γ + p_φ²) on the hyperbolic plane.
pub fn to_cylinder(x: &PhaseState) -> Result<CylinderChart, DynError> {
    let rho_sq = x.p0 * x.p0 + x.p1 * x.p1;
    if rho_sq == 0.0 {
        return Err(DynError::ChartDomain(format!("p0 = p1 = 0 (p2 = {})", x.p2)));
    }
    Ok(CylinderChart {
        theta: x.theta,
        p_theta: x.p_theta,
        phi: x.p0.atan2(x.p1),
        p_phi: x.p2,
        casimir: x.casimir(),
        space: x.space,
    })
}

pub fn from_cylinder(c: &CylinderChart) -> Result<PhaseState, DynError> {
    let rho_sq = match c.space {
        Space::Sphere => c.casimir - c.p_phi * c.p_phi,
        Space::Hyperbolic => c.casimir + c.p_phi * c.p_phi,
    };
    if rho_sq <= 0.0 {
        return Err(DynError::ChartDomain(format!("p_phi = {} outside the chart", c.p_phi)));
    }
    let rho = rho_sq.sqrt();
    let (s, co) = c.phi.sin_cos();
    Ok(PhaseState::new(c.space, c.theta, c.p_theta, rho * s, rho * co, c.p_phi))
}

/// (r, p_r) with r = tan(θ/2), p_θ = ½(1 + r²)p_r on the sphere and
/// r = tanh(θ/2), p_θ = ½(1 − r²)p_r on the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RChart {
    pub r: f64,
    pub p_r: f64,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub space: Space,
}

fn metric(space: Space, r: f64) -> f64 {
    match space {
        Space::Sphere => 1.0 + r * r,
        Space::Hyperbolic => 1.0 - r * r,
    }
}

pub fn to_r_chart(x: &PhaseState) -> Result<RChart, DynError> {
    if !x.in_domain() {
        return Err(DynError::ChartDomain(format!("theta = {}", x.theta)));
    }
    let r = match x.space {
        Space::Sphere => (0.5 * x.theta).tan(),
        Space::Hyperbolic => (0.5 * x.theta).tanh(),
    };
    Ok(RChart { r, p_r: 2.0 * x.p_theta / metric(x.space, r), p0: x.p0, p1: x.p1, p2: x.p2, space: x.space })
}

pub fn from_r_chart(c: &RChart) -> Result<PhaseState, DynError> {
    let ok = c.r > 0.0 && (c.space == Space::Sphere || c.r < 1.0);
    if !ok || !c.r.is_finite() {
        return Err(DynError::ChartDomain(format!("r = {}", c.r)));
    }
    let theta = match c.space {
        Space::Sphere => 2.0 * c.r.atan(),
        Space::Hyperbolic => 2.0 * c.r.atanh(),
    };
    Ok(PhaseState::new(c.space, theta, 0.5 * metric(c.space, c.r) * c.p_r, c.p0, c.p1, c.p2))
}

/// The Hamiltonian in the (r, p_r) chart before the time rescaling, for
/// masses m = μm₁ and m₁ (curvature radius 1). The potential of `h` is in
/// rescaled units, so it enters divided by m₁. Then m₁·value equals the
/// rescaled Hamiltonian plus γ²/2 (sphere) or γ/2 (hyperbolic).
pub fn h_r_chart(h: &ReducedHamiltonian, x: &RChart, m1: f64) -> Result<f64, DynError> {
    if !matches!(h.kind, HamiltonianKind::FullSphere | HamiltonianKind::FullHyperbolic) {
        return Err(DynError::Domain("the r-chart form needs the full Hamiltonian".into()));
    }
    let theta = from_r_chart(x)?.theta;
    let (v, _) = h.potential_with_derivative(theta);
    let m = to_f64(&h.mu) * m1;
    let (r, pr, p0, p1, p2) = (x.r, x.p_r, x.p0, x.p1, x.p2);
    let g = metric(x.space, r);
    let kinetic = g * g / (8.0 * m) * (pr * pr + p2 * p2 / (r * r));
    Ok(match x.space {
        Space::Sphere => {
            let gamma_sq = p0 * p0 + p1 * p1 + p2 * p2;
            kinetic + (g * pr * p0 + gamma_sq) / (2.0 * m1) - p2 * p2 / m1
                + (1.0 - r * r) * p1 * p2 / (2.0 * m1 * r)
                + v / m1
        }
        Space::Hyperbolic => {
            let gamma = p0 * p0 + p1 * p1 - p2 * p2;
            kinetic + (g * pr * p0 + gamma) / (2.0 * m1) + p2 * p2 / m1
                + (1.0 + r * r) * p1 * p2 / (2.0 * m1 * r)
                + v / m1
        }
    })
}
