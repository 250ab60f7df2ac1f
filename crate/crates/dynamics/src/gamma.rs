//! The particular solutions p₀ = p, p₁ = p₂ = 0 and the normal variational
//! equations along them, in the time variable.

use num_complex::Complex64;
use twobody_core::exactfield::{to_f64, Branch};
use twobody_core::models::{build_system, HamiltonianKind, ModelParams, Potential, ReducedHamiltonian, Space};

use crate::integrate::{drive, rk4_step, Method};
use crate::field::vector_field_raw;
use crate::DynError;

/// sin θ below this along Γ counts as a collision.
const COLLISION_SIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSample {
    pub t: f64,
    pub theta: f64,
    pub p_theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaTrajectory {
    /// The one-degree-of-freedom Hamiltonian h₀.
    pub h: ReducedHamiltonian,
    pub step: f64,
    pub samples: Vec<GammaSample>,
}

/// Integrates h₀ on the energy level fixed by ε. Without `theta0` the
/// start is the turning point z = 0, where V(θ) equals the strength
/// times ε.
pub fn gamma_trajectory(
    m: &ModelParams,
    theta0: Option<f64>,
    t_end: f64,
    step: f64,
) -> Result<GammaTrajectory, DynError> {
    let h = ReducedHamiltonian::from_params(m, HamiltonianKind::GammaRestriction);
    let s = to_f64(&m.strength);
    let eps = to_f64(&m.eps);
    let (mu, p) = (to_f64(&m.mu), to_f64(&m.p));
    let theta0 = match theta0 {
        Some(t) => t,
        None => turning_point(m.space, m.potential, eps)?,
    };
    let (v, _) = h.potential_with_derivative(theta0);
    // (p_θ + μp)²/(2μ) = sε − V(θ)
    let rhs = 2.0 * mu * (s * eps - v);
    if rhs < 0.0 {
        return Err(DynError::Domain(format!("energy below the potential at theta = {theta0}")));
    }
    let p_theta0 = -mu * p + rhs.sqrt();
    gamma_from(h, theta0, p_theta0, t_end, step)
}

/// Γ of the restricted problem: ψ = p_ψ = 0 with h = p_θ²/(2m₂) + ωp_θ + V.
pub fn gamma_trajectory_restricted(
    potential: Option<(Potential, twobody_core::exactfield::Rational)>,
    m2: twobody_core::exactfield::Rational,
    omega: twobody_core::exactfield::Rational,
    theta0: f64,
    p_theta0: f64,
    t_end: f64,
    step: f64,
) -> Result<GammaTrajectory, DynError> {
    let h = ReducedHamiltonian::gamma(Space::Sphere, potential, m2, omega);
    gamma_from(h, theta0, p_theta0, t_end, step)
}

fn gamma_from(h: ReducedHamiltonian, theta0: f64, p_theta0: f64, t_end: f64, step: f64) -> Result<GammaTrajectory, DynError> {
    let f = |x: &[f64]| vector_field_raw(&h, x);
    let sp = h.space;
    let mut guard = |t: f64, x: &[f64]| {
        let sin = if sp == Space::Sphere { x[0].sin() } else { x[0].sinh() };
        if sin.abs() < COLLISION_SIN || x[0] <= 0.0 || !x[0].is_finite() {
            return Err(DynError::StepFailure { t, reason: format!("collision, theta = {}", x[0]) });
        }
        Ok(())
    };
    guard(0.0, &[theta0, p_theta0])?;
    let (raw, _) = drive(&f, &[theta0, p_theta0], t_end, Method::Rk4 { step }, step, &mut guard)?;
    let samples = raw.into_iter().map(|s| GammaSample { t: s.t, theta: s.x[0], p_theta: s.x[1] }).collect();
    Ok(GammaTrajectory { h, step, samples })
}

fn turning_point(space: Space, potential: Potential, eps: f64) -> Result<f64, DynError> {
    let none = || DynError::Domain(format!("no turning point at eps = {eps}; pass theta0"));
    match (space, potential) {
        (Space::Sphere, Potential::Newton) => Ok(1f64.atan2(-eps)),
        (Space::Hyperbolic, Potential::Newton) if eps < -1.0 => Ok((-1.0 / eps).atanh()),
        (Space::Sphere, Potential::Oscillator) if eps > 0.0 => Ok((2.0 * eps).sqrt().atan()),
        (Space::Hyperbolic, Potential::Oscillator) if eps > 0.0 && eps < 0.5 => Ok((2.0 * eps).sqrt().atanh()),
        _ => Err(none()),
    }
}

fn z_of(m: &ModelParams, p_theta: f64) -> f64 {
    (p_theta + to_f64(&m.mu) * to_f64(&m.p)) / to_f64(&m.strength)
}

/// max over the samples of the defect in the relation between z and θ that
/// defines Γ (cot θ or coth θ = f(z) for Newton, tan²θ or tanh²θ = f(z)
/// for the oscillator).
pub fn gamma_relation_residual(m: &ModelParams, traj: &GammaTrajectory) -> f64 {
    let s = to_f64(&m.strength);
    let eps = to_f64(&m.eps);
    let mu = to_f64(&m.mu);
    traj.samples
        .iter()
        .map(|g| {
            let z = z_of(m, g.p_theta);
            let (sn, cs) = traj.h.trig(g.theta);
            match m.potential {
                Potential::Newton => s * z * z / (2.0 * mu) - eps - cs / sn,
                Potential::Oscillator => -s / mu * z * z + 2.0 * eps - (sn / cs).powi(2),
            }
            .abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NveKind {
    /// The reduced problem (sphere or hyperbolic after the Γ Hamiltonian).
    Reduced,
    /// The restricted problem; ω is the Γ Hamiltonian's p.
    Restricted,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NveSample {
    pub t: f64,
    pub theta: f64,
    pub p_theta: f64,
    pub p1: f64,
    pub p2: f64,
}

/// (ṗ₁, ṗ₂) of the time-domain normal variational equations.
pub(crate) fn nve_rhs(h: &ReducedHamiltonian, kind: NveKind, theta: f64, p_theta: f64, p1: f64, p2: f64) -> (f64, f64) {
    let (s, c) = h.trig(theta);
    let cot = c / s;
    let p = to_f64(&h.p);
    let mu = to_f64(&h.mu);
    match (kind, h.space) {
        (NveKind::Restricted, _) => (-p * cot * p1 + p2 / (s * s), p * p_theta * p1 + p * cot * p2),
        (NveKind::Reduced, Space::Sphere) => (
            -p * cot * p1 + (2.0 * p + p_theta - p / (mu * s * s)) * p2,
            -p_theta * p1 + p * cot * p2,
        ),
        (NveKind::Reduced, Space::Hyperbolic) => (
            -p * cot * p1 - (2.0 * p + p_theta + p / (mu * s * s)) * p2,
            -p_theta * p1 + p * cot * p2,
        ),
    }
}

/// Integrates the NVE along `traj` from the variation (p₁, p₂), reusing the
/// trajectory's RK4 step so the output is aligned with its samples.
pub fn nve_time_domain(traj: &GammaTrajectory, kind: NveKind, initial: (f64, f64)) -> Result<Vec<NveSample>, DynError> {
    let h = &traj.h;
    let f = |x: &[f64]| -> Result<Vec<f64>, DynError> {
        let g = vector_field_raw(h, &x[..2])?;
        let (d1, d2) = nve_rhs(h, kind, x[0], x[1], x[2], x[3]);
        Ok(vec![g[0], g[1], d1, d2])
    };
    let Some(first) = traj.samples.first() else { return Ok(Vec::new()) };
    let mut x = vec![first.theta, first.p_theta, initial.0, initial.1];
    let mut out = vec![NveSample { t: first.t, theta: x[0], p_theta: x[1], p1: x[2], p2: x[3] }];
    for w in traj.samples.windows(2) {
        let dt = w[1].t - w[0].t;
        x = rk4_step(&f, &x, dt).map_err(|e| DynError::StepFailure { t: w[1].t, reason: e.to_string() })?;
        out.push(NveSample { t: w[1].t, theta: x[0], p_theta: x[1], p1: x[2], p2: x[3] });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainRuleReport {
    pub points: usize,
    /// max ‖ṗ − (dz/dt)·M(z)p‖ / ‖ṗ‖ over the points.
    pub max_relative_error: f64,
}

/// Compares the time-domain NVE with the z-domain system of
/// `twobody_core::models::build_system` via dp/dt = (dz/dt)·dp/dz, where
/// z = (p_θ + μp)/strength and dz/dt = ṗ_θ/strength.
pub fn chain_rule_check(m: &ModelParams, traj: &GammaTrajectory, nve: &[NveSample]) -> Result<ChainRuleReport, DynError> {
    let sys = build_system(m)?;
    let s = to_f64(&m.strength);
    let branch = Branch::PRINCIPAL;
    let ev = |f: &twobody_core::ratcalc::RatFunc, z: f64| f.eval_complex(Complex64::new(z, 0.0), branch).re;
    let mut worst: f64 = 0.0;
    for n in nve {
        let (dp1, dp2) = nve_rhs(&traj.h, NveKind::Reduced, n.theta, n.p_theta, n.p1, n.p2);
        let (_, dv) = traj.h.potential_with_derivative(n.theta);
        let dz_dt = -dv / s;
        let z = z_of(m, n.p_theta);
        // √f is tan θ or tanh θ on Γ.
        let w = match m.potential {
            Potential::Newton => 1.0,
            Potential::Oscillator => {
                let (sn, cs) = traj.h.trig(n.theta);
                sn / cs
            }
        };
        let (a, b, c) = (ev(&sys.a, z), ev(&sys.b, z), ev(&sys.c, z));
        let q1 = dz_dt * (a * n.p1 + b * w * n.p2);
        let q2 = dz_dt * (c * w * n.p1 - a * n.p2);
        let num = ((dp1 - q1).powi(2) + (dp2 - q2).powi(2)).sqrt();
        let den = (dp1 * dp1 + dp2 * dp2).sqrt();
        worst = worst.max(if den > 0.0 { num / den } else { num });
    }
    Ok(ChainRuleReport { points: nve.len(), max_relative_error: worst })
}
