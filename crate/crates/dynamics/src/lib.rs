//! Numerical side of the reduced two-body problem: Lie–Poisson vector
//! fields, trajectories with invariant monitoring, the Γ solutions and their
//! normal variational equations, chart changes and Poincaré sections.
//!
//! Everything works on the Hamiltonians of `twobody_core::models` in their
//! time-rescaled form. States are plain coordinate vectors whose layout is
//! fixed by the Hamiltonian kind (see [`PhaseState`] for the five-dimensional
//! one).

mod chart;
mod export;
mod field;
mod gamma;
mod integrate;
mod poisson;
mod section;
mod state;

pub use chart::{
    from_cylinder, from_r_chart, h_r_chart, to_cylinder, to_r_chart, CylinderChart, RChart,
};
pub use export::{write_sections_csv, write_trajectory_csv};
pub use field::{
    central_difference_gradient, extra_integrals, gradient, vector_field, vector_field_raw, Invariant,
};
pub use gamma::{
    chain_rule_check, gamma_relation_residual, gamma_trajectory, gamma_trajectory_restricted, nve_time_domain,
    ChainRuleReport,
    GammaSample, GammaTrajectory, NveKind, NveSample,
};
pub use integrate::{integrate, Drift, IntegrateOptions, Method, Sample, TrajectoryReport};
pub use poisson::{MultiPoly, PoissonStructure};
pub use section::{poincare_section, Section, SectionPoint};
pub use state::PhaseState;

use twobody_core::models::ModelError;

#[derive(Debug, thiserror::Error)]
pub enum DynError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("chart domain error: {0}")]
    ChartDomain(String),
    #[error("step failure at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },
    #[error("Casimir deviation {deviation:e} exceeds {limit:e} at t = {t}")]
    CasimirViolation { t: f64, deviation: f64, limit: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}
