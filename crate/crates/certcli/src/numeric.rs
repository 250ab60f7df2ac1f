//! Glue for the simulation subcommands.

use std::io::{self, Write};

use twobody_core::exactfield::{parse_rational, to_f64, ParseRationalError, Rational};
use twobody_core::models::{ModelParams, Potential, ReducedHamiltonian, Space};
use twobody_dynamics::{
    chain_rule_check, gamma_trajectory, integrate, nve_time_domain, poincare_section, ChainRuleReport, DynError,
    IntegrateOptions, Method, NveKind, NveSample, Section, SectionPoint, TrajectoryReport,
};

/// Comma-separated exact rationals, converted to f64.
pub fn parse_state(text: &str) -> Result<Vec<f64>, ParseRationalError> {
    text.split(',').map(|s| parse_rational(s).map(|q| to_f64(&q))).collect()
}

pub fn full_hamiltonian(space: Space, potential: Potential, strength: Rational, mu: Rational) -> ReducedHamiltonian {
    ReducedHamiltonian::full(space, Some((potential, strength)), mu)
}

pub fn simulate(h: &ReducedHamiltonian, x0: &[f64], t_end: f64, step: f64, sample_interval: f64) -> Result<TrajectoryReport, DynError> {
    let opts = IntegrateOptions { method: Method::Rk4 { step }, sample_interval, ..IntegrateOptions::default() };
    integrate(h, x0, t_end, &opts)
}

pub fn section(h: &ReducedHamiltonian, x0: &[f64], t_end: f64, step: f64) -> Result<Vec<SectionPoint>, DynError> {
    poincare_section(h, x0, &Section::default(), t_end, step)
}

pub struct NveRun {
    pub samples: Vec<NveSample>,
    pub chain_rule: ChainRuleReport,
}

/// Γ from its turning point, the NVE from (p₁, p₂) = (1, 0) and the
/// comparison with the z-domain system.
pub fn nve(m: &ModelParams, t_end: f64, step: f64) -> Result<NveRun, DynError> {
    let traj = gamma_trajectory(m, None, t_end, step)?;
    let samples = nve_time_domain(&traj, NveKind::Reduced, (1.0, 0.0))?;
    let chain_rule = chain_rule_check(m, &traj, &samples)?;
    Ok(NveRun { samples, chain_rule })
}

pub fn write_nve_csv(w: &mut dyn Write, samples: &[NveSample]) -> io::Result<()> {
    writeln!(w, "t,theta,p_theta,p1,p2")?;
    for s in samples {
        writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", s.t, s.theta, s.p_theta, s.p1, s.p2)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_is_exact_text() {
        assert_eq!(parse_state("1/2, -3,0").unwrap(), vec![0.5, -3.0, 0.0]);
        assert!(parse_state("0.5,1").is_err());
    }
}
