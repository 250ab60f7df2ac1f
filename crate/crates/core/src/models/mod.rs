//! The two-body reductions: parameters along Γ, the Fuchsian systems in
//! z, closed-form potentials r(z), nonreality conditions on the leading
//! coefficients, the μ = 1 solutions and the reduced Hamiltonians.

mod hamiltonian;
mod lemmas;
mod mu1;
mod system;
mod tables;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactfield::{int, FieldError, GaussRational, Rational, TowerContext, TowerScalar};
use crate::linode::OdeError;
use crate::ratcalc::CalcError;

pub use hamiltonian::{ExactTrig, HamiltonianKind, ReducedHamiltonian};
pub use lemmas::{lemma_condition, CoefficientCheck, LemmaReport, LemmaRule, Method};
pub use mu1::{mu1_r, mu1_solutions};
pub use system::{build_system, candidate_poles, gamma_denominator_identity, pipeline_r, singular_poles};
pub use tables::{closed_form_r, CoefficientTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Sphere,
    Hyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Potential {
    Newton,
    Oscillator,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Sphere => "sphere",
            Space::Hyperbolic => "hyperbolic",
        })
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Potential::Newton => "newton",
            Potential::Oscillator => "oscillator",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("hypothesis violated: {}", .0.join("; "))]
    HypothesisViolated(Vec<String>),
    #[error("mu must equal 1")]
    NotMu1,
    #[error("outside the chart: {0}")]
    DomainError(String),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

impl From<FieldError> for ModelError {
    fn from(e: FieldError) -> Self {
        ModelError::Calc(CalcError::from(e))
    }
}

fn degenerate(guard: &str) -> ModelError {
    ModelError::DegenerateParameters(guard.to_string())
}

/// One reduced problem along Γ (p₀ = p, p₁ = p₂ = 0).
///
/// `strength` is α for the Newton potential and β for the oscillator; z =
/// (p_θ + μp)/strength and ε = (h₀ + μp²/2)/strength, where h₀ is the
/// value of the one-degree-of-freedom Hamiltonian on Γ.
#[derive(Clone, Debug)]
pub struct ModelParams {
    pub space: Space,
    pub potential: Potential,
    pub strength: Rational,
    pub mu: Rational,
    pub p: Rational,
    pub eps: Rational,
    pub kappa_sq: GaussRational,
    pub lambda_sq: GaussRational,
    pub z0: GaussRational,
    ctx: Arc<TowerContext>,
}

/// Checks the guards and computes κ², λ² and z₀.
pub fn derive_params(
    space: Space,
    potential: Potential,
    strength: Rational,
    mu: Rational,
    p: Rational,
    eps: Rational,
) -> Result<ModelParams, ModelError> {
    if mu.is_zero() {
        return Err(degenerate("mu = 0"));
    }
    if p.is_zero() {
        return Err(degenerate("p = 0"));
    }
    if !strength.is_positive() {
        return Err(degenerate("strength <= 0"));
    }
    let two = int(2);
    let (kappa_sq, lambda_sq) = match (space, potential) {
        (Space::Sphere, Potential::Newton) => {
            let s = &two * &mu / &strength;
            (
                GaussRational::new(&s * &eps, s.clone()),
                GaussRational::new(&s * &eps, -s),
            )
        }
        (Space::Hyperbolic, Potential::Newton) => {
            let s = &two * &mu / &strength;
            (
                GaussRational::real(&s * (&eps + int(1))),
                GaussRational::real(&s * (&eps - int(1))),
            )
        }
        (Space::Sphere, Potential::Oscillator) => (
            GaussRational::real(&mu * (&two * &eps + int(1)) / &strength),
            GaussRational::real(&two * &mu * &eps / &strength),
        ),
        (Space::Hyperbolic, Potential::Oscillator) => (
            GaussRational::real(&mu * (&two * &eps - int(1)) / &strength),
            GaussRational::real(&two * &mu * &eps / &strength),
        ),
    };
    if kappa_sq.is_zero() {
        return Err(degenerate("kappa^2 = 0"));
    }
    if lambda_sq.is_zero() {
        return Err(degenerate("lambda^2 = 0"));
    }
    if kappa_sq == lambda_sq {
        return Err(degenerate("kappa^2 = lambda^2"));
    }
    let z0 = GaussRational::real(&mu * &p / &strength);
    let z0_sq = &z0 * &z0;
    if (&z0_sq - &kappa_sq).is_zero() {
        return Err(degenerate("z0 = ±kappa"));
    }
    if (&z0_sq - &lambda_sq).is_zero() {
        return Err(degenerate("z0 = ±lambda"));
    }
    if potential == Potential::Oscillator {
        let dd = &kappa_sq - &lambda_sq;
        let dp = dd.scale(&p);
        if (&(&dp * &dp) - &lambda_sq).is_zero() {
            return Err(degenerate("(kappa^2 - lambda^2)^2 p^2 = lambda^2"));
        }
    }
    let ctx = TowerContext::new(kappa_sq.clone(), lambda_sq.clone()).map_err(|_| degenerate("tower"))?;
    Ok(ModelParams { space, potential, strength, mu, p, eps, kappa_sq, lambda_sq, z0, ctx })
}

impl ModelParams {
    pub fn context(&self) -> &Arc<TowerContext> {
        &self.ctx
    }

    pub fn kappa(&self) -> TowerScalar {
        TowerScalar::kappa(&self.ctx)
    }

    pub fn lambda(&self) -> TowerScalar {
        TowerScalar::lambda(&self.ctx)
    }

    pub fn z0_scalar(&self) -> TowerScalar {
        TowerScalar::from_gauss(&self.ctx, self.z0.clone())
    }

    pub fn is_mu_one(&self) -> bool {
        self.mu.is_one()
    }

    /// z₀ written through κ² − λ² instead of μp/strength.
    pub fn z0_from_roots(&self) -> GaussRational {
        let dd = &self.kappa_sq - &self.lambda_sq;
        let pd = dd.scale(&self.p);
        match (self.space, self.potential) {
            (Space::Sphere, Potential::Newton) => {
                let four_i = GaussRational::imag(int(4));
                &pd * &four_i.inv().expect("nonzero")
            }
            (Space::Hyperbolic, Potential::Newton) => pd.scale(&Rational::new(1.into(), 4.into())),
            (Space::Sphere, Potential::Oscillator) => pd,
            (Space::Hyperbolic, Potential::Oscillator) => -pd,
        }
    }

    /// Casimir value on Γ: γ² on the sphere, γ on the hyperboloid; both p².
    pub fn casimir_on_gamma(&self) -> Rational {
        &self.p * &self.p
    }

    /// Reduced energy h₀ on Γ corresponding to ε.
    pub fn gamma_energy(&self) -> Rational {
        &self.eps * &self.strength - &self.mu * &self.p * &self.p / int(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn sphere_newton_reference() {
        let m = derive_params(Space::Sphere, Potential::Newton, int(2), rat(1, 2), int(1), int(0)).unwrap();
        assert_eq!(m.kappa_sq, GaussRational::imag(rat(1, 2)));
        assert_eq!(m.lambda_sq, GaussRational::imag(rat(-1, 2)));
        assert_eq!(m.z0, GaussRational::real(rat(1, 4)));
        assert_eq!(m.z0_from_roots(), m.z0);
    }

    #[test]
    fn hyperbolic_newton_reference() {
        let m = derive_params(Space::Hyperbolic, Potential::Newton, int(1), rat(1, 2), int(1), int(-2)).unwrap();
        assert_eq!(m.kappa_sq, GaussRational::from_int(-1));
        assert_eq!(m.lambda_sq, GaussRational::from_int(-3));
        assert_eq!(m.z0, GaussRational::real(rat(1, 2)));
        assert_eq!(m.z0_from_roots(), m.z0);
    }

    #[test]
    fn oscillator_z0_forms_agree() {
        for space in [Space::Sphere, Space::Hyperbolic] {
            let m = derive_params(space, Potential::Oscillator, int(1), rat(1, 2), int(1), int(-1)).unwrap();
            assert_eq!(m.z0_from_roots(), m.z0);
        }
    }

    #[test]
    fn guards() {
        let e = derive_params(Space::Hyperbolic, Potential::Oscillator, int(1), rat(1, 2), int(1), int(0));
        assert_eq!(e.unwrap_err(), ModelError::DegenerateParameters("lambda^2 = 0".into()));
        assert!(derive_params(Space::Sphere, Potential::Newton, int(2), int(0), int(1), int(0)).is_err());
        assert!(derive_params(Space::Sphere, Potential::Newton, int(2), rat(1, 2), int(0), int(0)).is_err());
        assert!(derive_params(Space::Sphere, Potential::Newton, int(-2), rat(1, 2), int(1), int(0)).is_err());
        // μ = 1 is admissible here; certification refuses it separately.
        assert!(derive_params(Space::Sphere, Potential::Newton, int(2), int(1), int(1), int(0)).is_ok());
    }
}
