//! Reduced Hamiltonians after the time rescaling by m₁R².
//!
//! Coordinates: `FullSphere`, `FullHyperbolic` and the free parts use
//! (θ, p_θ, p₀, p₁, p₂); `GammaRestriction` uses (θ, p_θ) with p₀ = p and
//! p₁ = p₂ = 0; `RestrictedProblem` uses (θ, p_θ, ψ, p_ψ).

use num_traits::{One, Zero};

use crate::exactfield::{int, to_f64, Rational};

use super::{ModelError, ModelParams, Potential, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    FullSphere,
    FullHyperbolic,
    GammaRestriction,
    RestrictedProblem,
    /// (1/2μ)(p_θ² + p₂²/sin²θ) + V. With V ≠ 0 this is the problem with
    /// the first body fixed, where p₂ is conserved.
    FreePartS1,
    /// p_θp₀ ∓ p₂² + p₁p₂ cot θ, with the sign of the full Hamiltonian.
    FreePartS2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedHamiltonian {
    pub kind: HamiltonianKind,
    pub space: Space,
    /// None means V = 0.
    pub potential: Option<(Potential, Rational)>,
    pub mu: Rational,
    /// p₀ along Γ.
    pub p: Rational,
    /// Mass of the light body in the restricted problem.
    pub m2: Rational,
    /// Angular velocity of the heavy body in the restricted problem.
    pub omega: Rational,
}

/// Exact values of the trigonometric (sphere) or hyperbolic functions of
/// θ, plus sin ψ and cos ψ for the restricted problem.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTrig {
    pub s: Rational,
    pub c: Rational,
    pub psi: Option<(Rational, Rational)>,
}

impl ReducedHamiltonian {
    pub fn full(space: Space, potential: Option<(Potential, Rational)>, mu: Rational) -> Self {
        let kind = match space {
            Space::Sphere => HamiltonianKind::FullSphere,
            Space::Hyperbolic => HamiltonianKind::FullHyperbolic,
        };
        Self { kind, space, potential, mu, p: int(0), m2: int(1), omega: int(0) }
    }

    pub fn gamma(space: Space, potential: Option<(Potential, Rational)>, mu: Rational, p: Rational) -> Self {
        Self { kind: HamiltonianKind::GammaRestriction, space, potential, mu, p, m2: int(1), omega: int(0) }
    }

    pub fn restricted(potential: Option<(Potential, Rational)>, m2: Rational, omega: Rational) -> Self {
        Self {
            kind: HamiltonianKind::RestrictedProblem,
            space: Space::Sphere,
            potential,
            mu: int(1),
            p: int(0),
            m2,
            omega,
        }
    }

    pub fn free_part(kind: HamiltonianKind, mu: Rational) -> Self {
        assert!(matches!(kind, HamiltonianKind::FreePartS1 | HamiltonianKind::FreePartS2));
        Self { kind, space: Space::Sphere, potential: None, mu, p: int(0), m2: int(1), omega: int(0) }
    }

    /// Motion in the field of an infinitely heavy first body.
    pub fn central(space: Space, potential: Option<(Potential, Rational)>, mu: Rational) -> Self {
        Self { kind: HamiltonianKind::FreePartS1, space, potential, mu, p: int(0), m2: int(1), omega: int(0) }
    }

    pub fn from_params(m: &ModelParams, kind: HamiltonianKind) -> Self {
        let pot = Some((m.potential, m.strength.clone()));
        match kind {
            HamiltonianKind::GammaRestriction => Self::gamma(m.space, pot, m.mu.clone(), m.p.clone()),
            HamiltonianKind::FreePartS1 | HamiltonianKind::FreePartS2 => Self::free_part(kind, m.mu.clone()),
            HamiltonianKind::RestrictedProblem => Self::restricted(pot, int(1), int(1)),
            _ => Self::full(m.space, pot, m.mu.clone()),
        }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            HamiltonianKind::GammaRestriction => 2,
            HamiltonianKind::RestrictedProblem => 4,
            _ => 5,
        }
    }

    /// Sign of the p₂² term: − on the sphere, + on the hyperbolic plane.
    pub fn sign(&self) -> f64 {
        match self.space {
            Space::Sphere => -1.0,
            Space::Hyperbolic => 1.0,
        }
    }

    /// (sin θ, cos θ) or (sinh θ, cosh θ).
    pub fn trig(&self, theta: f64) -> (f64, f64) {
        match self.space {
            Space::Sphere => (theta.sin(), theta.cos()),
            Space::Hyperbolic => (theta.sinh(), theta.cosh()),
        }
    }

    /// V(θ) and V′(θ).
    pub fn potential_with_derivative(&self, theta: f64) -> (f64, f64) {
        let Some((pot, k)) = &self.potential else { return (0.0, 0.0) };
        let k = to_f64(k);
        let (s, c) = self.trig(theta);
        match pot {
            // −k cot θ, −k coth θ
            Potential::Newton => (-k * c / s, k / (s * s)),
            // (k/2) tan²θ, (k/2) tanh²θ
            Potential::Oscillator => {
                let t = s / c;
                (0.5 * k * t * t, k * t / (c * c))
            }
        }
    }

    fn check_theta(&self, theta: f64) -> Result<(), ModelError> {
        let (s, _) = self.trig(theta);
        if s.abs() < 1e-300 || !theta.is_finite() {
            return Err(ModelError::DomainError(format!("theta = {theta}")));
        }
        if self.space == Space::Hyperbolic && theta <= 0.0 {
            return Err(ModelError::DomainError(format!("theta = {theta} <= 0")));
        }
        Ok(())
    }

    /// Double-precision value at the coordinates described in the module
    /// docs.
    pub fn eval(&self, x: &[f64]) -> Result<f64, ModelError> {
        assert_eq!(x.len(), self.dimension(), "coordinate count");
        let theta = x[0];
        self.check_theta(theta)?;
        let (s, c) = self.trig(theta);
        let cot = c / s;
        let mu = to_f64(&self.mu);
        let (v, _) = self.potential_with_derivative(theta);
        let pt = x[1];
        Ok(match self.kind {
            HamiltonianKind::FullSphere | HamiltonianKind::FullHyperbolic => {
                let (p0, p1, p2) = (x[2], x[3], x[4]);
                (pt * pt + p2 * p2 / (s * s)) / (2.0 * mu) + pt * p0 + self.sign() * p2 * p2 + p1 * p2 * cot + v
            }
            HamiltonianKind::GammaRestriction => pt * pt / (2.0 * mu) + to_f64(&self.p) * pt + v,
            HamiltonianKind::RestrictedProblem => {
                let (psi, ppsi) = (x[2], x[3]);
                let m2 = to_f64(&self.m2);
                let om = to_f64(&self.omega);
                (pt * pt + ppsi * ppsi / (s * s)) / (2.0 * m2) + om * (pt * psi.cos() - ppsi * psi.sin() * cot) + v
            }
            HamiltonianKind::FreePartS1 => (pt * pt + x[4] * x[4] / (s * s)) / (2.0 * mu) + v,
            HamiltonianKind::FreePartS2 => pt * x[2] + self.sign() * x[4] * x[4] + x[3] * x[4] * cot,
        })
    }

    /// Exact value when the trigonometric values are rational. Momenta are
    /// the coordinates after θ.
    pub fn eval_exact(&self, trig: &ExactTrig, momenta: &[Rational]) -> Result<Rational, ModelError> {
        assert_eq!(momenta.len() + 1, self.dimension(), "coordinate count");
        let (s, c) = (&trig.s, &trig.c);
        let pyth = match self.space {
            Space::Sphere => s * s + c * c,
            Space::Hyperbolic => c * c - s * s,
        };
        if !pyth.is_one() {
            return Err(ModelError::DomainError("trigonometric values are inconsistent".into()));
        }
        if s.is_zero() {
            return Err(ModelError::DomainError("sin theta = 0".into()));
        }
        let cot = c / s;
        let v = match &self.potential {
            None => int(0),
            Some((Potential::Newton, k)) => -(k * &cot),
            Some((Potential::Oscillator, k)) => {
                if c.is_zero() {
                    return Err(ModelError::DomainError("cos theta = 0".into()));
                }
                k * s * s / (int(2) * c * c)
            }
        };
        let pt = &momenta[0];
        let two_mu = int(2) * &self.mu;
        Ok(match self.kind {
            HamiltonianKind::FullSphere | HamiltonianKind::FullHyperbolic => {
                let (p0, p1, p2) = (&momenta[1], &momenta[2], &momenta[3]);
                let quad = if self.space == Space::Sphere { -(p2 * p2) } else { p2 * p2 };
                (pt * pt + p2 * p2 / (s * s)) / &two_mu + pt * p0 + quad + p1 * p2 * &cot + v
            }
            HamiltonianKind::GammaRestriction => pt * pt / &two_mu + &self.p * pt + v,
            HamiltonianKind::RestrictedProblem => {
                let ppsi = &momenta[2];
                let (sp, cp) = trig
                    .psi
                    .as_ref()
                    .ok_or_else(|| ModelError::DomainError("psi values required".into()))?;
                (pt * pt + ppsi * ppsi / (s * s)) / (int(2) * &self.m2)
                    + &self.omega * (pt * cp - ppsi * sp * &cot)
                    + v
            }
            HamiltonianKind::FreePartS1 => (pt * pt + &momenta[3] * &momenta[3] / (s * s)) / &two_mu + v,
            HamiltonianKind::FreePartS2 => {
                let quad = if self.space == Space::Sphere { -(&momenta[3] * &momenta[3]) } else { &momenta[3] * &momenta[3] };
                pt * &momenta[1] + quad + &momenta[2] * &momenta[3] * &cot
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn pyth() -> ExactTrig {
        ExactTrig { s: rat(3, 5), c: rat(4, 5), psi: None }
    }

    #[test]
    fn exact_and_float_agree() {
        let h = ReducedHamiltonian::full(Space::Sphere, Some((Potential::Newton, int(2))), rat(1, 3));
        let m = [rat(1, 2), rat(2, 3), rat(-1, 4), rat(3, 7)];
        let exact = h.eval_exact(&pyth(), &m).unwrap();
        let theta = (3.0f64 / 5.0).asin();
        let mut x = vec![theta];
        x.extend(m.iter().map(to_f64));
        assert!((h.eval(&x).unwrap() - to_f64(&exact)).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_sign_of_p2_square() {
        let h = ReducedHamiltonian::full(Space::Hyperbolic, None, int(1));
        let trig = ExactTrig { s: rat(3, 4), c: rat(5, 4), psi: None };
        let a = h.eval_exact(&trig, &[int(0), int(0), int(0), int(1)]).unwrap();
        // (1/2)(1/sinh²θ) + 1
        assert_eq!(a, rat(8, 9) + int(1));
    }

    #[test]
    fn mu_one_square_completion() {
        // At μ = 1 the sphere Hamiltonian equals
        // ½(p_θ + p₀)² + (p₁ sin θ + p₂ cos θ)²/(2 sin²θ) + V − γ²/2.
        let h = ReducedHamiltonian::full(Space::Sphere, Some((Potential::Oscillator, rat(3, 2))), int(1));
        let t = pyth();
        let (pt, p0, p1, p2) = (rat(1, 3), rat(-2, 5), rat(5, 7), rat(1, 2));
        let val = h.eval_exact(&t, &[pt.clone(), p0.clone(), p1.clone(), p2.clone()]).unwrap();
        let v = rat(3, 2) * &t.s * &t.s / (int(2) * &t.c * &t.c);
        let a = &pt + &p0;
        let b = &p1 * &t.s + &p2 * &t.c;
        let gamma_sq = &p0 * &p0 + &p1 * &p1 + &p2 * &p2;
        let form = &a * &a / int(2) + &b * &b / (int(2) * &t.s * &t.s) + v - gamma_sq / int(2);
        assert_eq!(val, form);
    }

    #[test]
    fn split_sums_to_free_hamiltonian() {
        let mu = rat(2, 3);
        let full = ReducedHamiltonian::full(Space::Sphere, None, mu.clone());
        let s1 = ReducedHamiltonian::free_part(HamiltonianKind::FreePartS1, mu.clone());
        let s2 = ReducedHamiltonian::free_part(HamiltonianKind::FreePartS2, mu);
        let m = [rat(1, 2), rat(2, 3), rat(-1, 4), rat(3, 7)];
        let t = pyth();
        assert_eq!(
            full.eval_exact(&t, &m).unwrap(),
            s1.eval_exact(&t, &m).unwrap() + s2.eval_exact(&t, &m).unwrap()
        );
    }

    #[test]
    fn gamma_restriction_free_value() {
        let h = ReducedHamiltonian::gamma(Space::Sphere, None, rat(1, 2), int(3));
        assert_eq!(h.eval_exact(&pyth(), &[int(2)]).unwrap(), int(4) + int(6));
    }

    #[test]
    fn domain_errors() {
        let h = ReducedHamiltonian::full(Space::Hyperbolic, None, int(1));
        assert!(h.eval(&[0.0, 1.0, 0.0, 0.0, 0.0]).is_err());
        assert!(h.eval(&[-1.0, 1.0, 0.0, 0.0, 0.0]).is_err());
        let bad = ExactTrig { s: rat(1, 2), c: rat(1, 2), psi: None };
        assert!(h.eval_exact(&bad, &vec![int(0); 4]).is_err());
    }
}
