//! Nonreality of the leading coefficients α_j, which forces irrational
//! exponent differences at ±κ and ±λ.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::exactfield::{int, rat, rational_sqrt, to_f64, Branch, GaussRational, TowerScalar};

use super::{closed_form_r, ModelError, ModelParams, Potential, Space};

/// Which nonreality criterion applies to the parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaRule {
    /// Sphere/Newton: a single excluded energy curve.
    NewtonSphereNonreal,
    /// Hyperbolic/Newton below the lower critical energy.
    NewtonHyperbolicNonreal,
    /// Oscillator in either space below its critical energy.
    OscillatorNonreal,
}

impl LemmaRule {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaRule::NewtonSphereNonreal => "newton-sphere-nonreal-coefficients",
            LemmaRule::NewtonHyperbolicNonreal => "newton-hyperbolic-nonreal-coefficients",
            LemmaRule::OscillatorNonreal => "oscillator-nonreal-coefficients",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    /// Imaginary parts compared against 1e−9 on every branch.
    Float,
}

pub const IMAG_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientCheck {
    /// Table index: 1, 2 at ±κ, 3, 4 at ±λ.
    pub index: usize,
    pub nonreal: bool,
    pub method: Method,
    /// Smallest |Im α_j| over the branches.
    pub min_abs_imag: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub rule: LemmaRule,
    pub hypotheses: Vec<(String, bool)>,
    pub checks: Vec<CoefficientCheck>,
    /// i·Im α = μ²(1 − μ)p/(2·strength·root) for the pairs at ±κ (and ±λ
    /// for hyperbolic Newton), when the root is purely imaginary.
    pub imaginary_part_identity: Option<(bool, Method)>,
}

impl LemmaReport {
    pub fn conclusion_holds(&self) -> bool {
        self.checks.iter().all(|c| c.nonreal) && self.imaginary_part_identity.is_none_or(|(ok, _)| ok)
    }
}

/// Decides (√(ε² + 1) − ε)(ε² + 1) ≠ (μ − 1)²p²/(4αμ) exactly.
fn newton_sphere_inequality(m: &ModelParams) -> bool {
    let s2 = &m.eps * &m.eps + int(1);
    let rhs = (&m.mu - int(1)) * (&m.mu - int(1)) * &m.p * &m.p / (int(4) * &m.strength * &m.mu);
    match rational_sqrt(&s2) {
        Some(s) => (s - &m.eps) * &s2 != rhs,
        // An irrational left side never equals a rational right side.
        None => true,
    }
}

fn exact_root(g: &GaussRational) -> Option<GaussRational> {
    g.sqrt_exact()
}

fn check_coefficient(m: &ModelParams, index: usize, alpha: &TowerScalar) -> CoefficientCheck {
    let k = exact_root(&m.kappa_sq);
    let l = exact_root(&m.lambda_sq);
    let spec = alpha.specialize(k.as_ref(), l.as_ref());
    if let Some(g) = spec.base_value() {
        let im = to_f64(&g.im).abs();
        return CoefficientCheck { index, nonreal: !g.im.is_zero(), method: Method::Exact, min_abs_imag: im };
    }
    let min_abs_imag = Branch::all()
        .into_iter()
        .map(|b| alpha.embed_complex(b).im.abs())
        .fold(f64::INFINITY, f64::min);
    CoefficientCheck { index, nonreal: min_abs_imag > IMAG_MARGIN, method: Method::Float, min_abs_imag }
}

/// Compares i·Im α_a = −i·Im α_b with μ²(1 − μ)p/(2·strength·root).
fn imaginary_identity(
    m: &ModelParams,
    alphas: (&TowerScalar, &TowerScalar),
    root_sq: &GaussRational,
    is_kappa: bool,
) -> Option<(bool, Method)> {
    if !root_sq.im.is_zero() || root_sq.re >= int(0) {
        return None;
    }
    let coef = &m.mu * &m.mu * (int(1) - &m.mu) * &m.p / (int(2) * &m.strength);
    match exact_root(root_sq) {
        Some(root) => {
            let (k, l) = (exact_root(&m.kappa_sq), exact_root(&m.lambda_sq));
            let a = alphas.0.specialize(k.as_ref(), l.as_ref());
            let b = alphas.1.specialize(k.as_ref(), l.as_ref());
            let (Some(a), Some(b)) = (a.base_value(), b.base_value()) else { return None };
            let expect = &GaussRational::real(coef) * &root.inv().expect("nonzero root");
            let ia = GaussRational::imag(a.im.clone());
            let ib = GaussRational::imag(b.im.clone());
            Some((ia == expect && ib == -expect.clone(), Method::Exact))
        }
        None => {
            let branch = Branch::PRINCIPAL;
            let root = if is_kappa { TowerScalar::kappa(m.context()) } else { TowerScalar::lambda(m.context()) };
            let rv = root.embed_complex(branch);
            let expect = Complex64::new(to_f64(&coef), 0.0) / rv;
            let ia = Complex64::new(0.0, alphas.0.embed_complex(branch).im);
            let ib = Complex64::new(0.0, alphas.1.embed_complex(branch).im);
            let scale = expect.norm().max(1.0);
            let ok = (ia - expect).norm() < 1e-9 * scale && (ib + expect).norm() < 1e-9 * scale;
            Some((ok, Method::Float))
        }
    }
}

/// Evaluates the hypotheses for the parameter set and, when they hold,
/// verifies that the relevant α_j are not real.
pub fn lemma_condition(m: &ModelParams) -> Result<LemmaReport, ModelError> {
    let mut hypotheses = vec![
        ("mu != 0 and mu != 1".to_string(), !m.mu.is_zero() && !m.mu.is_one()),
        ("p != 0".to_string(), !m.p.is_zero()),
    ];
    let rule = match (m.space, m.potential) {
        (Space::Sphere, Potential::Newton) => {
            hypotheses.push((
                "(sqrt(eps^2+1) - eps)(eps^2+1) != (mu-1)^2 p^2/(4 alpha mu)".to_string(),
                newton_sphere_inequality(m),
            ));
            LemmaRule::NewtonSphereNonreal
        }
        (Space::Hyperbolic, Potential::Newton) => {
            hypotheses.push(("eps < -1".to_string(), m.eps < int(-1)));
            LemmaRule::NewtonHyperbolicNonreal
        }
        (Space::Sphere, Potential::Oscillator) => {
            hypotheses.push(("eps < -1/2".to_string(), m.eps < rat(-1, 2)));
            LemmaRule::OscillatorNonreal
        }
        (Space::Hyperbolic, Potential::Oscillator) => {
            hypotheses.push(("eps < 1/2".to_string(), m.eps < rat(1, 2)));
            LemmaRule::OscillatorNonreal
        }
    };
    let failed: Vec<String> = hypotheses.iter().filter(|(_, ok)| !ok).map(|(h, _)| h.clone()).collect();
    if !failed.is_empty() {
        return Err(ModelError::HypothesisViolated(failed));
    }
    let table = closed_form_r(m)?;
    let indices: &[usize] = match m.potential {
        Potential::Newton => &[1, 2, 3, 4],
        Potential::Oscillator => &[1, 2],
    };
    let checks = indices.iter().map(|&j| check_coefficient(m, j, table.alpha(j))).collect();
    let imaginary_part_identity = match rule {
        LemmaRule::NewtonSphereNonreal => None,
        LemmaRule::OscillatorNonreal => {
            imaginary_identity(m, (table.alpha(1), table.alpha(2)), &m.kappa_sq, true)
        }
        LemmaRule::NewtonHyperbolicNonreal => {
            let a = imaginary_identity(m, (table.alpha(1), table.alpha(2)), &m.kappa_sq, true);
            let b = imaginary_identity(m, (table.alpha(3), table.alpha(4)), &m.lambda_sq, false);
            match (a, b) {
                (Some((x, mx)), Some((y, my))) => {
                    let method = if mx == Method::Exact && my == Method::Exact { Method::Exact } else { Method::Float };
                    Some((x && y, method))
                }
                (one, None) | (None, one) => one,
            }
        }
    };
    Ok(LemmaReport { rule, hypotheses, checks, imaginary_part_identity })
}
