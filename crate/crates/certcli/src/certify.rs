//! The certification pipeline for one parameter set.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twobody_core::exactfield::{fmt_rational, rat, Rational};
use twobody_core::kovacic::{analyze, theta, xi, GaloisVerdict};
use twobody_core::models::{
    closed_form_r, derive_params, lemma_condition, pipeline_r, singular_poles, LemmaReport, Method, ModelError,
    ModelParams, Potential, Space,
};
use twobody_core::linode::NormalFormODE;

use crate::certificate::*;
use crate::config::{ConfigError, ParsedCase, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// A computation broke one of its own checks; never a user error.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn internal(e: impl std::fmt::Display) -> CertError {
    CertError::Internal(e.to_string())
}

fn echo(case: &ParsedCase, m: Option<&ModelParams>, seed: u64) -> ParamsEcho {
    ParamsEcho {
        space: case.space.into(),
        potential: case.potential.into(),
        strength: fmt_rational(&case.strength),
        mu: fmt_rational(&case.mu),
        p: fmt_rational(&case.p),
        eps: fmt_rational(&case.eps),
        kappa_sq: m.map(|m| m.kappa_sq.to_string()),
        lambda_sq: m.map(|m| m.lambda_sq.to_string()),
        z0: m.map(|m| m.z0.to_string()),
        seed,
    }
}

fn degenerate(params: ParamsEcho, guard: String) -> Certificate {
    Certificate {
        params,
        spectrum: None,
        table_match: false,
        identity_tests: None,
        lemma: None,
        case1: None,
        case2: None,
        case3_possible: None,
        verdict: None,
        gate: None,
        conclusion: Conclusion::Degenerate,
        guard: Some(guard),
    }
}

fn table_agrees(m: &ModelParams, r: &NormalFormODE) -> Result<bool, CertError> {
    Ok(closed_form_r(m).map_err(internal)?.to_ratfunc() == r.r)
}

fn small_rational(rng: &mut ChaCha8Rng, positive: bool) -> Rational {
    let n = if positive { rng.gen_range(1..=12) } else { rng.gen_range(-12..=12) };
    rat(n, rng.gen_range(1..=7))
}

/// Draws `count` admissible parameter sets of the same case and checks the
/// pipeline against the tables at each. Returns the number that agree.
fn random_identity_tests(space: Space, potential: Potential, count: usize, seed: u64) -> Result<usize, CertError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreed = 0;
    let mut drawn = 0;
    let mut attempts = 0;
    while drawn < count {
        attempts += 1;
        if attempts > 1000 * (count + 1) {
            return Err(internal("could not draw admissible random parameters"));
        }
        let s = small_rational(&mut rng, true);
        let mu = small_rational(&mut rng, false);
        let p = small_rational(&mut rng, false);
        let eps = small_rational(&mut rng, false);
        let Ok(m) = derive_params(space, potential, s, mu, p, eps) else { continue };
        drawn += 1;
        let r = pipeline_r(&m).map_err(internal)?;
        if table_agrees(&m, &r)? {
            agreed += 1;
        }
    }
    Ok(agreed)
}

fn lemma_block(report: &LemmaReport) -> LemmaBlock {
    LemmaBlock {
        rule: report.rule.name().to_string(),
        applicable: true,
        hypotheses: report
            .hypotheses
            .iter()
            .map(|(s, h)| HypothesisRecord { statement: s.clone(), holds: *h })
            .collect(),
        checks: report
            .checks
            .iter()
            .map(|c| CoefficientRecord {
                index: c.index,
                nonreal: c.nonreal,
                method: match c.method {
                    Method::Exact => "exact".into(),
                    Method::Float => "float".into(),
                },
                min_abs_imag: c.min_abs_imag,
            })
            .collect(),
        imaginary_part_identity: report.imaginary_part_identity.map(|(ok, _)| ok),
        conclusion_holds: report.conclusion_holds(),
    }
}

fn rule_name(space: Space, potential: Potential) -> &'static str {
    use twobody_core::models::LemmaRule;
    match (space, potential) {
        (Space::Sphere, Potential::Newton) => LemmaRule::NewtonSphereNonreal.name(),
        (Space::Hyperbolic, Potential::Newton) => LemmaRule::NewtonHyperbolicNonreal.name(),
        (_, Potential::Oscillator) => LemmaRule::OscillatorNonreal.name(),
    }
}

fn case1_block(v: &GaloisVerdict) -> Case1Block {
    let c = &v.case_one;
    Case1Block {
        solutions: c.solutions.len(),
        complete: c.complete(),
        pruned: c.pruned.iter().map(|l| l.to_string()).collect(),
        undecided: c.undecided,
        data: c
            .solutions
            .iter()
            .map(|s| RiccatiRecord {
                omega: s.omega.render(),
                exponents: s
                    .exponent_choices
                    .iter()
                    .map(|(l, e)| ExponentChoice { location: l.to_string(), exponent: fmt_rational(e) })
                    .collect(),
                cyclic_order: s.cyclic_order().to_string(),
            })
            .collect(),
        product_test: v.product.as_ref().map(|t| ProductRecord {
            max_p_degree: t.max_p_degree,
            v: t.v.as_ref().map(|f| f.render()),
            decided: t.decided,
        }),
    }
}

/// Ξ with a monic denominator; `RatFunc` already normalises that way.
pub fn xi_witness(r: &NormalFormODE, th: &twobody_core::ratcalc::RatFunc) -> XiWitness {
    let x = xi(r, th);
    XiWitness {
        nonzero: !x.is_zero(),
        numerator_degree: x.num().degree(),
        leading_coefficient: x.num().leading().map(|c| c.to_string()),
        numerator: x.num().render(),
        denominator: x.den().render(),
    }
}

fn case2_block(m: &ModelParams, r: &NormalFormODE, v: &GaloisVerdict) -> Case2Block {
    let candidates = v
        .case_two_candidates
        .iter()
        .map(|c| CandidateRecord {
            e: c.e.clone(),
            d: fmt_rational(&c.d),
            xi: (c.degree() == Some(0)).then(|| xi_witness(r, &theta(m.context(), c))),
        })
        .collect();
    Case2Block {
        candidates,
        solution_found: v.case_two.is_some(),
        solution_candidate: v.case_two.as_ref().map(|s| s.candidate.e.clone()),
        polynomial: v.case_two.as_ref().map(|s| s.p.render()),
        undecided: v.case_two_undecided,
    }
}

pub fn certify(cfg: &RunConfig) -> Result<Certificate, CertError> {
    let case = cfg.case.parse()?;
    let m = match derive_params(case.space, case.potential, case.strength.clone(), case.mu.clone(), case.p.clone(), case.eps.clone()) {
        Ok(m) => m,
        Err(ModelError::DegenerateParameters(g)) => return Ok(degenerate(echo(&case, None, cfg.seed), g)),
        Err(e) => return Err(internal(e)),
    };
    let params = echo(&case, Some(&m), cfg.seed);
    let r = match pipeline_r(&m) {
        Ok(r) => r,
        Err(ModelError::DegenerateParameters(g)) => return Ok(degenerate(params, g)),
        Err(e) => return Err(internal(e)),
    };

    let at_run = table_agrees(&m, &r)?;
    let agreed = random_identity_tests(case.space, case.potential, cfg.identity_points, cfg.seed)?;
    let identity = IdentityTests {
        at_run_parameters: at_run,
        random_points: cfg.identity_points,
        random_agreed: agreed,
        seed: cfg.seed,
    };
    let table_match = at_run && agreed == cfg.identity_points;

    let poles = singular_poles(&m, &r).map_err(internal)?;
    let verdict = analyze(&r, &poles);
    let spectrum = verdict.spectrum.as_ref().map(|s| {
        s.render_table()
            .into_iter()
            .map(|[location, order, alpha, exponents, delta]| SpectrumRow {
                location,
                order: order.parse().expect("order renders as an integer"),
                alpha,
                exponents,
                delta,
            })
            .collect()
    });

    let mu_one = m.mu.is_one();
    let mut guard = None;
    let lemma = match lemma_condition(&m) {
        Ok(rep) => lemma_block(&rep),
        Err(ModelError::HypothesisViolated(failed)) => {
            // μ = 1 falls outside every lemma but is still analysed.
            if !mu_one {
                guard = Some(format!("hypothesis violated: {}", failed.join("; ")));
            }
            LemmaBlock {
                rule: rule_name(m.space, m.potential).to_string(),
                applicable: false,
                hypotheses: failed.into_iter().map(|statement| HypothesisRecord { statement, holds: false }).collect(),
                checks: Vec::new(),
                imaginary_part_identity: None,
                conclusion_holds: false,
            }
        }
        Err(e) => return Err(internal(e)),
    };

    let gate = SoundnessGate {
        table_match,
        case1_at_most_one: verdict.case_one.solutions.len() <= 1,
        case2_absent: verdict.case_two.is_none() && verdict.case_two_undecided == 0,
        case3_impossible: !verdict.case_three_possible,
        mu_not_one: !mu_one,
    };
    let conclusion = if guard.is_some() {
        Conclusion::Degenerate
    } else if verdict.identity_component_abelian == Some(false) {
        if !gate.passes() {
            return Err(internal(format!("non-abelian verdict without a passing soundness gate: {gate:?}")));
        }
        Conclusion::NonintegrabilityCertified
    } else {
        Conclusion::NoObstructionFound
    };
    if !table_match && conclusion != Conclusion::Degenerate {
        return Err(internal("pipeline and closed-form tables disagree"));
    }

    Ok(Certificate {
        params,
        spectrum,
        table_match,
        identity_tests: Some(identity),
        lemma: Some(lemma),
        case1: Some(case1_block(&verdict)),
        case2: Some(case2_block(&m, &r, &verdict)),
        case3_possible: Some(verdict.case_three_possible),
        verdict: Some(VerdictBlock {
            classification: verdict.classification.name().to_string(),
            identity_component_abelian: verdict.identity_component_abelian,
            note: verdict.note.clone(),
        }),
        gate: Some(gate),
        conclusion,
        guard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CaseConfig;

    fn run(space: Space, potential: Potential, mu: &str) -> Certificate {
        let mut case = CaseConfig::reference(space, potential);
        case.mu = mu.into();
        let mut cfg = RunConfig::new(case);
        cfg.identity_points = 3;
        certify(&cfg).unwrap()
    }

    #[test]
    fn sphere_newton_reference_is_certified() {
        let c = run(Space::Sphere, Potential::Newton, "1/2");
        assert_eq!(c.conclusion, Conclusion::NonintegrabilityCertified);
        assert!(c.gate.unwrap().passes());
        let cand = &c.case2.unwrap().candidates[0];
        assert_eq!(cand.e, vec![-2, 2, 2, 2, 2, 6]);
        assert_eq!(cand.xi.as_ref().unwrap().numerator_degree, Some(6));
    }

    #[test]
    fn mu_one_is_not_certified() {
        let c = run(Space::Sphere, Potential::Newton, "1");
        assert_eq!(c.conclusion, Conclusion::NoObstructionFound);
        let c1 = c.case1.unwrap();
        assert_eq!(c1.solutions, 2);
        assert_eq!(c1.data[0].cyclic_order, "2");
        assert!(!c.lemma.unwrap().applicable);
        assert!(c.guard.is_none());
    }

    #[test]
    fn guard_name_is_recorded() {
        let mut case = CaseConfig::reference(Space::Hyperbolic, Potential::Newton);
        case.eps = "-1".into();
        let c = certify(&RunConfig::new(case)).unwrap();
        assert_eq!(c.conclusion, Conclusion::Degenerate);
        assert_eq!(c.guard.as_deref(), Some("kappa^2 = 0"));
    }

    #[test]
    fn violated_hypothesis_is_degenerate() {
        let mut case = CaseConfig::reference(Space::Hyperbolic, Potential::Newton);
        case.eps = "-1/2".into();
        let mut cfg = RunConfig::new(case);
        cfg.identity_points = 1;
        let c = certify(&cfg).unwrap();
        assert_eq!(c.conclusion, Conclusion::Degenerate);
        assert!(c.guard.unwrap().contains("eps < -1"));
        assert!(c.verdict.is_some());
    }
}
