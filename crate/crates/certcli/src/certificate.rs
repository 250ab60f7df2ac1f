//! The certificate record and its JSON and text renderings. Exact values
//! are stored as their canonical strings so the JSON is stable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{PotentialName, SpaceName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    NonintegrabilityCertified,
    NoObstructionFound,
    Degenerate,
}

impl Conclusion {
    pub fn name(&self) -> &'static str {
        match self {
            Conclusion::NonintegrabilityCertified => "NonintegrabilityCertified",
            Conclusion::NoObstructionFound => "NoObstructionFound",
            Conclusion::Degenerate => "Degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub space: SpaceName,
    pub potential: PotentialName,
    pub strength: String,
    pub mu: String,
    pub p: String,
    pub eps: String,
    pub kappa_sq: Option<String>,
    pub lambda_sq: Option<String>,
    pub z0: Option<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub location: String,
    pub order: usize,
    pub alpha: String,
    pub exponents: String,
    pub delta: String,
}

/// The pipeline r(z) against the closed-form tables, at the run's own
/// parameters and at seeded random ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityTests {
    pub at_run_parameters: bool,
    pub random_points: usize,
    pub random_agreed: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub index: usize,
    pub nonreal: bool,
    pub method: String,
    pub min_abs_imag: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaBlock {
    pub rule: String,
    pub applicable: bool,
    pub hypotheses: Vec<HypothesisRecord>,
    pub checks: Vec<CoefficientRecord>,
    pub imaginary_part_identity: Option<bool>,
    pub conclusion_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentChoice {
    pub location: String,
    pub exponent: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiccatiRecord {
    pub omega: String,
    pub exponents: Vec<ExponentChoice>,
    pub cyclic_order: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub max_p_degree: Option<usize>,
    pub v: Option<String>,
    pub decided: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case1Block {
    pub solutions: usize,
    pub complete: bool,
    pub pruned: Vec<String>,
    pub undecided: usize,
    pub data: Vec<RiccatiRecord>,
    pub product_test: Option<ProductRecord>,
}

/// Ξ for a degree-0 candidate, with its denominator made monic. A nonzero
/// Ξ rules the candidate out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiWitness {
    pub nonzero: bool,
    pub numerator_degree: Option<usize>,
    pub leading_coefficient: Option<String>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub e: Vec<i64>,
    pub d: String,
    pub xi: Option<XiWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case2Block {
    pub candidates: Vec<CandidateRecord>,
    pub solution_found: bool,
    pub solution_candidate: Option<Vec<i64>>,
    pub polynomial: Option<String>,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictBlock {
    pub classification: String,
    pub identity_component_abelian: Option<bool>,
    pub note: Option<String>,
}

/// Each condition required before nonintegrability is claimed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoundnessGate {
    pub table_match: bool,
    pub case1_at_most_one: bool,
    pub case2_absent: bool,
    pub case3_impossible: bool,
    pub mu_not_one: bool,
}

impl SoundnessGate {
    pub fn passes(&self) -> bool {
        self.table_match && self.case1_at_most_one && self.case2_absent && self.case3_impossible && self.mu_not_one
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: ParamsEcho,
    pub spectrum: Option<Vec<SpectrumRow>>,
    pub table_match: bool,
    pub identity_tests: Option<IdentityTests>,
    pub lemma: Option<LemmaBlock>,
    pub case1: Option<Case1Block>,
    pub case2: Option<Case2Block>,
    pub case3_possible: Option<bool>,
    pub verdict: Option<VerdictBlock>,
    pub gate: Option<SoundnessGate>,
    pub conclusion: Conclusion,
    /// The failed guard or hypothesis behind a Degenerate conclusion.
    pub guard: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn render_report(cert: &Certificate, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(cert).expect("certificate serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(cert).into_bytes(),
    }
}

pub fn parse_certificate(bytes: &[u8]) -> serde_json::Result<Certificate> {
    serde_json::from_slice(bytes)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(c: &Certificate) -> String {
    let mut o = String::new();
    let p = &c.params;
    let _ = writeln!(o, "case        {:?}/{:?}", p.space, p.potential);
    let _ = writeln!(o, "parameters  strength={} mu={} p={} eps={}", p.strength, p.mu, p.p, p.eps);
    if let (Some(k), Some(l), Some(z)) = (&p.kappa_sq, &p.lambda_sq, &p.z0) {
        let _ = writeln!(o, "            kappa^2={k} lambda^2={l} z0={z}");
    }
    if let Some(g) = &c.guard {
        let _ = writeln!(o, "guard       {g}");
    }
    let _ = writeln!(o, "table match {}", yes(c.table_match));
    if let Some(t) = &c.identity_tests {
        let _ = writeln!(o, "            {}/{} random points agree (seed {})", t.random_agreed, t.random_points, t.seed);
    }
    if let Some(rows) = &c.spectrum {
        let _ = writeln!(o, "spectrum");
        for r in rows {
            let _ = writeln!(o, "  {} | order {} | alpha {} | exponents {} | delta {}", r.location, r.order, r.alpha, r.exponents, r.delta);
        }
    }
    if let Some(l) = &c.lemma {
        let status = if !l.applicable {
            "not applicable"
        } else if l.conclusion_holds {
            "holds"
        } else {
            "fails"
        };
        let _ = writeln!(o, "lemma       {} ({status})", l.rule);
        for h in &l.hypotheses {
            let _ = writeln!(o, "  [{}] {}", if h.holds { "x" } else { " " }, h.statement);
        }
        for ch in &l.checks {
            let _ = writeln!(o, "  alpha_{} nonreal={} ({}, |Im| >= {:.3e})", ch.index, ch.nonreal, ch.method, ch.min_abs_imag);
        }
    }
    if let Some(c1) = &c.case1 {
        let _ = writeln!(o, "case 1      {} solution(s), search complete: {}", c1.solutions, yes(c1.complete));
        for s in &c1.data {
            let _ = writeln!(o, "  omega = {}", s.omega);
        }
        if let Some(pt) = &c1.product_test {
            let _ = writeln!(o, "  product test: rational v {}", if pt.v.is_some() { "found" } else { "absent" });
        }
    }
    if let Some(c2) = &c.case2 {
        let _ = writeln!(o, "case 2      {} candidate(s), solution found: {}", c2.candidates.len(), yes(c2.solution_found));
        for cand in &c2.candidates {
            let _ = write!(o, "  e={:?} d={}", cand.e, cand.d);
            if let Some(x) = &cand.xi {
                let lead = x.leading_coefficient.as_deref().unwrap_or("0");
                let _ = write!(o, " Xi nonzero={} deg={:?} lead={}", x.nonzero, x.numerator_degree, lead);
            }
            let _ = writeln!(o);
        }
    }
    if let Some(b) = c.case3_possible {
        let _ = writeln!(o, "case 3      possible: {}", yes(b));
    }
    if let Some(v) = &c.verdict {
        let _ = writeln!(o, "galois      {} (identity component abelian: {:?})", v.classification, v.identity_component_abelian);
    }
    let _ = writeln!(o, "conclusion  {}", c.conclusion.name());
    o
}
