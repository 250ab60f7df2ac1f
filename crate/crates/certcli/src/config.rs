use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use twobody_core::exactfield::{parse_rational, ParseRationalError, Rational};
use twobody_core::models::{Potential, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceName {
    Sphere,
    Hyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialName {
    Newton,
    Oscillator,
}

impl From<SpaceName> for Space {
    fn from(s: SpaceName) -> Self {
        match s {
            SpaceName::Sphere => Space::Sphere,
            SpaceName::Hyperbolic => Space::Hyperbolic,
        }
    }
}

impl From<Space> for SpaceName {
    fn from(s: Space) -> Self {
        match s {
            Space::Sphere => SpaceName::Sphere,
            Space::Hyperbolic => SpaceName::Hyperbolic,
        }
    }
}

impl From<PotentialName> for Potential {
    fn from(p: PotentialName) -> Self {
        match p {
            PotentialName::Newton => Potential::Newton,
            PotentialName::Oscillator => Potential::Oscillator,
        }
    }
}

impl From<Potential> for PotentialName {
    fn from(p: Potential) -> Self {
        match p {
            Potential::Newton => PotentialName::Newton,
            Potential::Oscillator => PotentialName::Oscillator,
        }
    }
}

impl std::str::FromStr for SpaceName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sphere" => Ok(SpaceName::Sphere),
            "hyperbolic" => Ok(SpaceName::Hyperbolic),
            _ => Err(format!("unknown space `{s}` (sphere, hyperbolic)")),
        }
    }
}

impl std::str::FromStr for PotentialName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "newton" => Ok(PotentialName::Newton),
            "oscillator" => Ok(PotentialName::Oscillator),
            _ => Err(format!("unknown potential `{s}` (newton, oscillator)")),
        }
    }
}

/// One parameter set. Every number is an exact `n/d` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub space: SpaceName,
    pub potential: PotentialName,
    pub strength: String,
    pub mu: String,
    pub p: String,
    pub eps: String,
}

/// Value lists for a sweep; an empty list keeps the base case value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepRanges {
    pub strength: Vec<String>,
    pub mu: Vec<String>,
    pub p: Vec<String>,
    pub eps: Vec<String>,
}

fn default_identity_points() -> usize {
    20
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub case: CaseConfig,
    /// Seeds the random parameter points of the table identity test.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_identity_points")]
    pub identity_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepRanges>,
    /// Certificate path for `certify`, output directory for `sweep`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("field `{field}`: {source}")]
    Rational { field: &'static str, source: ParseRationalError },
    #[error("missing parameter `{0}`")]
    Missing(&'static str),
    #[error("config file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config file: {0}")]
    Io(#[from] std::io::Error),
}

/// A case with its numbers parsed.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedCase {
    pub space: Space,
    pub potential: Potential,
    pub strength: Rational,
    pub mu: Rational,
    pub p: Rational,
    pub eps: Rational,
}

fn field(name: &'static str, text: &str) -> Result<Rational, ConfigError> {
    parse_rational(text).map_err(|source| ConfigError::Rational { field: name, source })
}

impl CaseConfig {
    pub fn parse(&self) -> Result<ParsedCase, ConfigError> {
        Ok(ParsedCase {
            space: self.space.into(),
            potential: self.potential.into(),
            strength: field("strength", &self.strength)?,
            mu: field("mu", &self.mu)?,
            p: field("p", &self.p)?,
            eps: field("eps", &self.eps)?,
        })
    }

    /// The parameter set certified as nonintegrable for each case.
    pub fn reference(space: Space, potential: Potential) -> Self {
        let (strength, eps) = match (space, potential) {
            (Space::Sphere, Potential::Newton) => ("2", "0"),
            (Space::Hyperbolic, Potential::Newton) => ("1", "-2"),
            (_, Potential::Oscillator) => ("1", "-1"),
        };
        CaseConfig {
            space: space.into(),
            potential: potential.into(),
            strength: strength.into(),
            mu: "1/2".into(),
            p: "1".into(),
            eps: eps.into(),
        }
    }
}

impl RunConfig {
    pub fn new(case: CaseConfig) -> Self {
        RunConfig { case, seed: 0, identity_points: default_identity_points(), sweep: None, out: None }
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Parses every number, including the sweep lists.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.case.parse()?;
        if let Some(s) = &self.sweep {
            for (name, list) in [("strength", &s.strength), ("mu", &s.mu), ("p", &s.p), ("eps", &s.eps)] {
                for v in list {
                    field(name, v)?;
                }
            }
        }
        Ok(())
    }

    /// The cartesian product of the sweep lists in a fixed order
    /// (strength, mu, p, eps, each varying slowest to fastest).
    pub fn expand_sweep(&self) -> Vec<CaseConfig> {
        let ranges = self.sweep.clone().unwrap_or_default();
        let pick = |list: &Vec<String>, base: &String| if list.is_empty() { vec![base.clone()] } else { list.clone() };
        let strengths = pick(&ranges.strength, &self.case.strength);
        let mus = pick(&ranges.mu, &self.case.mu);
        let ps = pick(&ranges.p, &self.case.p);
        let epss = pick(&ranges.eps, &self.case.eps);
        let mut out = Vec::new();
        for s in &strengths {
            for mu in &mus {
                for p in &ps {
                    for e in &epss {
                        out.push(CaseConfig {
                            strength: s.clone(),
                            mu: mu.clone(),
                            p: p.clone(),
                            eps: e.clone(),
                            ..self.case.clone()
                        });
                    }
                }
            }
        }
        out
    }
}
