//! Decision table from the case-I/II/III evidence to the identity
//! component of the differential Galois group.

use std::fmt;

use num_bigint::BigInt;

use crate::linode::{singularity_spectrum, NormalFormODE, OdeError, SingularitySpectrum};
use crate::exactfield::TowerScalar;
use crate::ratcalc::CalcError;

use super::case1::{case1_search, product_test, CaseOneResult, ProductTest};
use super::case2::{candidates, search_p, CaseTwoSolution, ECandidate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Exactly one case-I solution, not of finite order: G = T.
    FullTriangularNonAbelian,
    /// Exactly one case-I solution y₁ with y₁^m ∈ C(z): G₀ is additive.
    ProperTriangularAbelian { cyclic_order: BigInt },
    /// Two independent case-I solutions; G is diagonal, cyclic of the
    /// given order when the exponents are rational.
    DiagonalOrSmallerAbelian { cyclic_order: Option<BigInt> },
    /// Finite group recognised from case-III data. Not produced by
    /// `classify`, which only screens case III out.
    FiniteAbelian,
    /// No case-I, II or III solution: G = SL(2, C).
    Sl2NonAbelian,
    /// At most one case-I solution, and any such solution has an
    /// irrational exponent; cases II and III excluded. G is T or SL(2, C).
    FullTriangularOrSl2NonAbelian,
    Inconclusive,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Self::FullTriangularNonAbelian => "FullTriangular_NonAbelian",
            Self::ProperTriangularAbelian { .. } => "ProperTriangular_Abelian",
            Self::DiagonalOrSmallerAbelian { .. } => "DiagonalOrSmaller_Abelian",
            Self::FiniteAbelian => "Finite_Abelian",
            Self::Sl2NonAbelian => "SL2_NonAbelian",
            Self::FullTriangularOrSl2NonAbelian => "FullTriangularOrSL2_NonAbelian",
            Self::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_non_abelian(&self) -> bool {
        matches!(self, Self::FullTriangularNonAbelian | Self::Sl2NonAbelian | Self::FullTriangularOrSl2NonAbelian)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct GaloisVerdict {
    pub spectrum: Option<SingularitySpectrum>,
    pub case_one: CaseOneResult,
    pub product: Option<ProductTest>,
    pub case_two_candidates: Vec<ECandidate>,
    pub case_two: Option<CaseTwoSolution>,
    /// Candidates whose step-3 system was branch dependent.
    pub case_two_undecided: usize,
    pub case_three_possible: bool,
    pub classification: Classification,
    pub identity_component_abelian: Option<bool>,
    /// Why the spectrum could not be computed, if it could not.
    pub note: Option<String>,
}

/// Case III needs every exponent difference rational.
pub fn case_three_possible(spectrum: &SingularitySpectrum) -> bool {
    spectrum.points.iter().all(|p| p.delta_rational.is_some())
}

/// Applies the decision table. `case_two_undecided` counts candidates
/// whose step-3 system could not be settled.
pub fn classify(
    spectrum: &SingularitySpectrum,
    case_one: &CaseOneResult,
    product: Option<&ProductTest>,
    case_two: Option<&CaseTwoSolution>,
    case_two_undecided: usize,
    case_three: bool,
) -> (Classification, Option<bool>) {
    let any_irrational = spectrum.points.iter().any(|p| p.delta_rational.is_none());
    let no_product = product.is_some_and(|t| t.decided && t.v.is_none());
    match case_one.solutions.len() {
        0 => {}
        1 => {
            if case_one.complete() || no_product {
                return (
                    Classification::ProperTriangularAbelian { cyclic_order: case_one.solutions[0].cyclic_order() },
                    Some(true),
                );
            }
            return (Classification::Inconclusive, None);
        }
        _ => {
            let m = case_one.solutions[0].cyclic_order();
            return (Classification::DiagonalOrSmallerAbelian { cyclic_order: Some(m) }, Some(true));
        }
    }
    if case_two.is_some() {
        let abelian = case_one.complete().then_some(true);
        return (Classification::Inconclusive, abelian);
    }
    if case_two_undecided > 0 || case_three {
        return (Classification::Inconclusive, None);
    }
    if case_one.complete() {
        return (Classification::Sl2NonAbelian, Some(false));
    }
    // A case-I solution would carry an irrational exponent somewhere, so
    // no power of it is rational; with at most one such solution the
    // group is T or SL(2, C).
    if any_irrational && no_product {
        return (Classification::FullTriangularOrSl2NonAbelian, Some(false));
    }
    (Classification::Inconclusive, None)
}

fn inconclusive(note: String) -> GaloisVerdict {
    GaloisVerdict {
        spectrum: None,
        case_one: CaseOneResult { solutions: Vec::new(), pruned: Vec::new(), undecided: 0 },
        product: None,
        case_two_candidates: Vec::new(),
        case_two: None,
        case_two_undecided: 0,
        case_three_possible: true,
        classification: Classification::Inconclusive,
        identity_component_abelian: None,
        note: Some(note),
    }
}

/// Runs every test on y″ = r y with the given finite poles.
pub fn analyze(r: &NormalFormODE, poles: &[(TowerScalar, usize)]) -> GaloisVerdict {
    let spectrum = match singularity_spectrum(r, poles) {
        Ok(s) => s,
        Err(e @ OdeError::NonFuchsian { .. }) => return inconclusive(e.to_string()),
        Err(e) => return inconclusive(format!("spectrum unavailable: {e}")),
    };
    let case_one = case1_search(r, &spectrum);
    let product = (case_one.solutions.len() < 2).then(|| product_test(r, &spectrum));
    let case_two_candidates = candidates(&spectrum);
    let mut case_two = None;
    let mut case_two_undecided = 0;
    for cand in &case_two_candidates {
        match search_p(r, cand) {
            Ok(Some(sol)) => {
                case_two = Some(sol);
                break;
            }
            Ok(None) => {}
            Err(CalcError::ZeroDivisor) => case_two_undecided += 1,
            Err(e) => return inconclusive(format!("step 3 failed: {e}")),
        }
    }
    let case_three = case_three_possible(&spectrum);
    let (classification, abelian) =
        classify(&spectrum, &case_one, product.as_ref(), case_two.as_ref(), case_two_undecided, case_three);
    GaloisVerdict {
        spectrum: Some(spectrum),
        case_one,
        product,
        case_two_candidates,
        case_two,
        case_two_undecided,
        case_three_possible: case_three,
        classification,
        identity_component_abelian: abelian,
        note: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{make_context, GaussRational};
    use crate::ratcalc::{Poly, RatFunc};

    #[test]
    fn exponential_control_is_inconclusive() {
        // y″ = y is irregular at infinity.
        let c = make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap();
        let r = NormalFormODE { r: RatFunc::one(&c) };
        let v = analyze(&r, &[]);
        assert_eq!(v.classification, Classification::Inconclusive);
        assert!(v.note.is_some());
        assert!(!v.classification.is_non_abelian());
    }

    #[test]
    fn euler_equation_is_diagonal() {
        let c = make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap();
        let z = Poly::z(&c);
        let r = NormalFormODE {
            r: RatFunc::new(Poly::constant(TowerScalar::from_rational(&c, crate::exactfield::rat(3, 4))), &z * &z)
                .unwrap(),
        };
        let v = analyze(&r, &[(TowerScalar::zero(&c), 2)]);
        assert_eq!(v.classification, Classification::DiagonalOrSmallerAbelian { cyclic_order: Some(BigInt::from(2)) });
        assert_eq!(v.identity_component_abelian, Some(true));
    }
}
