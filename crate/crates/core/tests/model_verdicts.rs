use twobody_core::exactfield::{int, rat, Rational};
use twobody_core::kovacic::{analyze, Classification};
use twobody_core::models::{derive_params, pipeline_r, singular_poles, ModelParams, Potential, Space};

fn reference(space: Space, potential: Potential, mu: Rational) -> ModelParams {
    let (strength, eps) = match (space, potential) {
        (Space::Sphere, Potential::Newton) => (int(2), int(0)),
        (Space::Hyperbolic, Potential::Newton) => (int(1), int(-2)),
        (_, Potential::Oscillator) => (int(1), int(-1)),
    };
    derive_params(space, potential, strength, mu, int(1), eps).unwrap()
}

const CASES: [(Space, Potential); 4] = [
    (Space::Sphere, Potential::Newton),
    (Space::Hyperbolic, Potential::Newton),
    (Space::Sphere, Potential::Oscillator),
    (Space::Hyperbolic, Potential::Oscillator),
];

#[test]
fn reference_parameters_are_non_abelian() {
    for (space, pot) in CASES {
        let m = reference(space, pot, rat(1, 2));
        let r = pipeline_r(&m).unwrap();
        let poles = singular_poles(&m, &r).unwrap();
        let v = analyze(&r, &poles);
        assert_eq!(v.classification, Classification::FullTriangularOrSl2NonAbelian, "{space}/{pot}");
        assert_eq!(v.identity_component_abelian, Some(false));
        assert!(!v.case_three_possible);
        assert_eq!(v.case_two_candidates.len(), 1);
    }
}

#[test]
fn mu_one_is_diagonal() {
    for (space, pot) in CASES {
        let m = reference(space, pot, int(1));
        let r = pipeline_r(&m).unwrap();
        let poles = singular_poles(&m, &r).unwrap();
        let v = analyze(&r, &poles);
        assert_eq!(v.identity_component_abelian, Some(true), "{space}/{pot}");
        assert!(matches!(v.classification, Classification::DiagonalOrSmallerAbelian { .. }));
    }
}
