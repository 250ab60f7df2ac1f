use proptest::prelude::*;
use twobody_cert::config::{CaseConfig, PotentialName, SpaceName};
use twobody_cert::{certify, parse_certificate, render_report, Conclusion, Format, RunConfig};

fn ratio() -> impl Strategy<Value = String> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| format!("{n}/{d}"))
}

fn case(mu: impl Strategy<Value = String>) -> impl Strategy<Value = CaseConfig> {
    (
        prop_oneof![Just(SpaceName::Sphere), Just(SpaceName::Hyperbolic)],
        prop_oneof![Just(PotentialName::Newton), Just(PotentialName::Oscillator)],
        (1i64..=9, 1i64..=5).prop_map(|(n, d)| format!("{n}/{d}")),
        mu,
        ratio(),
        ratio(),
    )
        .prop_map(|(space, potential, strength, mu, p, eps)| CaseConfig { space, potential, strength, mu, p, eps })
}

fn run(c: CaseConfig, seed: u64) -> RunConfig {
    RunConfig { seed, identity_points: 1, ..RunConfig::new(c) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mass_ratio_one_is_never_certified(c in case(Just("1".to_string()))) {
        let cert = certify(&run(c, 0)).unwrap();
        prop_assert_ne!(cert.conclusion, Conclusion::NonintegrabilityCertified);
    }

    #[test]
    fn certified_implies_gate(c in case(ratio()), seed in 0u64..4) {
        let cert = certify(&run(c, seed)).unwrap();
        let abelian = cert.verdict.as_ref().and_then(|v| v.identity_component_abelian);
        if cert.conclusion == Conclusion::NonintegrabilityCertified {
            prop_assert!(cert.gate.as_ref().unwrap().passes());
            prop_assert_eq!(abelian, Some(false));
            prop_assert!(cert.lemma.as_ref().unwrap().applicable);
        }
        if cert.conclusion == Conclusion::NoObstructionFound {
            prop_assert_ne!(abelian, Some(false));
        }
        if cert.conclusion == Conclusion::Degenerate {
            prop_assert!(cert.guard.is_some());
        }
    }

    #[test]
    fn json_round_trip_and_determinism(c in case(ratio()), seed in 0u64..4) {
        let cfg = run(c, seed);
        let a = render_report(&certify(&cfg).unwrap(), Format::Json);
        let b = render_report(&certify(&cfg).unwrap(), Format::Json);
        prop_assert_eq!(&a, &b);
        let parsed = parse_certificate(&a).unwrap();
        prop_assert_eq!(render_report(&parsed, Format::Json), a);
    }
}
