use std::sync::Arc;

use proptest::prelude::*;

use twobody_core::exactfield::{make_context, rat, GaussRational, TowerContext, TowerScalar};
use twobody_core::kovacic::{analyze, classify, CaseOneResult, ProductTest, RiccatiSolution};
use twobody_core::linode::{Location, NormalFormODE, SingularPoint, SingularitySpectrum};
use twobody_core::ratcalc::{partial_fractions, Poly, RatFunc};

fn field_ctx() -> Arc<TowerContext> {
    make_context(GaussRational::from_int(2), GaussRational::from_int(3)).unwrap()
}

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=6)
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (small_rat(), small_rat()).prop_map(|((a, b), (c, d))| GaussRational::new(rat(a, b), rat(c, d)))
}

fn scalar(ctx: Arc<TowerContext>) -> impl Strategy<Value = TowerScalar> {
    [gauss(), gauss(), gauss(), gauss()].prop_map(move |c| TowerScalar::from_coords(&ctx, c))
}

fn poly(ctx: Arc<TowerContext>, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(gauss(), 1..=max_deg + 1).prop_map(move |c| Poly::from_gauss(&ctx, &c))
}

fn ratfunc(ctx: Arc<TowerContext>) -> impl Strategy<Value = RatFunc> {
    (poly(ctx.clone(), 3), poly(ctx, 2))
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tower_field_axioms(x in scalar(field_ctx()), y in scalar(field_ctx()), w in scalar(field_ctx())) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &w, &x + &(&y + &w));
        prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
        prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn split_algebra_inverse_matches_invertibility(x in scalar(make_context(GaussRational::imag(rat(1, 2)), GaussRational::imag(rat(-1, 2))).unwrap())) {
        match x.inv() {
            Ok(inv) => prop_assert!((&x * &inv).is_one()),
            Err(_) => prop_assert!(!x.is_invertible()),
        }
    }

    #[test]
    fn leibniz_rule(f in ratfunc(field_ctx()), g in ratfunc(field_ctx())) {
        let lhs = (&f * &g).derivative();
        let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in ratfunc(field_ctx()), g in ratfunc(field_ctx()), x in gauss()) {
        let c = field_ctx();
        let x = TowerScalar::from_gauss(&c, x);
        if let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) {
            prop_assert_eq!((&f * &g).eval(&x).unwrap(), &fx * &gx);
            prop_assert_eq!((&f + &g).eval(&x).unwrap(), &fx + &gx);
        }
    }

    #[test]
    fn partial_fractions_reconstruct(
        coeffs in prop::collection::vec(gauss(), 6),
        poles in prop::collection::btree_set(-5i64..=5, 3),
        tail in poly(field_ctx(), 1),
    ) {
        let c = field_ctx();
        let poles: Vec<TowerScalar> = poles.into_iter().map(|p| TowerScalar::from_int(&c, p)).collect();
        let mut terms = Vec::new();
        for (j, p) in poles.iter().enumerate() {
            terms.push((p.clone(), 2, TowerScalar::from_gauss(&c, coeffs[2 * j].clone())));
            terms.push((p.clone(), 1, TowerScalar::from_gauss(&c, coeffs[2 * j + 1].clone())));
        }
        let f = RatFunc::from_pole_terms(&c, &terms, Some(&tail));
        let roots: Vec<(TowerScalar, usize)> = poles.iter().map(|p| (p.clone(), 2)).collect();
        // Zero top coefficients reduce the denominator; only full-order poles apply.
        let pf = match partial_fractions(&f, &roots) {
            Ok(pf) => pf,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(pf.reconstruct(), f);
        for (p, k, a) in &terms {
            prop_assert_eq!(&pf.coefficient(p, *k), a);
        }
        prop_assert_eq!(&pf.polynomial_part, &tail);
    }

    #[test]
    fn euler_equations_are_never_non_abelian(a in small_rat(), z0 in -4i64..=4) {
        // y″ = a/(z − z₀)² y has the solutions (z − z₀)^ρ.
        let c = field_ctx();
        let zz = Poly::linear_root(&TowerScalar::from_int(&c, z0));
        let r = NormalFormODE {
            r: RatFunc::new(Poly::constant(TowerScalar::from_rational(&c, rat(a.0, a.1))), &zz * &zz).unwrap(),
        };
        let v = analyze(&r, &[(TowerScalar::from_int(&c, z0), 2)]);
        prop_assert!(!v.classification.is_non_abelian());
        prop_assert_ne!(v.identity_component_abelian, Some(false));
    }

    #[test]
    fn constant_potentials_are_never_non_abelian(a in small_rat()) {
        let c = field_ctx();
        let r = NormalFormODE { r: RatFunc::from_rational(&c, rat(a.0, a.1)) };
        let v = analyze(&r, &[]);
        prop_assert!(!v.classification.is_non_abelian());
    }
}

fn synthetic_spectrum(ctx: &Arc<TowerContext>, rational: &[bool]) -> SingularitySpectrum {
    let mut pts: Vec<SingularPoint> = rational
        .iter()
        .enumerate()
        .map(|(j, &q)| {
            // α = 3/4 gives Δ = 2; α = 1 gives Δ = √5.
            let alpha = if q { rat(3, 4) } else { rat(1, 1) };
            SingularPoint::new(
                Location::Finite(TowerScalar::from_int(ctx, j as i64)),
                2,
                TowerScalar::from_rational(ctx, alpha),
            )
        })
        .collect();
    pts.push(SingularPoint::new(Location::Infinity, 2, TowerScalar::from_rational(ctx, rat(3, 4))));
    SingularitySpectrum::from_points(pts)
}

fn fake_solution(ctx: &Arc<TowerContext>, k: i64) -> RiccatiSolution {
    RiccatiSolution {
        omega: RatFunc::from_rational(ctx, rat(k, 1)),
        exponent_choices: vec![(Location::Finite(TowerScalar::zero(ctx)), rat(1, 2))],
        p: Poly::one(ctx),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn classification_is_monotone_in_case_one_evidence(
        rational in prop::collection::vec(any::<bool>(), 1..4),
        found in 0usize..2,
        undecided in 0usize..2,
        product_decided in any::<bool>(),
        product_found in any::<bool>(),
        case_two_undecided in 0usize..2,
        case_three in any::<bool>(),
    ) {
        let c = field_ctx();
        let spec = synthetic_spectrum(&c, &rational);
        let pruned: Vec<Location> = spec.points.iter().filter(|p| p.delta_rational.is_none()).map(|p| p.location.clone()).collect();
        let product = ProductTest {
            floors: Vec::new(),
            growth_bound: 1,
            max_p_degree: Some(0),
            v: product_found.then(|| RatFunc::one(&c)),
            decided: product_decided,
        };
        let before = CaseOneResult { solutions: (0..found as i64).map(|k| fake_solution(&c, k)).collect(), pruned: pruned.clone(), undecided };
        let after = CaseOneResult { solutions: (0..=found as i64).map(|k| fake_solution(&c, k)).collect(), pruned, undecided };
        let (_, ab_before) = classify(&spec, &before, Some(&product), None, case_two_undecided, case_three);
        let (_, ab_after) = classify(&spec, &after, Some(&product), None, case_two_undecided, case_three);
        if ab_before == Some(true) {
            prop_assert_eq!(ab_after, Some(true));
        }
        prop_assert!(after.solutions.len() < 2 || ab_after == Some(true));
    }
}
