use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twobody_core::exactfield::{int, rat};
use twobody_core::models::{HamiltonianKind, Potential, ReducedHamiltonian, Space};
use twobody_dynamics::{
    central_difference_gradient, from_cylinder, from_r_chart, gradient, h_r_chart, poincare_section,
    to_cylinder, to_r_chart, write_sections_csv, Invariant, PhaseState, Section,
};

fn random_state(rng: &mut ChaCha8Rng, space: Space) -> PhaseState {
    let theta = match space {
        Space::Sphere => rng.gen_range(0.2..1.3),
        Space::Hyperbolic => rng.gen_range(0.2..2.5),
    };
    PhaseState::new(
        space,
        theta,
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

const CASES: [(Space, Potential); 4] = [
    (Space::Sphere, Potential::Newton),
    (Space::Sphere, Potential::Oscillator),
    (Space::Hyperbolic, Potential::Newton),
    (Space::Hyperbolic, Potential::Oscillator),
];

#[test]
fn gradients_match_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (space, pot) in CASES {
        let h = ReducedHamiltonian::full(space, Some((pot, rat(3, 2))), rat(2, 3));
        for _ in 0..100 {
            let x = random_state(&mut rng, space).to_vec();
            let g = gradient(&h, &x).unwrap();
            let fd = central_difference_gradient(&h, &x, 1e-5).unwrap();
            let scale = g.iter().map(|v| v.abs()).fold(1.0, f64::max);
            for (a, b) in g.iter().zip(&fd) {
                assert!((a - b).abs() / scale < 1e-6, "{space}/{pot} at {x:?}: {g:?} vs {fd:?}");
            }
        }
    }
}

#[test]
fn chart_round_trips_and_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (space, pot) in CASES {
        let h = ReducedHamiltonian::full(space, Some((pot, int(2))), rat(1, 3));
        let m1 = 1.7;
        for _ in 0..100 {
            let x = random_state(&mut rng, space);
            let back = from_cylinder(&to_cylinder(&x).unwrap()).unwrap();
            let rb = from_r_chart(&to_r_chart(&x).unwrap()).unwrap();
            for (a, b, c) in [(x.theta, back.theta, rb.theta), (x.p_theta, back.p_theta, rb.p_theta), (x.p0, back.p0, rb.p0), (x.p1, back.p1, rb.p1), (x.p2, back.p2, rb.p2)] {
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{space}: cylinder {x:?} vs {back:?}");
                assert!((a - c).abs() < 1e-12 * a.abs().max(1.0), "{space}: r-chart {x:?} vs {rb:?}");
            }
            let hs = h.eval(&x.to_vec()).unwrap();
            let hr = h_r_chart(&h, &to_r_chart(&x).unwrap(), m1).unwrap();
            // γ²/2 on the sphere, γ/2 on the hyperbolic plane.
            let shift = 0.5 * x.casimir();
            assert!((m1 * hr - shift - hs).abs() < 1e-10 * hs.abs().max(1.0), "{space}/{pot}: {hs} vs {}", m1 * hr - shift);
            let hc = h.eval(&from_cylinder(&to_cylinder(&x).unwrap()).unwrap().to_vec()).unwrap();
            assert!((hc - hs).abs() < 1e-10 * hs.abs().max(1.0));
        }
    }
}

#[test]
fn mass_ratio_one_section_lies_on_integral_level() {
    let h = ReducedHamiltonian::full(Space::Sphere, Some((Potential::Oscillator, int(1))), int(1));
    let x0 = [0.8, 0.0, 0.5, 0.0, 1.5];
    let pts = poincare_section(&h, &x0, &Section::default(), 100.0, 1e-3).unwrap();
    assert!(pts.len() > 5, "{} crossings", pts.len());
    let level = Invariant::MassRatioOne.eval(&h, &x0).unwrap();
    for p in &pts {
        assert!(p.x[3].abs() < 1e-10);
        assert!((Invariant::MassRatioOne.eval(&h, &p.x).unwrap() - level).abs() < 1e-6);
    }
    let mut csv = Vec::new();
    write_sections_csv(&mut csv, HamiltonianKind::FullSphere, &pts).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.starts_with("t,theta,p_theta,p0,p1,p2,crossing_index\n"));
    assert_eq!(text.lines().count(), pts.len() + 1);
}

#[test]
fn free_section_lies_on_first_part_level() {
    let mu = rat(1, 2);
    let h = ReducedHamiltonian::full(Space::Sphere, None, mu.clone());
    let x0 = [0.5865, -0.2639, 0.4731, 0.7677, -0.2168];
    let pts = poincare_section(&h, &x0, &Section::default(), 100.0, 1e-3).unwrap();
    assert!(pts.len() > 5);
    let part = Invariant::Part(HamiltonianKind::FreePartS1, mu);
    let level = part.eval(&h, &x0).unwrap();
    for p in &pts {
        assert!((part.eval(&h, &p.x).unwrap() - level).abs() < 1e-6);
    }
}
