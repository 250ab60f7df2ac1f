use twobody_core::exactfield::{int, rat};
use twobody_core::models::{Potential, ReducedHamiltonian, Space};
use twobody_dynamics::{integrate, IntegrateOptions, TrajectoryReport};

const T_END: f64 = 100.0;

fn run(h: &ReducedHamiltonian, x0: &[f64]) -> TrajectoryReport {
    integrate(h, x0, T_END, &IntegrateOptions::default()).unwrap()
}

fn assert_conserved(label: &str, r: &TrajectoryReport) {
    println!("{label}: energy {:e}, casimir {:?}, extras {:?}", r.drift.energy, r.drift.casimir, r.drift.extras);
    assert!(r.drift.energy < 1e-8, "{label}: energy drift {:e}", r.drift.energy);
    if let Some(c) = r.drift.casimir {
        assert!(c < 1e-10, "{label}: Casimir drift {c:e}");
    }
    for (name, d) in &r.drift.extras {
        assert!(*d < 1e-8, "{label}: {name} drift {d:e}");
    }
}

#[test]
fn bounded_orbits_conserve_energy_and_casimir() {
    let cases = [
        (Space::Sphere, Potential::Newton, 1, [1.2, 0.1, 0.3, 0.2, 0.6]),
        (Space::Sphere, Potential::Oscillator, 1, [0.6, 0.0, 0.1, 0.1, 0.8]),
        (Space::Hyperbolic, Potential::Newton, 1, [0.6836, 0.0607, 0.2427, -0.7792, 0.7672]),
        (Space::Hyperbolic, Potential::Oscillator, 4, [0.4457, 0.0783, -0.0064, 0.0474, 0.4338]),
    ];
    for (space, pot, k, x0) in cases {
        let h = ReducedHamiltonian::full(space, Some((pot, int(k))), rat(1, 2));
        let r = integrate(&h, &x0, T_END, &IntegrateOptions::default()).unwrap_or_else(|e| panic!("{space}/{pot}: {e}"));
        assert_conserved(&format!("{space}/{pot}"), &r);
    }
}

#[test]
fn mass_ratio_one_has_extra_integral() {
    let cases = [
        (Space::Sphere, Potential::Newton, [1.2574, 0.2251, -0.3850, -0.8778, -0.2082]),
        (Space::Sphere, Potential::Oscillator, [0.8, 0.0, 0.5, 0.0, 1.5]),
        (Space::Hyperbolic, Potential::Newton, [0.7252, 0.2376, -0.0788, 0.1659, -0.7025]),
        (Space::Hyperbolic, Potential::Oscillator, [0.6554, -0.1871, 0.4369, 0.2534, 0.2547]),
    ];
    for (space, pot, x0) in cases {
        let h = ReducedHamiltonian::full(space, Some((pot, int(1))), int(1));
        let r = run(&h, &x0);
        assert_eq!(r.drift.extras.len(), 1);
        assert_conserved(&format!("{space}/{pot} mu=1"), &r);
    }
}

#[test]
fn free_motion_split_is_conserved() {
    let h = ReducedHamiltonian::full(Space::Sphere, None, rat(1, 2));
    let r = run(&h, &[0.5865, -0.2639, 0.4731, 0.7677, -0.2168]);
    assert_eq!(r.drift.extras.len(), 2);
    assert_conserved("sphere V=0", &r);
}

#[test]
fn adaptive_integrator_agrees_with_rk4() {
    let h = ReducedHamiltonian::full(Space::Sphere, Some((Potential::Newton, int(1))), rat(1, 2));
    let x0 = [1.2, 0.1, 0.3, 0.2, 0.6];
    let a = integrate(&h, &x0, 10.0, &IntegrateOptions::adaptive()).unwrap();
    let b = integrate(&h, &x0, 10.0, &IntegrateOptions::default()).unwrap();
    assert!(a.drift.energy < 1e-8 && a.drift.casimir.unwrap() < 1e-8);
    let (xa, xb) = (&a.samples.last().unwrap().x, &b.samples.last().unwrap().x);
    for (p, q) in xa.iter().zip(xb) {
        assert!((p - q).abs() < 1e-7, "{xa:?} vs {xb:?}");
    }
    assert!(a.steps < b.steps);
}

#[test]
fn restricted_free_problem_is_integrable() {
    let h = ReducedHamiltonian::restricted(None, int(1), rat(1, 3));
    let r = run(&h, &[1.1, 0.2, 0.4, 0.5]);
    assert!(r.drift.casimir.is_none());
    assert_eq!(r.drift.extras.len(), 2);
    assert_conserved("restricted V=0", &r);
}

#[test]
fn casimir_violation_aborts() {
    let h = ReducedHamiltonian::full(Space::Sphere, Some((Potential::Newton, int(1))), rat(1, 2));
    let opts = IntegrateOptions { method: twobody_dynamics::Method::Rk4 { step: 0.2 }, casimir_limit: Some(1e-12), ..Default::default() };
    assert!(matches!(integrate(&h, &[1.2, 0.1, 0.3, 0.2, 0.6], 50.0, &opts), Err(twobody_dynamics::DynError::CasimirViolation { .. })));
}

#[test]
fn fixed_first_body_conserves_p2() {
    for space in [Space::Sphere, Space::Hyperbolic] {
        let h = ReducedHamiltonian::central(space, Some((Potential::Newton, int(1))), rat(1, 2));
        let r = run(&h, &[1.2, 0.1, 0.3, 0.2, 0.6]);
        assert_eq!(r.drift.extras[0].0, "p2");
        assert_conserved(&format!("{space} central"), &r);
    }
}
