use twobody_core::exactfield::{int, rat, Rational};
use twobody_core::models::{derive_params, ModelParams, Potential, Space};
use twobody_dynamics::{
    chain_rule_check, gamma_relation_residual, gamma_trajectory, gamma_trajectory_restricted, nve_time_domain,
    NveKind,
};

/// Parameter sets whose Γ is real, with a time window before any collision.
fn real_gamma_cases() -> Vec<(ModelParams, f64)> {
    let mk = |space, pot, s: i64, eps: Rational| derive_params(space, pot, int(s), rat(1, 2), int(1), eps).unwrap();
    vec![
        (mk(Space::Sphere, Potential::Newton, 2, int(0)), 0.3),
        (mk(Space::Hyperbolic, Potential::Newton, 1, int(-2)), 0.25),
        (mk(Space::Sphere, Potential::Oscillator, 1, rat(1, 2)), 0.5),
        (mk(Space::Hyperbolic, Potential::Oscillator, 1, rat(3, 8)), 1.0),
    ]
}

#[test]
fn gamma_relation_is_maintained() {
    for (m, t_end) in real_gamma_cases() {
        let traj = gamma_trajectory(&m, None, t_end, 1e-3).unwrap();
        let res = gamma_relation_residual(&m, &traj);
        assert!(res < 1e-8, "{}/{}: {res:e}", m.space, m.potential);
    }
}

#[test]
fn time_and_z_domains_agree() {
    for (m, t_end) in real_gamma_cases() {
        let traj = gamma_trajectory(&m, None, t_end, 1e-3).unwrap();
        let nve = nve_time_domain(&traj, NveKind::Reduced, (0.3, -0.2)).unwrap();
        let report = chain_rule_check(&m, &traj, &nve).unwrap();
        assert!(report.points >= 100);
        assert!(report.max_relative_error < 1e-6, "{}/{}: {:e}", m.space, m.potential, report.max_relative_error);
    }
}

#[test]
fn nve_is_linear() {
    for (m, t_end) in real_gamma_cases() {
        let traj = gamma_trajectory(&m, None, t_end, 1e-3).unwrap();
        let a = nve_time_domain(&traj, NveKind::Reduced, (0.3, -0.2)).unwrap();
        let b = nve_time_domain(&traj, NveKind::Reduced, (-0.1, 0.5)).unwrap();
        let sum = nve_time_domain(&traj, NveKind::Reduced, (0.2, 0.3)).unwrap();
        let double = nve_time_domain(&traj, NveKind::Reduced, (0.6, -0.4)).unwrap();
        for i in 0..a.len() {
            assert!((double[i].p1 - 2.0 * a[i].p1).abs() < 1e-9);
            assert!((double[i].p2 - 2.0 * a[i].p2).abs() < 1e-9);
            assert!((sum[i].p1 - a[i].p1 - b[i].p1).abs() < 1e-9);
            assert!((sum[i].p2 - a[i].p2 - b[i].p2).abs() < 1e-9);
        }
    }
}

#[test]
fn free_gamma_has_constant_momentum() {
    let m = derive_params(Space::Sphere, Potential::Newton, int(2), rat(1, 2), int(1), int(0)).unwrap();
    let traj = gamma_trajectory_restricted(None, m.mu.clone(), int(1), 1.0, 0.4, 1.0, 1e-3).unwrap();
    assert!(traj.samples.iter().all(|g| g.p_theta == 0.4));
    let nve = nve_time_domain(&traj, NveKind::Restricted, (0.0, 0.0)).unwrap();
    assert!(nve.iter().all(|n| n.p1 == 0.0 && n.p2 == 0.0));
}

#[test]
fn restricted_variant_follows_its_display() {
    // ω = 1/3, m₂ = 1; compare one RK4 step against the closed-form right side.
    let traj = gamma_trajectory_restricted(Some((Potential::Newton, int(1))), int(1), rat(1, 3), 1.2, 0.1, 0.01, 1e-3).unwrap();
    let nve = nve_time_domain(&traj, NveKind::Restricted, (0.5, 0.25)).unwrap();
    let n0 = nve[0];
    let (s, c) = n0.theta.sin_cos();
    let om = 1.0 / 3.0;
    let d1 = -om * c / s * n0.p1 + n0.p2 / (s * s);
    let d2 = om * n0.p_theta * n0.p1 + om * c / s * n0.p2;
    let dt = nve[1].t - n0.t;
    assert!(((nve[1].p1 - n0.p1) / dt - d1).abs() < 1e-2);
    assert!(((nve[1].p2 - n0.p2) / dt - d2).abs() < 1e-2);
}
