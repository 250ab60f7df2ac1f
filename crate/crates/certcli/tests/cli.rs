use std::fs;
use std::process::{Command, Output};

use twobody_cert::{parse_certificate, Conclusion};

fn twobody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobody")).args(args).output().unwrap()
}

const SPHERE_NEWTON: [&str; 12] =
    ["--space", "sphere", "--potential", "newton", "--strength", "2", "--mu", "1/2", "--p", "1", "--eps", "0"];

#[test]
fn certificate_json_round_trips() {
    let out = twobody(&[&["certify"], &SPHERE_NEWTON[..], &["--identity-points", "4"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let cert = parse_certificate(&out.stdout).unwrap();
    let again = twobody_cert::render_report(&cert, twobody_cert::Format::Json);
    assert_eq!(again, out.stdout);
    let keys: Vec<String> = serde_json::from_slice::<serde_json::Value>(&out.stdout)
        .unwrap()
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    for k in ["params", "spectrum", "table_match", "lemma", "case1", "case2", "case3_possible", "verdict", "conclusion"] {
        assert!(keys.iter().any(|x| x == k), "missing {k}");
    }
}

#[test]
fn seed_changes_only_the_seed_fields() {
    let a = twobody(&[&["certify"], &SPHERE_NEWTON[..], &["--identity-points", "3", "--seed", "1"]].concat());
    let b = twobody(&[&["certify"], &SPHERE_NEWTON[..], &["--identity-points", "3", "--seed", "2"]].concat());
    let (mut ca, mut cb) = (parse_certificate(&a.stdout).unwrap(), parse_certificate(&b.stdout).unwrap());
    assert_ne!(a.stdout, b.stdout);
    ca.params.seed = 0;
    cb.params.seed = 0;
    ca.identity_tests.as_mut().unwrap().seed = 0;
    cb.identity_tests.as_mut().unwrap().seed = 0;
    assert_eq!(ca, cb);
}

#[test]
fn degenerate_input_exits_one_with_guard() {
    let out = twobody(&[
        "certify", "--space", "hyperbolic", "--potential", "newton", "--strength", "1", "--mu", "1/2", "--p", "1", "--eps", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let cert = parse_certificate(&out.stdout).unwrap();
    assert_eq!(cert.conclusion, Conclusion::Degenerate);
    assert_eq!(cert.guard.as_deref(), Some("lambda^2 = 0"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"conclusion\": \"Degenerate\""));
}

#[test]
fn decimal_input_is_rejected() {
    let mut args = vec!["certify"];
    args.extend(SPHERE_NEWTON);
    args[8] = "0.5";
    let out = twobody(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n/d"));
}

#[test]
fn config_file_and_text_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("cert.txt");
    fs::write(
        &cfg,
        r#"{"case":{"space":"sphere","potential":"oscillator","strength":"1","mu":"1/2","p":"1","eps":"-1"},"identity_points":2}"#,
    )
    .unwrap();
    let res = twobody(&["certify", "--config", cfg.to_str().unwrap(), "--format", "text", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("oscillator-nonreal-coefficients"));
    assert!(text.contains("conclusion  NonintegrabilityCertified"));
}

#[test]
fn sweep_writes_one_file_per_run_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    fs::write(
        &cfg,
        r#"{"case":{"space":"sphere","potential":"newton","strength":"2","mu":"1/2","p":"1","eps":"0"},
            "identity_points":2,"sweep":{"mu":["1/2","1"],"eps":["0","1/3"]}}"#,
    )
    .unwrap();
    let run = |sub: &str| {
        let out_dir = dir.path().join(sub);
        let res = twobody(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
        assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
        let mut names: Vec<_> = fs::read_dir(&out_dir).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        let files: Vec<Vec<u8>> = names.iter().map(|n| fs::read(out_dir.join(n)).unwrap()).collect();
        (String::from_utf8(res.stdout).unwrap(), names, files)
    };
    let (log_a, names, files_a) = run("a");
    let (log_b, _, files_b) = run("b");
    assert_eq!(names.len(), 4);
    assert!(names.iter().all(|n| !n.to_string_lossy().starts_with('.')));
    assert_eq!(files_a, files_b);
    assert_eq!(log_a, log_b);
    let lines: Vec<&str> = log_a.lines().collect();
    assert!(lines[0].starts_with("run-0000") && lines[0].ends_with("NonintegrabilityCertified"));
    assert!(lines[2].contains("mu=1 ") && lines[2].ends_with("NoObstructionFound"));
}

#[test]
fn simulation_subcommands_write_csv() {
    let base = ["--space", "sphere", "--potential", "newton", "--strength", "1", "--mu", "1/2"];
    let sim = twobody(&[&["simulate"], &base[..], &["--state", "6/5,1/10,3/10,1/5,3/5", "--t-end", "1"]].concat());
    assert_eq!(sim.status.code(), Some(0), "{}", String::from_utf8_lossy(&sim.stderr));
    let csv = String::from_utf8(sim.stdout).unwrap();
    assert!(csv.starts_with("t,theta,p_theta,p0,p1,p2\n"));
    assert_eq!(csv.lines().count(), 12);

    let sec = twobody(&[&["section"], &base[..], &["--state", "6/5,1/10,3/10,-1/5,3/5", "--t-end", "20"]].concat());
    assert_eq!(sec.status.code(), Some(0));
    assert!(String::from_utf8(sec.stdout).unwrap().starts_with("t,theta,p_theta,p0,p1,p2,crossing_index\n"));

    let nve = twobody(&[&["nve"], &SPHERE_NEWTON[..], &["--t-end", "3/10"]].concat());
    assert_eq!(nve.status.code(), Some(0), "{}", String::from_utf8_lossy(&nve.stderr));
    assert!(String::from_utf8(nve.stdout).unwrap().starts_with("t,theta,p_theta,p1,p2\n"));
    assert!(String::from_utf8(nve.stderr).unwrap().contains("chain rule"));
}
