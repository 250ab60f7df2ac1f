use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use twobody_cert::certificate::{render_report, Conclusion, Format};
use twobody_cert::config::{CaseConfig, ConfigError, PotentialName, RunConfig, SpaceName};
use twobody_cert::numeric;
use twobody_cert::{certify, run_sweep, write_atomic, CertError};
use twobody_core::exactfield::{parse_rational, to_f64};
use twobody_core::models::{derive_params, ModelError};
use twobody_dynamics::{write_sections_csv, write_trajectory_csv};

#[derive(Parser)]
#[command(name = "twobody", version, about = "Nonintegrability certificates and simulations for the curved two-body problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full Galois pipeline and emit a certificate.
    Certify(CertifyArgs),
    /// Integrate the reduced Hamiltonian and write a CSV trajectory.
    Simulate(SimArgs),
    /// Poincaré section p1 = 0 (upward) of a reduced trajectory.
    Section(SimArgs),
    /// Time-domain NVE along the particular solution, checked against the z system.
    Nve(NveArgs),
    /// Certify every combination of the sweep lists in a config file.
    Sweep(SweepArgs),
}

#[derive(Args, Clone, Default)]
struct CaseArgs {
    #[arg(long)]
    space: Option<SpaceName>,
    #[arg(long)]
    potential: Option<PotentialName>,
    /// Potential strength (alpha or beta) as n/d.
    #[arg(long, allow_hyphen_values = true)]
    strength: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// JSON run config; explicit flags override its case fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Random parameter points for the table identity test.
    #[arg(long)]
    identity_points: Option<usize>,
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Initial state theta,p_theta,p0,p1,p2 as comma-separated n/d values.
    #[arg(long, allow_hyphen_values = true)]
    state: String,
    #[arg(long, default_value = "100")]
    t_end: String,
    #[arg(long, default_value = "1/1000")]
    step: String,
    #[arg(long, default_value = "1/10")]
    sample_interval: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NveArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long, default_value = "1/4")]
    t_end: String,
    #[arg(long, default_value = "1/1000")]
    step: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to the config's `out`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Exit 1: the input is degenerate or malformed.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

/// Exit 2: an internal check failed.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InternalError(String);

fn input(msg: impl std::fmt::Display) -> anyhow::Error {
    InputError(msg.to_string()).into()
}

/// With `gamma` false, p and eps are unused and may be omitted.
fn resolve(args: &CaseArgs, gamma: bool) -> anyhow::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path).map_err(input)?,
        None => {
            let need = |v: &Option<String>, name: &'static str| v.clone().ok_or_else(|| input(ConfigError::Missing(name)));
            RunConfig::new(CaseConfig {
                space: args.space.ok_or_else(|| input(ConfigError::Missing("space")))?,
                potential: args.potential.ok_or_else(|| input(ConfigError::Missing("potential")))?,
                strength: need(&args.strength, "strength")?,
                mu: need(&args.mu, "mu")?,
                p: if gamma { need(&args.p, "p")? } else { args.p.clone().unwrap_or_else(|| "0".into()) },
                eps: if gamma { need(&args.eps, "eps")? } else { args.eps.clone().unwrap_or_else(|| "0".into()) },
            })
        }
    };
    let c = &mut cfg.case;
    if let Some(v) = args.space {
        c.space = v;
    }
    if let Some(v) = args.potential {
        c.potential = v;
    }
    for (slot, v) in [(&mut c.strength, &args.strength), (&mut c.mu, &args.mu), (&mut c.p, &args.p), (&mut c.eps, &args.eps)] {
        if let Some(v) = v {
            *slot = v.clone();
        }
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(input)?;
    Ok(cfg)
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(bytes).context("writing stdout"),
    }
}

fn exact(text: &str, name: &str) -> anyhow::Result<f64> {
    parse_rational(text).map(|q| to_f64(&q)).map_err(|e| input(format!("{name}: {e}")))
}

fn cert_error(e: CertError) -> anyhow::Error {
    match e {
        CertError::Config(c) => input(c),
        CertError::Internal(m) => InternalError(m).into(),
    }
}

fn run_certify(a: CertifyArgs) -> anyhow::Result<()> {
    let mut cfg = resolve(&a.case, true)?;
    if let Some(n) = a.identity_points {
        cfg.identity_points = n;
    }
    let cert = certify(&cfg).map_err(cert_error)?;
    let format = match a.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    emit(a.out.as_ref().or(cfg.out.as_ref()), &render_report(&cert, format))?;
    if cert.conclusion == Conclusion::Degenerate {
        return Err(input(format!("degenerate: {}", cert.guard.unwrap_or_default())));
    }
    Ok(())
}

fn run_simulate(a: SimArgs, sections: bool) -> anyhow::Result<()> {
    let case = resolve(&a.case, false)?.case.parse().map_err(input)?;
    let h = numeric::full_hamiltonian(case.space, case.potential, case.strength, case.mu);
    let x0 = numeric::parse_state(&a.state).map_err(|e| input(format!("state: {e}")))?;
    if x0.len() != 5 {
        return Err(input("state needs five values: theta,p_theta,p0,p1,p2"));
    }
    let (t_end, step) = (exact(&a.t_end, "t-end")?, exact(&a.step, "step")?);
    if !(step > 0.0 && t_end >= 0.0) {
        return Err(input("need step > 0 and t-end >= 0"));
    }
    let mut buf = Vec::new();
    if sections {
        let pts = numeric::section(&h, &x0, t_end, step).map_err(input)?;
        write_sections_csv(&mut buf, h.kind, &pts)?;
        eprintln!("{} crossings", pts.len());
    } else {
        let interval = exact(&a.sample_interval, "sample-interval")?;
        let rep = numeric::simulate(&h, &x0, t_end, step, interval).map_err(input)?;
        write_trajectory_csv(&mut buf, &rep)?;
        eprintln!("energy drift {:.3e}, casimir drift {:.3e}", rep.drift.energy, rep.drift.casimir.unwrap_or(0.0));
        for (name, d) in &rep.drift.extras {
            eprintln!("{name} drift {d:.3e}");
        }
    }
    emit(a.out.as_ref(), &buf)
}

fn run_nve(a: NveArgs) -> anyhow::Result<()> {
    let case = resolve(&a.case, true)?.case.parse().map_err(input)?;
    let m = derive_params(case.space, case.potential, case.strength, case.mu, case.p, case.eps).map_err(|e| match e {
        ModelError::DegenerateParameters(_) => input(e),
        other => InternalError(other.to_string()).into(),
    })?;
    let (t_end, step) = (exact(&a.t_end, "t-end")?, exact(&a.step, "step")?);
    let run = numeric::nve(&m, t_end, step).map_err(input)?;
    let mut buf = Vec::new();
    numeric::write_nve_csv(&mut buf, &run.samples)?;
    emit(a.out.as_ref(), &buf)?;
    eprintln!(
        "chain rule: {} points, max relative error {:.3e}",
        run.chain_rule.points, run.chain_rule.max_relative_error
    );
    Ok(())
}

fn run_sweep_cmd(a: SweepArgs) -> anyhow::Result<()> {
    let mut cfg = RunConfig::load(&a.config).map_err(input)?;
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let dir = a.out.or_else(|| cfg.out.clone()).ok_or_else(|| input("sweep needs --out or an `out` directory in the config"))?;
    let entries = run_sweep(&cfg, Some(&dir))?;
    let mut internal = Vec::new();
    for e in entries {
        let c = &e.case;
        let label = format!("strength={} mu={} p={} eps={}", c.strength, c.mu, c.p, c.eps);
        match e.result {
            Ok(cert) => println!("run-{:04} {label} {}", e.index, cert.conclusion.name()),
            Err(err) => {
                println!("run-{:04} {label} error: {err}", e.index);
                if matches!(err, CertError::Internal(_)) {
                    internal.push(err.to_string());
                }
            }
        }
    }
    if !internal.is_empty() {
        return Err(InternalError(internal.join("; ")).into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Certify(a) => run_certify(a),
        Command::Simulate(a) => run_simulate(a, false),
        Command::Section(a) => run_simulate(a, true),
        Command::Nve(a) => run_nve(a),
        Command::Sweep(a) => run_sweep_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InternalError>().is_some() {
                ExitCode::from(2)
            } else {
                // Bad input, and I/O failures on user-supplied paths.
                ExitCode::from(1)
            }
        }
    }
}
