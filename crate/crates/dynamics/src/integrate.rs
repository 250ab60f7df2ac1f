use twobody_core::models::{HamiltonianKind, ReducedHamiltonian, Space};

use crate::field::{extra_integrals, vector_field_raw, Invariant};
use crate::state::casimir;
use crate::DynError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Classical fourth-order Runge–Kutta with a fixed step.
    Rk4 { step: f64 },
    /// Fehlberg 4(5) pair with step control, advancing the fifth-order
    /// solution.
    Adaptive { rtol: f64, atol: f64, initial_step: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrateOptions {
    pub method: Method,
    /// Spacing of the stored samples (the drift is monitored every step).
    pub sample_interval: f64,
    /// Relative Casimir deviation that aborts the run.
    pub casimir_limit: Option<f64>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { method: Method::Rk4 { step: 1e-3 }, sample_interval: 0.1, casimir_limit: Some(1e-6) }
    }
}

impl IntegrateOptions {
    pub fn adaptive() -> Self {
        Self { method: Method::Adaptive { rtol: 1e-10, atol: 1e-12, initial_step: 1e-3 }, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: Vec<f64>,
}

/// Maximal deviations over every step of a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Drift {
    /// max |h − h(0)| / |h(0)| (absolute when h(0) = 0).
    pub energy: f64,
    /// Same for the Casimir; `None` for canonical coordinates.
    pub casimir: Option<f64>,
    /// Registered extra integrals, relative where the initial value is
    /// nonzero.
    pub extras: Vec<(String, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryReport {
    pub space: Space,
    pub kind: HamiltonianKind,
    pub samples: Vec<Sample>,
    pub drift: Drift,
    pub steps: usize,
}

pub(crate) type Field<'a> = dyn Fn(&[f64]) -> Result<Vec<f64>, DynError> + 'a;
type Observer<'a> = dyn FnMut(f64, &[f64]) -> Result<(), DynError> + 'a;

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect()
}

pub(crate) fn rk4_step(f: &Field, x: &[f64], dt: f64) -> Result<Vec<f64>, DynError> {
    let k1 = f(x)?;
    let k2 = f(&axpy(x, 0.5 * dt, &k1))?;
    let k3 = f(&axpy(x, 0.5 * dt, &k2))?;
    let k4 = f(&axpy(x, dt, &k3))?;
    Ok((0..x.len()).map(|i| x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
}

const A: [[f64; 5]; 6] = [
    [0.0; 5],
    [1.0 / 4.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 32.0, 9.0 / 32.0, 0.0, 0.0, 0.0],
    [1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0.0, 0.0],
    [439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0.0],
    [-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0],
];
const B5: [f64; 6] = [16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0];
const B4: [f64; 6] = [25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -1.0 / 5.0, 0.0];

/// One Fehlberg step: (fifth-order value, error estimate).
pub(crate) fn rkf_step(f: &Field, x: &[f64], dt: f64) -> Result<(Vec<f64>, Vec<f64>), DynError> {
    let mut k: Vec<Vec<f64>> = Vec::with_capacity(6);
    for (s, row) in A.iter().enumerate() {
        let mut y = x.to_vec();
        for (j, kj) in k.iter().enumerate().take(s) {
            for i in 0..x.len() {
                y[i] += dt * row[j] * kj[i];
            }
        }
        k.push(f(&y)?);
    }
    let mut hi = x.to_vec();
    let mut err = vec![0.0; x.len()];
    for s in 0..6 {
        for i in 0..x.len() {
            hi[i] += dt * B5[s] * k[s][i];
            err[i] += dt * (B5[s] - B4[s]) * k[s][i];
        }
    }
    Ok((hi, err))
}

/// Drives `f` from `x0` to `t_end`, calling `observe` after every accepted
/// step and collecting samples every `sample_interval`.
pub(crate) fn drive(
    f: &Field,
    x0: &[f64],
    t_end: f64,
    method: Method,
    sample_interval: f64,
    observe: &mut Observer,
) -> Result<(Vec<Sample>, usize), DynError> {
    let mut samples = vec![Sample { t: 0.0, x: x0.to_vec() }];
    if t_end <= 0.0 {
        return Ok((samples, 0));
    }
    let fail = |t: f64, e: DynError| match e {
        DynError::Domain(reason) => DynError::StepFailure { t, reason },
        other => other,
    };
    let mut x = x0.to_vec();
    let mut steps = 0;
    match method {
        Method::Rk4 { step } => {
            let n = (t_end / step).ceil().max(1.0) as usize;
            let dt = t_end / n as f64;
            let every = ((sample_interval / dt).round() as usize).max(1);
            for k in 1..=n {
                x = rk4_step(f, &x, dt).map_err(|e| fail(k as f64 * dt, e))?;
                steps += 1;
                let t = k as f64 * dt;
                observe(t, &x)?;
                if k % every == 0 || k == n {
                    samples.push(Sample { t, x: x.clone() });
                }
            }
        }
        Method::Adaptive { rtol, atol, initial_step } => {
            let mut t = 0.0;
            let mut h = initial_step.min(t_end);
            let mut k = 1usize;
            let target_of = |k: usize| {
                let t = k as f64 * sample_interval;
                if t_end - t < 1e-9 * sample_interval { t_end } else { t }
            };
            while t < t_end {
                let target = target_of(k);
                let dt = h.min(target - t);
                if dt < 1e-14 * (1.0 + t.abs()) {
                    return Err(DynError::StepFailure { t, reason: "step size underflow".into() });
                }
                let (y, err) = match rkf_step(f, &x, dt) {
                    Ok(v) => v,
                    Err(DynError::Domain(_)) => {
                        h = 0.5 * dt;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let norm = err
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(e, (a, b))| e.abs() / (atol + rtol * a.abs().max(b.abs())))
                    .fold(0.0, f64::max);
                let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
                if norm <= 1.0 {
                    t = if dt == target - t { target } else { t + dt };
                    x = y;
                    steps += 1;
                    observe(t, &x)?;
                    if t >= target {
                        samples.push(Sample { t, x: x.clone() });
                        k += 1;
                    }
                    // A step shortened to hit a sample time says nothing about h.
                    h = if dt < h { h.max(dt * factor) } else { dt * factor };
                } else {
                    h = dt * factor;
                }
            }
        }
    }
    Ok((samples, steps))
}

fn rel(value: f64, initial: f64) -> f64 {
    let scale = if initial.abs() > 1e-12 { initial.abs() } else { 1.0 };
    (value - initial).abs() / scale
}

/// Integrates Hamilton's equations of `h` and records invariant drift.
pub fn integrate(
    h: &ReducedHamiltonian,
    x0: &[f64],
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<TrajectoryReport, DynError> {
    let f = |x: &[f64]| vector_field_raw(h, x);
    let h0 = h.eval(x0)?;
    let lie = h.dimension() == 5;
    let c0 = lie.then(|| casimir(h.space, x0));
    let extras = extra_integrals(h);
    let extra0: Vec<f64> = extras.iter().map(|i| i.eval(h, x0)).collect::<Result<_, _>>()?;
    let mut drift = Drift {
        energy: 0.0,
        casimir: c0.map(|_| 0.0),
        extras: extras.iter().map(|i| (i.name(), 0.0)).collect(),
    };
    let mut observe = |t: f64, x: &[f64]| -> Result<(), DynError> {
        drift.energy = drift.energy.max(rel(h.eval(x)?, h0));
        if let Some(c0) = c0 {
            let dev = rel(casimir(h.space, x), c0);
            if let Some(limit) = opts.casimir_limit {
                if dev > limit {
                    return Err(DynError::CasimirViolation { t, deviation: dev, limit });
                }
            }
            drift.casimir = Some(drift.casimir.unwrap_or(0.0).max(dev));
        }
        for ((inv, start), slot) in extras.iter().zip(&extra0).zip(drift.extras.iter_mut()) {
            if !matches!(inv, Invariant::Casimir) {
                slot.1 = slot.1.max(rel(inv.eval(h, x)?, *start));
            }
        }
        Ok(())
    };
    let (samples, steps) = drive(&f, x0, t_end, opts.method, opts.sample_interval, &mut observe)?;
    Ok(TrajectoryReport { space: h.space, kind: h.kind, samples, drift, steps })
}
