use twobody_core::models::ReducedHamiltonian;

use crate::field::vector_field_raw;
use crate::integrate::rk4_step;
use crate::DynError;

/// The hypersurface x[coordinate] = level, crossed in the increasing
/// (`upward`) or decreasing direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Section {
    pub coordinate: usize,
    pub level: f64,
    pub upward: bool,
}

impl Default for Section {
    /// p₁ = 0 with ṗ₁ > 0.
    fn default() -> Self {
        Self { coordinate: 3, level: 0.0, upward: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionPoint {
    pub crossing_index: usize,
    pub t: f64,
    pub x: Vec<f64>,
}

const RESIDUAL: f64 = 1e-10;

/// RK4 with step `step`; every crossing is refined by bisection on the
/// length of the last step.
pub fn poincare_section(
    h: &ReducedHamiltonian,
    x0: &[f64],
    section: &Section,
    t_end: f64,
    step: f64,
) -> Result<Vec<SectionPoint>, DynError> {
    let f = |x: &[f64]| vector_field_raw(h, x);
    let g = |x: &[f64]| x[section.coordinate] - section.level;
    let mut out = Vec::new();
    if t_end <= 0.0 {
        return Ok(out);
    }
    let n = (t_end / step).ceil() as usize;
    let dt = t_end / n as f64;
    let mut x = x0.to_vec();
    for k in 0..n {
        let t = k as f64 * dt;
        let y = rk4_step(&f, &x, dt).map_err(|e| DynError::StepFailure { t, reason: e.to_string() })?;
        let (ga, gb) = (g(&x), g(&y));
        let crossed = if section.upward { ga < 0.0 && gb >= 0.0 } else { ga > 0.0 && gb <= 0.0 };
        if crossed {
            let (mut lo, mut hi) = (0.0, dt);
            let mut best = (dt, y.clone());
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let z = rk4_step(&f, &x, mid)?;
                let gz = g(&z);
                best = (mid, z);
                if gz.abs() < RESIDUAL {
                    break;
                }
                if (gz < 0.0) == (ga < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(SectionPoint { crossing_index: out.len(), t: t + best.0, x: best.1 });
        }
        x = y;
    }
    Ok(out)
}
