use std::io::{self, Write};

use twobody_core::models::HamiltonianKind;

use crate::integrate::TrajectoryReport;
use crate::section::SectionPoint;

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn header(kind: HamiltonianKind) -> &'static str {
    match kind {
        HamiltonianKind::GammaRestriction => "t,theta,p_theta",
        HamiltonianKind::RestrictedProblem => "t,theta,p_theta,psi,p_psi",
        _ => "t,theta,p_theta,p0,p1,p2",
    }
}

fn row(w: &mut dyn Write, t: f64, x: &[f64], tail: Option<usize>) -> io::Result<()> {
    let mut cells = vec![fmt(t)];
    cells.extend(x.iter().map(|v| fmt(*v)));
    if let Some(i) = tail {
        cells.push(i.to_string());
    }
    writeln!(w, "{}", cells.join(","))
}

/// One row per sample, 17 significant digits.
pub fn write_trajectory_csv(w: &mut dyn Write, report: &TrajectoryReport) -> io::Result<()> {
    writeln!(w, "{}", header(report.kind))?;
    for s in &report.samples {
        row(w, s.t, &s.x, None)?;
    }
    Ok(())
}

pub fn write_sections_csv(w: &mut dyn Write, kind: HamiltonianKind, points: &[SectionPoint]) -> io::Result<()> {
    writeln!(w, "{},crossing_index", header(kind))?;
    for p in points {
        row(w, p.t, &p.x, Some(p.crossing_index))?;
    }
    Ok(())
}
