use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::certificate::{render_report, Certificate, Format};
use crate::certify::{certify, CertError};
use crate::config::{CaseConfig, RunConfig};

pub struct SweepEntry {
    pub index: usize,
    pub case: CaseConfig,
    pub result: Result<Certificate, CertError>,
    pub path: Option<PathBuf>,
}

/// Writes via a temporary file in the same directory and a rename, so a
/// reader never sees a partial certificate.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// Certifies every case of the sweep in parallel. Results come back in
/// sweep order; with `out_dir` each certificate goes to `run-NNNN.json`.
pub fn run_sweep(cfg: &RunConfig, out_dir: Option<&Path>) -> std::io::Result<Vec<SweepEntry>> {
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
    }
    let cases = cfg.expand_sweep();
    cases
        .into_par_iter()
        .enumerate()
        .map(|(index, case)| {
            let run = RunConfig { case: case.clone(), sweep: None, out: None, ..cfg.clone() };
            let result = certify(&run);
            let mut path = None;
            if let (Some(dir), Ok(cert)) = (out_dir, &result) {
                let p = dir.join(format!("run-{index:04}.json"));
                write_atomic(&p, &render_report(cert, Format::Json))?;
                path = Some(p);
            }
            Ok(SweepEntry { index, case, result, path })
        })
        .collect()
}
