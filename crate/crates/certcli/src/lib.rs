//! Certificates of nonintegrability for the reduced two-body problems, and
//! the plumbing behind the `twobody` command.

pub mod certificate;
pub mod certify;
pub mod config;
pub mod numeric;
pub mod sweep;

pub use certificate::{parse_certificate, render_report, Certificate, Conclusion, Format};
pub use certify::{certify, xi_witness, CertError};
pub use config::{CaseConfig, ConfigError, RunConfig, SweepRanges};
pub use sweep::{run_sweep, write_atomic};
