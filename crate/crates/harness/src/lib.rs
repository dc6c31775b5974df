//! Reporting layer for the SDSC toolkit: reconstructs the toy-case tables,
//! runs dispersion statistics over score pairs and compares signal files.

pub mod commands;
pub mod config;
pub mod expected;
pub mod report;

use std::path::PathBuf;

pub use config::{CommandConfig, RunConfig};
pub use report::{OutputFormat, Report};

/// Environment variable naming the directory reports are written to when
/// `--out` is not given.
pub const OUT_DIR_ENV: &str = "SDSC_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] sdsc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Executes a run and renders its report.
pub fn execute(cfg: &RunConfig) -> Result<(Report, String), HarnessError> {
    let report = commands::run(&cfg.command)?;
    let text = report.render(cfg.format);
    Ok((report, text))
}
