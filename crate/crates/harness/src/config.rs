//! Serializable run configuration. A run is fully determined by its
//! [`RunConfig`]; `--save-config` writes it and `replay` re-executes it.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::OutputFormat;
use crate::HarnessError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ALPHAS: [f64; 3] = [1.0, 10.0, 100.0];

/// Parameters shared by the fixture-table commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureParams {
    pub n_samples: usize,
    pub amplitude: f64,
    pub alphas: Vec<f64>,
    pub epsilon: f64,
    pub gamma: f64,
    pub seed: u64,
}

impl Default for FixtureParams {
    fn default() -> Self {
        Self {
            n_samples: sdsc_core::fixtures::DEFAULT_N,
            amplitude: 1.0,
            alphas: DEFAULT_ALPHAS.to_vec(),
            epsilon: 1e-8,
            gamma: 1.0,
            seed: DEFAULT_SEED,
        }
    }
}

impl FixtureParams {
    /// Expected values only apply to the reconstructed default fixtures.
    pub fn is_reference_setup(&self) -> bool {
        self.n_samples == sdsc_core::fixtures::DEFAULT_N && self.amplitude == 1.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatsSource {
    File { path: PathBuf },
    Synthetic { count: usize, rho: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsParams {
    pub source: StatsSource,
    pub band_center: f64,
    pub band_eps: f64,
    pub bins: usize,
    pub seed: u64,
}

/// Which hybrid weighting `compare` reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HybridWeights {
    Fixed { lambda_sdsc: f64, lambda_mse: f64 },
    Adaptive { sigma_sdsc: f64, sigma_mse: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareParams {
    pub reference: PathBuf,
    pub candidate: PathBuf,
    pub column: String,
    pub alpha: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub weights: HybridWeights,
    pub gradients: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    Table1(FixtureParams),
    Sensitivity(FixtureParams),
    AlphaSweep(FixtureParams),
    Stats(StatsParams),
    Compare(CompareParams),
}

impl CommandConfig {
    pub fn name(&self) -> &'static str {
        match self {
            CommandConfig::Table1(_) => "table1",
            CommandConfig::Sensitivity(_) => "sensitivity",
            CommandConfig::AlphaSweep(_) => "alpha-sweep",
            CommandConfig::Stats(_) => "stats",
            CommandConfig::Compare(_) => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: CommandConfig,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text)
            .map_err(|e| HarnessError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<(), HarnessError> {
        let text = serde_json::to_string_pretty(self).expect("config serializes");
        std::fs::write(path, text + "\n").map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
