use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sdsc_harness::config::{
    CompareParams, FixtureParams, HybridWeights, StatsParams, StatsSource, DEFAULT_SEED,
};
use sdsc_harness::{execute, CommandConfig, HarnessError, OutputFormat, RunConfig, OUT_DIR_ENV};

#[derive(Parser)]
#[command(
    name = "sdsc",
    version,
    about = "Signal Dice similarity: tables, statistics and file comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv, global = true)]
    format: OutputFormat,

    /// Output file. Defaults to `$SDSC_OUT_DIR/<command>.<ext>` when that
    /// variable is set, else stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write the resolved run configuration as JSON and continue.
    #[arg(long, global = true, value_name = "PATH")]
    save_config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Metric panel over the perturbed sine fixtures.
    Table1(FixtureArgs),
    /// Gradient norms of MSE, MAE and SDSC loss per perturbation.
    Sensitivity(FixtureArgs),
    /// SDSC-loss gradient norms across sigmoid sharpness values.
    AlphaSweep(FixtureArgs),
    /// Correlation and fixed-MSE dispersion over paired scores.
    Stats(StatsArgs),
    /// Metric panel between two signal files.
    Compare(CompareArgs),
    /// Re-run a saved configuration.
    Replay { config: PathBuf },
}

#[derive(Args)]
struct FixtureArgs {
    #[arg(long, default_value_t = 1000)]
    n_samples: usize,
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Sigmoid sharpness; repeat for several.
    #[arg(long = "alpha", default_values_t = [1.0, 10.0, 100.0])]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    /// SoftDTW smoothing.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl From<FixtureArgs> for FixtureParams {
    fn from(a: FixtureArgs) -> Self {
        FixtureParams {
            n_samples: a.n_samples,
            amplitude: a.amplitude,
            alphas: a.alphas,
            epsilon: a.epsilon,
            gamma: a.gamma,
            seed: a.seed,
        }
    }
}

#[derive(Args)]
struct StatsArgs {
    /// CSV of paired scores with header `mse,sdsc`.
    #[arg(required_unless_present = "synthetic", conflicts_with = "synthetic")]
    samples: Option<PathBuf>,
    /// Draw this many synthetic pairs instead of reading a file.
    #[arg(long, value_name = "COUNT")]
    synthetic: Option<usize>,
    /// Correlation of the synthetic generator.
    #[arg(long, default_value_t = -0.3, allow_negative_numbers = true)]
    rho: f64,
    #[arg(long, default_value_t = 1.5)]
    band_center: f64,
    #[arg(long, default_value_t = 0.05)]
    band_eps: f64,
    #[arg(long, default_value_t = 20)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct CompareArgs {
    reference: PathBuf,
    candidate: PathBuf,
    /// Column index (0-based) or header name.
    #[arg(long, default_value = "0")]
    column: String,
    #[arg(long, default_value_t = 10.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda_sdsc: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda_mse: f64,
    /// Use uncertainty weighting with these initial sigmas instead of fixed lambdas.
    #[arg(long, num_args = 2, value_names = ["SIGMA_SDSC", "SIGMA_MSE"], conflicts_with_all = ["lambda_sdsc", "lambda_mse"])]
    uncertainty: Option<Vec<f64>>,
    /// Also report gradient norms.
    #[arg(long)]
    gradients: bool,
}

fn resolve(cli: Cli) -> Result<(RunConfig, Option<PathBuf>), HarnessError> {
    let command = match cli.command {
        Command::Replay { config } => {
            let mut cfg = RunConfig::load(&config)?;
            if cli.out.is_some() {
                cfg.out = cli.out;
            }
            return Ok((cfg, cli.save_config));
        }
        Command::Table1(a) => CommandConfig::Table1(a.into()),
        Command::Sensitivity(a) => CommandConfig::Sensitivity(a.into()),
        Command::AlphaSweep(a) => CommandConfig::AlphaSweep(a.into()),
        Command::Stats(a) => CommandConfig::Stats(StatsParams {
            source: match (a.samples, a.synthetic) {
                (Some(path), _) => StatsSource::File { path },
                (None, Some(count)) => StatsSource::Synthetic { count, rho: a.rho },
                (None, None) => unreachable!("enforced by clap"),
            },
            band_center: a.band_center,
            band_eps: a.band_eps,
            bins: a.bins,
            seed: a.seed,
        }),
        Command::Compare(a) => CommandConfig::Compare(CompareParams {
            reference: a.reference,
            candidate: a.candidate,
            column: a.column,
            alpha: a.alpha,
            gamma: a.gamma,
            epsilon: a.epsilon,
            weights: match a.uncertainty.as_deref() {
                Some(&[sigma_sdsc, sigma_mse]) => HybridWeights::Adaptive {
                    sigma_sdsc,
                    sigma_mse,
                },
                _ => HybridWeights::Fixed {
                    lambda_sdsc: a.lambda_sdsc,
                    lambda_mse: a.lambda_mse,
                },
            },
            gradients: a.gradients,
        }),
    };
    let cfg = RunConfig {
        command,
        format: cli.format,
        out: cli.out,
    };
    Ok((cfg, cli.save_config))
}

fn destination(cfg: &RunConfig) -> Option<PathBuf> {
    cfg.out.clone().or_else(|| {
        let dir = std::env::var_os(OUT_DIR_ENV)?;
        let name = format!("{}.{}", cfg.command.name(), cfg.format.extension());
        Some(PathBuf::from(dir).join(name))
    })
}

fn write_output(path: Option<PathBuf>, text: &str) -> Result<(), HarnessError> {
    match path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| HarnessError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(&path, text).map_err(|source| HarnessError::Io { path, source })
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| HarnessError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    let (cfg, save) = resolve(cli)?;
    if let Some(path) = save {
        cfg.save(&path)?;
    }
    let (report, text) = execute(&cfg)?;
    write_output(destination(&cfg), &text)?;
    Ok(!report.failed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("sdsc: one or more expected-value checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("sdsc: {e}");
            ExitCode::from(2)
        }
    }
}
