//! Batch front end: `rfcov <command> [flags]`.
//!
//! Commands print CSV to stdout, or write it to `--out` together with a
//! `<out>.manifest.json` that `rfcov replay` can rerun. Exit status is 0 on
//! success, 1 for configuration and usage errors and 2 for numerical failures.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis::{Approximation, Metric, Scenario};
use crate::error::Error;
use crate::model::{validate_config, SystemConfig};
use crate::montecarlo::SeedSpec;

mod commands;
mod output;

pub use commands::{cmd_analytic, cmd_compare, cmd_optimal_tau, cmd_simulate};
pub use output::{read_csv, write_csv, Row, RunManifest, CSV_HEADER};

/// Failure of a command, with its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error(transparent)]
    Model(#[from] Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

/// Reads and validates a JSON configuration file.
pub fn parse_config(path: &Path) -> Result<SystemConfig, CliError> {
    let err = |message: String| CliError::Config {
        path: path.to_path_buf(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let cfg: SystemConfig = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    validate_config(cfg).map_err(|e| err(e.to_string()))
}

/// Parses `0.5`, `0.1,0.5,0.9` or `start:stop:step` (stop included when
/// reached within 1e-12). Range values are rounded to 12 decimals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| -> Result<f64, String> {
        let v: f64 = t.trim().parse().map_err(|_| format!("'{t}' is not a number"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("'{t}' is not finite"))
        }
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(format!("range '{s}' needs step > 0 and stop >= start"));
            }
            let count = ((stop - start + 1e-12) / step).floor() as usize;
            if count > 1_000_000 {
                return Err(format!("range '{s}' has too many points"));
            }
            Ok((0..=count)
                .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => Err(format!("cannot parse list '{s}'")),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rfcov",
    version,
    about = "Energy and joint coverage of RF-powered clustered IoT devices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate the analytic expressions.
    Analytic(AnalyticArgs),
    /// Estimate by Monte Carlo simulation.
    Simulate(SimulateArgs),
    /// Energy coverage: both approximations against simulation.
    Compare(CompareArgs),
    /// Throughput-optimal charging fraction per cluster size.
    OptimalTau(OptimalTauArgs),
    /// Rerun the command recorded in a manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analytic(_) => "analytic",
            Command::Simulate(_) => "simulate",
            Command::Compare(_) => "compare",
            Command::OptimalTau(_) => "optimal-tau",
            Command::Replay(_) => "replay",
        }
    }

    fn io(&self) -> Option<&Io> {
        match self {
            Command::Analytic(a) => Some(&a.io),
            Command::Simulate(a) => Some(&a.io),
            Command::Compare(a) => Some(&a.io),
            Command::OptimalTau(a) => Some(&a.io),
            Command::Replay(_) => None,
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Simulate(a) => Some(a.mc.seed),
            Command::Compare(a) => Some(a.mc.seed),
            _ => None,
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Io {
    /// JSON configuration; the reference operating point when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McArgs {
    /// Realizations per tau.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads, 0 for all cores. Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long, default_value = "energy")]
    pub metric: Metric,
    #[arg(long, default_value = "clustered")]
    pub scenario: Scenario,
    #[arg(long, default_value = "1")]
    pub approx: Approximation,
    /// Charging fractions: `0.5`, `0.2,0.5` or `start:stop:step`.
    #[arg(long)]
    pub tau: String,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long, default_value = "energy")]
    pub metric: Metric,
    #[arg(long, default_value = "clustered")]
    pub scenario: Scenario,
    #[arg(long)]
    pub tau: String,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long, default_value = "clustered")]
    pub scenario: Scenario,
    #[arg(long)]
    pub tau: String,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalTauArgs {
    #[command(flatten)]
    pub io: Io,
    #[arg(long, default_value = "clustered")]
    pub scenario: Scenario,
    /// Cluster sizes (sigma_c or R_c); the configured size when omitted.
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub refine_tol: f64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The command recorded in a manifest.
pub type Invocation = Command;

fn list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    parse_list(s).map_err(|e| CliError::Usage(format!("--{what}: {e}")))
}

/// Rows produced by `cmd` under `cfg`.
pub fn execute(cmd: &Command, cfg: &SystemConfig) -> Result<Vec<Row>, CliError> {
    Ok(match cmd {
        Command::Analytic(a) => {
            if a.approx == Approximation::Approx2 && a.metric != Metric::Energy {
                return Err(CliError::Usage(format!(
                    "--approx 2 applies to --metric energy only, not {}",
                    a.metric
                )));
            }
            cmd_analytic(cfg, a.metric, a.scenario, a.approx, &list(&a.tau, "tau")?)?
        }
        Command::Simulate(a) => cmd_simulate(
            cfg,
            a.metric,
            a.scenario,
            &list(&a.tau, "tau")?,
            a.mc.samples,
            seed(&a.mc),
        )?,
        Command::Compare(a) => cmd_compare(cfg, a.scenario, &list(&a.tau, "tau")?, a.mc.samples, seed(&a.mc))?,
        Command::OptimalTau(a) => {
            let sizes = match &a.sizes {
                Some(s) => list(s, "sizes")?,
                None => vec![cfg.cluster.size()],
            };
            cmd_optimal_tau(cfg, a.scenario, &sizes, a.grid_step, a.refine_tol)?
        }
        Command::Replay(_) => return Err(CliError::Usage("a replay cannot run another replay".into())),
    })
}

fn seed(mc: &McArgs) -> SeedSpec {
    SeedSpec::new(mc.seed).with_workers(mc.workers)
}

fn emit(rows: &[Row], out: Option<&Path>, manifest: RunManifest) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_csv(rows, std::fs::File::create(path)?)?;
            let json = serde_json::to_string_pretty(&manifest)?;
            std::fs::write(RunManifest::path_for(path), json + "\n")?;
        }
        None => write_csv(rows, std::io::stdout().lock())?,
    }
    Ok(())
}

fn run_command(cmd: Command) -> Result<(), CliError> {
    let start = Instant::now();
    let (invocation, cfg, out) = match cmd {
        Command::Replay(r) => {
            let text = std::fs::read_to_string(&r.manifest)?;
            let m: RunManifest = serde_json::from_str(&text)?;
            (m.invocation, validate_config(m.config_echo)?, r.out)
        }
        other => {
            let io = other.io().expect("non-replay command");
            let cfg = match &io.config {
                Some(p) => parse_config(p)?,
                None => SystemConfig::default(),
            };
            let out = io.out.clone();
            (other, cfg, out)
        }
    };
    let rows = execute(&invocation, &cfg)?;
    let manifest = RunManifest {
        config_echo: cfg.resolved(),
        command: invocation.name().to_string(),
        seed: invocation.seed(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time: start.elapsed().as_secs_f64(),
        invocation,
    };
    emit(&rows, out.as_deref(), manifest)
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run_command(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rfcov: {e}");
            e.exit_code()
        }
    }
}
