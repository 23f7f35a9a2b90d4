use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::analysis::{Metric, Scenario};
use crate::model::SystemConfig;

use super::{CliError, Invocation};

/// Column order of every CSV this tool writes.
pub const CSV_HEADER: [&str; 10] = [
    "tau",
    "cluster_param",
    "lambda_total",
    "metric",
    "scenario",
    "method",
    "value",
    "stderr",
    "n",
    "seed",
];

/// One output row. Analytic rows leave `stderr`, `n` and `seed` empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub tau: f64,
    pub cluster_param: f64,
    pub lambda_total: f64,
    pub metric: Metric,
    pub scenario: Scenario,
    pub method: String,
    pub value: f64,
    pub stderr: Option<f64>,
    pub n: Option<u64>,
    pub seed: Option<u64>,
}

impl Row {
    pub(crate) fn analytic(
        cfg: &SystemConfig,
        tau: f64,
        metric: Metric,
        scenario: Scenario,
        method: &str,
        value: f64,
    ) -> Row {
        Row {
            tau,
            cluster_param: cfg.cluster.size(),
            lambda_total: cfg.lambda_total,
            metric,
            scenario,
            method: method.to_string(),
            value,
            stderr: None,
            n: None,
            seed: None,
        }
    }
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<Row>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(CliError::Usage(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(CliError::from)).collect()
}

/// Everything needed to rerun a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Fully resolved configuration the command ran with.
    pub config_echo: SystemConfig,
    /// Subcommand name.
    pub command: String,
    /// Master seed of Monte Carlo commands.
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Seconds.
    pub wall_time: f64,
    pub invocation: Invocation,
}

impl RunManifest {
    /// `<out>.manifest.json`.
    pub fn path_for(out: &std::path::Path) -> std::path::PathBuf {
        let mut s = out.as_os_str().to_owned();
        s.push(".manifest.json");
        s.into()
    }
}
