//! The file interfaces: a JSON configuration in, CSV rows and a run manifest out.
//!
//! `cargo run --example config_and_csv -- my_config.json` reads the given
//! file; without an argument the reference configuration is written to a
//! temporary directory first.

use std::error::Error;
use std::path::PathBuf;

use rfcov::analysis::{Approximation, Metric, Scenario};
use rfcov::cli::{cmd_analytic, parse_config, read_csv, write_csv};
use rfcov::model::SystemConfig;

pub fn run_with(path: Option<PathBuf>) -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("rfcov-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = match path {
        Some(p) => p,
        None => {
            let p = dir.join("config.json");
            std::fs::write(&p, serde_json::to_string_pretty(&SystemConfig::default())?)?;
            p
        }
    };
    let cfg = parse_config(&path)?;
    let rows = cmd_analytic(
        &cfg,
        Metric::Energy,
        Scenario::Clustered,
        Approximation::Approx1,
        &[0.2, 0.5, 0.8],
    )?;

    let out = dir.join("energy.csv");
    write_csv(&rows, std::fs::File::create(&out)?)?;
    print!("{}", std::fs::read_to_string(&out)?);
    assert_eq!(read_csv(std::fs::File::open(&out)?)?, rows);

    // the same through the command line front end, which also writes a manifest
    let code = rfcov::cli::run([
        "rfcov",
        "analytic",
        "--tau",
        "0.2:0.8:0.3",
        "--out",
        out.to_str().unwrap(),
    ]);
    println!("exit {code}, manifest at {}.manifest.json", out.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run_with(None)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_with(std::env::args().nth(1).map(PathBuf::from))
}
