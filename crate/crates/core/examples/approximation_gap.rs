//! How far each analytic approximation is from simulation.
//!
//! Pass a sample count as the first argument for tighter error bars.

use std::error::Error;

use rfcov::analysis::{energy_coverage, joint_coverage, Approximation, Metric, Scenario};
use rfcov::model::{ClusterModel, SystemConfig};
use rfcov::montecarlo::{result_from_tally, simulate, Geometry, SeedSpec};

fn label(c: &ClusterModel) -> String {
    match c {
        ClusterModel::Thomas { sigma_c } => format!("thomas {sigma_c}"),
        ClusterModel::Matern { r_c } => format!("matern {r_c}"),
    }
}

pub fn run_with(n: u64) -> Result<(), Box<dyn Error>> {
    let base = SystemConfig::default();
    let seed = SeedSpec::new(7);
    println!(
        "{:<14} {:>4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>7}",
        "config", "tau", "mc", "gap1", "gap2", "mc_P", "gapP", "stderr"
    );
    for cluster in [
        ClusterModel::Thomas { sigma_c: 2.0 },
        ClusterModel::Matern { r_c: 10.0 },
    ] {
        let cfg = SystemConfig { cluster, ..base };
        for tau in [0.2, 0.5] {
            let tally = simulate(&cfg, tau, Geometry::WithCenter, n, seed)?;
            let e = result_from_tally(&tally, Metric::Energy, Scenario::Clustered, &cfg, tau)?;
            let j = result_from_tally(&tally, Metric::Joint, Scenario::Clustered, &cfg, tau)?;
            println!(
                "{:<14} {tau:>4} {:>8.4} {:>+8.4} {:>+8.4} {:>8.4} {:>+8.4} {:>7.4}",
                label(&cluster),
                e.mean,
                energy_coverage(&cfg, tau, Approximation::Approx1)? - e.mean,
                energy_coverage(&cfg, tau, Approximation::Approx2)? - e.mean,
                j.mean,
                joint_coverage(&cfg, tau)? - j.mean,
                e.stderr
            );
        }
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    run_with(20_000)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    let n = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(200_000);
    run_with(n)
}
