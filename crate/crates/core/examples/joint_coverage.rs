//! Joint energy and SINR coverage and the resulting throughput.

use std::error::Error;

use rfcov::analysis::{
    energy_coverage, joint_cov_tier0, joint_cov_tier1, joint_coverage, throughput, Approximation, Scenario,
};
use rfcov::model::SystemConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = SystemConfig::default().with_cluster_size(2.0);
    println!(
        "{:>5} {:>8} {:>8} {:>8} {:>8} {:>10}",
        "tau", "energy", "joint", "tier0", "tier1", "R (b/s/Hz)"
    );
    for tau in [0.05, 0.1, 0.2, 0.4, 0.6, 0.8] {
        println!(
            "{tau:>5} {:>8.5} {:>8.5} {:>8.5} {:>8.5} {:>10.5}",
            energy_coverage(&cfg, tau, Approximation::Approx1)?,
            joint_coverage(&cfg, tau)?,
            joint_cov_tier0(&cfg, tau)?,
            joint_cov_tier1(&cfg, tau)?,
            throughput(&cfg, tau, Scenario::Clustered)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
