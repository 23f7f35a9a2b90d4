//! Throughput-optimal charging fraction as clusters spread out.

use std::error::Error;

use rfcov::analysis::{optimal_tau, Scenario};
use rfcov::model::SystemConfig;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = SystemConfig::default();
    println!("{:>8} {:>8} {:>10}", "sigma_c", "tau*", "R*");
    for sigma in [2.0, 5.0, 20.0, 100.0] {
        let r = optimal_tau(&base.with_cluster_size(sigma), Scenario::Clustered, 0.05, 1e-3)?;
        println!("{sigma:>8} {:>8.4} {:>10.6}", r.tau_star, r.throughput_star);
    }
    let ppp = optimal_tau(&base, Scenario::PppBaseline, 0.05, 1e-3)?;
    println!("{:>8} {:>8.4} {:>10.6}", "ppp", ppp.tau_star, ppp.throughput_star);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
