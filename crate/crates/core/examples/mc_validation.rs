//! Sanity checks on the simulator: tier frequencies, confidence intervals and
//! independence of the result from the worker count.

use std::error::Error;

use rfcov::analysis::{Metric, Scenario};
use rfcov::distributions::association_probabilities;
use rfcov::model::SystemConfig;
use rfcov::montecarlo::{result_from_tally, simulate, Geometry, SeedSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let cfg = SystemConfig::default();
    let (tau, n) = (0.3, 40_000);
    let one = simulate(&cfg, tau, Geometry::WithCenter, n, SeedSpec::new(11).with_workers(1))?;
    let many = simulate(&cfg, tau, Geometry::WithCenter, n, SeedSpec::new(11).with_workers(4))?;
    println!("identical across 1 and 4 workers: {}", one == many);

    let a1 = association_probabilities(&cfg.cluster, cfg.lambda_total)?.a1;
    let served = one.for_scenario(Scenario::ClusteredTier1).realizations as f64 / n as f64;
    let sd = (a1 * (1.0 - a1) / n as f64).sqrt();
    println!(
        "network-served fraction {served:.4}, expected {a1:.4} ({:+.2} sd)",
        (served - a1) / sd
    );

    for metric in [Metric::Energy, Metric::Joint, Metric::Throughput] {
        let r = result_from_tally(&one, metric, Scenario::Clustered, &cfg, tau)?;
        println!(
            "{:<10} {:.4} +- {:.4}  ci95 [{:.4}, {:.4}]",
            metric.as_str(),
            r.mean,
            r.stderr,
            r.ci95.0,
            r.ci95.1
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
