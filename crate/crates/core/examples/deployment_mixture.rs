//! Coverage when only a fraction gamma of cluster centers host a gateway.

use std::error::Error;

use rfcov::analysis::{energy_cov_overall, joint_cov_overall, Approximation};
use rfcov::model::{prob_gw_at_center, SystemConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = SystemConfig::default();
    let tau = 0.3;
    println!("{:>6} {:>7} {:>8} {:>8}", "gamma", "p_b", "energy", "joint");
    for gamma in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let cfg = base.with_center_fraction(gamma);
        println!(
            "{gamma:>6} {:>7.3} {:>8.5} {:>8.5}",
            prob_gw_at_center(&cfg)?,
            energy_cov_overall(&cfg, tau, Approximation::Approx1)?,
            joint_cov_overall(&cfg, tau)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
