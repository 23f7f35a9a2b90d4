//! Energy coverage against the charging fraction tau, for both cluster
//! models, both approximations and the unclustered baseline.

use std::error::Error;

use rfcov::analysis::{energy_cov_ppp, energy_coverage, Approximation};
use rfcov::model::{ClusterModel, SystemConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let base = SystemConfig::default();
    let configs = [
        (
            "thomas sigma=5",
            SystemConfig {
                cluster: ClusterModel::Thomas { sigma_c: 5.0 },
                ..base
            },
        ),
        (
            "matern R=10",
            SystemConfig {
                cluster: ClusterModel::Matern { r_c: 10.0 },
                ..base
            },
        ),
    ];
    for (name, cfg) in configs {
        println!("{name}");
        println!("{:>5} {:>9} {:>9} {:>9}", "tau", "approx1", "approx2", "ppp");
        for tau in [0.1, 0.2, 0.3, 0.5, 0.7, 0.9] {
            println!(
                "{tau:>5} {:>9.5} {:>9.5} {:>9.5}",
                energy_coverage(&cfg, tau, Approximation::Approx1)?,
                energy_coverage(&cfg, tau, Approximation::Approx2)?,
                energy_cov_ppp(&cfg, tau)?
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
