//! The building blocks: interference kernels, distance laws and special functions.

use std::error::Error;

use rfcov::distributions::{association_probabilities, nu, psi, rho, theta, upper_incomplete_gamma, PsiVariant};
use rfcov::model::ClusterModel;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let (lambda, alpha) = (0.01, 4.0);

    println!(
        "rho(1, 4) = {:.12}  (pi/8 = {:.12})",
        rho(1.0, alpha)?,
        std::f64::consts::PI / 8.0
    );
    println!("nu(r=10)  = {:.12}", nu(lambda, 1.0, alpha, 10.0)?);
    println!("Gamma(0.5, 1) = {:.12}", upper_incomplete_gamma(0.5, 1.0)?);

    for model in [
        ClusterModel::Thomas { sigma_c: 5.0 },
        ClusterModel::Matern { r_c: 10.0 },
    ] {
        let assoc = association_probabilities(&model, lambda)?;
        println!("\n{model:?}: A0 = {:.6}, A1 = {:.6}", assoc.a0, assoc.a1);
        println!("{:>6} {:>14} {:>14} {:>14}", "w", "theta", "psi", "psi (quad)");
        for w in [1.0, 2.0, 4.0, 8.0] {
            let closed = psi(&model, lambda, alpha, w, PsiVariant::ClosedForm)?;
            let general = psi(&model, lambda, alpha, w, PsiVariant::General)?;
            println!(
                "{w:>6} {:>14.6e} {closed:>14.6e} {general:>14.6e}",
                theta(lambda, alpha, w)?
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
