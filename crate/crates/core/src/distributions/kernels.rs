//! Conditional-mean and interference kernels.
//!
//! `theta` and `psi` are Campbell-theorem means of the path-gain sum from
//! the gateways that do not serve the device; `rho` and `nu` are the
//! exponents left by the PPP probability generating functional of the
//! Rayleigh-faded interference.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ClusterModel;

use super::laws::cluster_center_distance_law;
use super::quadrature::{integrate, QuadratureSpec};
use super::special::upper_incomplete_gamma_scaled;

/// How [`psi`] is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiVariant {
    /// Quadrature of the conditional mean over the center-distance law.
    General,
    /// Incomplete-gamma form (Thomas) or elementary form (Matérn).
    ClosedForm,
}

fn check_positive(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, format!("must be positive, got {v}")))
    }
}

/// Mean path-gain sum of a PPP of density `lambda` outside radius `w`:
/// `2 pi lambda w^(2 - alpha) / (alpha - 2)`.
pub fn theta(lambda: f64, alpha: f64, w: f64) -> Result<f64> {
    check_positive("distance", w)?;
    if !(alpha > 2.0) {
        return Err(Error::domain("alpha", format!("must exceed 2, got {alpha}")));
    }
    Ok(2.0 * PI * lambda / (alpha - 2.0) * w.powf(2.0 - alpha))
}

/// Conditional mean of the non-serving path-gain sum when the device is served
/// by the network at distance `w1` (so its own cluster center lies beyond `w1`).
pub fn psi(model: &ClusterModel, lambda: f64, alpha: f64, w1: f64, variant: PsiVariant) -> Result<f64> {
    let network = theta(lambda, alpha, w1)?;
    if let ClusterModel::Matern { r_c } = *model {
        if w1 >= r_c {
            return Err(Error::domain(
                "psi distance",
                format!("w1 = {w1} lies outside the Matérn cluster radius {r_c}"),
            ));
        }
    }
    let center = match variant {
        PsiVariant::General => center_mean_by_quadrature(model, alpha, w1)?,
        PsiVariant::ClosedForm => center_mean_closed(model, alpha, w1)?,
    };
    Ok(center + network)
}

/// `E[R0^-alpha | R0 > w]` by quadrature.
fn center_mean_by_quadrature(model: &ClusterModel, alpha: f64, w: f64) -> Result<f64> {
    let spec = QuadratureSpec::with_tolerances(0.0, 1e-12);
    match *model {
        ClusterModel::Thomas { sigma_c } => {
            let s2 = sigma_c * sigma_c;
            // pdf(r) / ccdf(w) = (r / s2) exp(-(r^2 - w^2) / (2 s2)), kept in one exponent.
            let hi = (w * w + 2.0 * s2 * 40.0).sqrt();
            let r = integrate(
                |r: f64| r.powf(1.0 - alpha) / s2 * (-(r * r - w * w) / (2.0 * s2)).exp(),
                w,
                hi,
                &spec,
            )?;
            Ok(r.value)
        }
        ClusterModel::Matern { r_c } => {
            let law = cluster_center_distance_law(model);
            let tail = law.ccdf(w);
            let r = integrate(|r: f64| r.powf(-alpha) * law.pdf(r), w, r_c, &spec)?;
            Ok(r.value / tail)
        }
    }
}

fn center_mean_closed(model: &ClusterModel, alpha: f64, w: f64) -> Result<f64> {
    match *model {
        ClusterModel::Thomas { sigma_c } => {
            let x = w * w / (2.0 * sigma_c * sigma_c);
            let g = upper_incomplete_gamma_scaled(1.0 - alpha / 2.0, x)?;
            Ok(g / (sigma_c.powf(alpha) * 2f64.powf(alpha / 2.0)))
        }
        ClusterModel::Matern { r_c } => {
            // 2 (w^(2-a) - R^(2-a)) / ((a-2)(R^2 - w^2)), rewritten in q = w/R
            // so that it stays accurate as w -> R.
            let l = (w / r_c).ln();
            let ratio = (((2.0 - alpha) * l).exp_m1() / -(2.0 * l).exp_m1()) * r_c.powf(-alpha);
            Ok(2.0 / (alpha - 2.0) * ratio)
        }
    }
}

/// `int_{1/beta}^inf z^(2/alpha - 1) / (1 + z) dz`, shared by [`rho`] and [`nu`].
///
/// Substituting `z = s^(-k)` with `k = alpha / (alpha - 2)` turns the slowly
/// decaying tail into `k * int_0^{beta^(1/k)} ds / (1 + s^k)`, which is smooth.
fn pgfl_integral(beta: f64, alpha: f64) -> Result<f64> {
    check_positive("beta", beta)?;
    if !(alpha > 2.0) {
        return Err(Error::domain("alpha", format!("must exceed 2, got {alpha}")));
    }
    let k = alpha / (alpha - 2.0);
    let spec = QuadratureSpec::with_tolerances(0.0, 1e-13);
    let r = integrate(|s: f64| 1.0 / (1.0 + s.powf(k)), 0.0, beta.powf(1.0 / k), &spec)?;
    Ok(k * r.value)
}

/// SINR interference kernel
/// `rho(beta, alpha) = beta^(2/alpha) / 2 * int_{beta^(-2/alpha)}^inf du / (1 + u^(alpha/2))`.
pub fn rho(beta: f64, alpha: f64) -> Result<f64> {
    Ok(beta.powf(2.0 / alpha) / alpha * pgfl_integral(beta, alpha)?)
}

/// PPP interference exponent
/// `nu(r1, beta) = 2 pi lambda beta^(2/alpha) r1^2 / alpha * int_{1/beta}^inf dz / (z^(1-2/alpha) (1+z))`.
pub fn nu(lambda: f64, beta: f64, alpha: f64, r1: f64) -> Result<f64> {
    if r1 < 0.0 {
        return Err(Error::domain("distance", format!("r1 must be >= 0, got {r1}")));
    }
    let i = pgfl_integral(beta, alpha)?;
    Ok(2.0 * PI * lambda * beta.powf(2.0 / alpha) * r1 * r1 / alpha * i)
}
