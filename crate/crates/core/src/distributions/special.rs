//! Upper incomplete gamma function for any real order, including the
//! non-positive orders `1 - alpha/2` that appear in the Thomas-cluster
//! conditional mean.
//!
//! Positive orders and the anchor `Gamma(0, x) = E1(x)` are evaluated by
//! quadrature in a form whose integrand is smooth for every `x > 0`.
//! Non-positive orders use the downward recurrence
//! `Gamma(s, x) = (Gamma(s + 1, x) - x^s e^-x) / s` from an anchor in `[0, 1)`.
//! Everything is carried in the scaled form `e^x Gamma(s, x)`, which stays
//! representable when `Gamma(s, x)` itself would underflow.

use super::quadrature::{integrate, QuadratureSpec};
use crate::error::{Error, Result};

/// `e^x * Gamma(s, x)` straight from its integral. Requires `x > 0`, or
/// `x = 0` with `s > 0`.
fn scaled_direct(s: f64, x: f64) -> Result<f64> {
    let spec = QuadratureSpec::precise();
    if x == 0.0 {
        // Gamma(s) = int over all v of exp(s v - e^v), split at v = 0.
        let right = integrate(|v: f64| (s * v - v.exp()).exp(), 0.0, f64::INFINITY, &spec)?;
        let left = integrate(|u: f64| (-s * u - (-u).exp()).exp(), 0.0, f64::INFINITY, &spec)?;
        return Ok(left.value + right.value);
    }
    if x >= 1.0 {
        // t = x + u:  int_0^inf (x + u)^(s-1) e^-u du
        let r = integrate(|u: f64| ((s - 1.0) * (x + u).ln() - u).exp(), 0.0, f64::INFINITY, &spec)?;
        Ok(r.value)
    } else {
        // t = e^v:  int_{ln x}^inf exp(s v - (e^v - x)) dv, smooth even as x -> 0.
        let r = integrate(|v: f64| (s * v - (v.exp() - x)).exp(), x.ln(), f64::INFINITY, &spec)?;
        Ok(r.value)
    }
}

/// `e^x * E1(x)` for `x > 0`.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("E1 argument", format!("x must be positive, got {x}")));
    }
    scaled_direct(0.0, x)
}

/// Exponential integral `E1(x) = Gamma(0, x)` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    Ok(exp_integral_e1_scaled(x)? * (-x).exp())
}

/// `e^x * Gamma(s, x)`.
pub fn upper_incomplete_gamma_scaled(s: f64, x: f64) -> Result<f64> {
    if s.is_nan() || x.is_nan() || x < 0.0 {
        return Err(Error::domain(
            "incomplete gamma argument",
            format!("need x >= 0, got s = {s}, x = {x}"),
        ));
    }
    if s > 0.0 {
        return scaled_direct(s, x);
    }
    if x == 0.0 {
        return Err(Error::domain(
            "incomplete gamma argument",
            format!("Gamma({s}, 0) diverges for non-positive order"),
        ));
    }
    let steps = (-s).ceil();
    let anchor = s + steps;
    let mut g = if anchor == 0.0 {
        exp_integral_e1_scaled(x)?
    } else {
        scaled_direct(anchor, x)?
    };
    let mut order = anchor;
    for _ in 0..steps as usize {
        order -= 1.0;
        g = (g - x.powf(order)) / order;
    }
    Ok(g)
}

/// Upper incomplete gamma function `Gamma(s, x) = int_x^inf t^(s-1) e^-t dt`.
///
/// Any real `s` is accepted; `x` must be positive when `s <= 0`.
pub fn upper_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    let g = upper_incomplete_gamma_scaled(s, x)?;
    Ok(g * (-x).exp())
}
