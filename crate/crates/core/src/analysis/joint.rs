//! Joint coverage: energy coverage in the charging phase and `SINR >= beta`
//! in the reception phase. Both events use independent fading on the same
//! geometry, so they are conditionally independent given the gateway positions.

use std::f64::consts::PI;

use crate::distributions::{rho, Tier};
use crate::error::Result;
use crate::model::{overall_mixture, prob_gw_at_center, SystemConfig};

use super::common::{break_points, center_tail_integral, integrate_fallible, outer_spec, psi_crossing, Setup};
use super::EvalPath;

/// Tier-1 joint coverage.
pub fn joint_cov_tier1(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let sd = s.serving(Tier::Network)?;
    let hi = sd.effective_upper();
    let (alpha, c, lambda, beta) = (s.alpha, s.c, s.lambda, s.cfg.beta);
    let noise = s.noise_coeff();
    let interference = 2.0 * PI * lambda * rho(beta, alpha)?;
    let kink = psi_crossing(&s, EvalPath::Specialized)?.map(|w| w.min(hi));
    let mut pts = s.scales();
    pts.extend(kink);
    let body = integrate_fallible(
        |w| {
            let f_r1 = 2.0 * PI * lambda * w * (-PI * lambda * w * w).exp();
            if f_r1 == 0.0 || w == 0.0 {
                return Ok(0.0);
            }
            let aw = w.powf(alpha);
            let energy = match kink {
                Some(k) if w > k => aw * (c - s.psi(w, EvalPath::Specialized)?).max(0.0),
                _ => 0.0,
            };
            let exponent = noise * aw + energy + interference * w * w;
            if exponent > 745.0 {
                return Ok(0.0);
            }
            // Center gateway farther than w interferes with its own fading.
            let center = center_tail_integral(&s.model, w, |r| 1.0 / (1.0 + beta * (w / r).powf(alpha)))?;
            Ok((-exponent).exp() * f_r1 * center)
        },
        &break_points(0.0, hi, &pts),
        &outer_spec(),
    )?;
    Ok(body / s.assoc.a1)
}

/// Tier-0 joint coverage.
pub fn joint_cov_tier0(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let sd = s.serving(Tier::Center)?;
    let hi = sd.effective_upper();
    let (alpha, c, lambda) = (s.alpha, s.c, s.lambda);
    let noise = s.noise_coeff();
    let interference = 2.0 * PI * lambda * rho(s.cfg.beta, alpha)?;
    let a = s.a_radius;
    let mut pts = s.scales();
    pts.push(a);
    integrate_fallible(
        |w| {
            if w == 0.0 {
                return Ok(sd.pdf(w));
            }
            let aw = w.powf(alpha);
            let energy = if w > a { aw * (c - s.theta(w)) } else { 0.0 };
            Ok((-(noise * aw + energy + interference * w * w)).exp() * sd.pdf(w))
        },
        &break_points(0.0, hi, &pts),
        &outer_spec(),
    )
}

/// Joint coverage with a gateway at the representative cluster center:
/// `A0 * P0 + A1 * P1`.
pub fn joint_coverage(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    Ok(s.assoc.a0 * joint_cov_tier0(cfg, tau)? + s.assoc.a1 * joint_cov_tier1(cfg, tau)?)
}

/// Joint coverage when the gateways form a plain PPP.
pub fn joint_cov_ppp(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let (alpha, c, lambda) = (s.alpha, s.c, s.lambda);
    let pl = PI * lambda;
    let noise = s.noise_coeff();
    // nu(r) = 2 pi lambda rho r^2
    let nu_coeff = 2.0 * pl * rho(s.cfg.beta, alpha)?;
    let a = s.a_radius;
    let hi = s.nearest_upper();
    let mut pts = s.scales();
    pts.push(a);
    integrate_fallible(
        |r| {
            let ar = r.powf(alpha);
            let energy = if r > a {
                ar * c - 2.0 * pl * r * r / (alpha - 2.0)
            } else {
                0.0
            };
            Ok((-(noise * ar + energy + nu_coeff * r * r + pl * r * r)).exp() * 2.0 * pl * r)
        },
        &break_points(0.0, hi, &pts),
        &outer_spec(),
    )
}

/// `p_b * P_cov + (1 - p_b) * P_cov(PPP)`.
pub fn joint_cov_overall(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let p_b = prob_gw_at_center(cfg)?;
    let chi = if p_b > 0.0 { joint_coverage(cfg, tau)? } else { 0.0 };
    let chi_bar = if p_b < 1.0 { joint_cov_ppp(cfg, tau)? } else { 0.0 };
    Ok(overall_mixture(chi, chi_bar, p_b))
}
