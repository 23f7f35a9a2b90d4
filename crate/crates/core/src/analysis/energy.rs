//! Energy coverage: the probability that the energy harvested in the
//! charging phase reaches the receiver-activation threshold.

use std::f64::consts::PI;

use crate::distributions::{upper_incomplete_gamma, Tier};
use crate::error::Result;
use crate::model::{overall_mixture, prob_gw_at_center, ClusterModel, SystemConfig};

use super::common::{
    break_points, center_head_integral, center_tail_integral, hypoexp_survival, integrate_fallible, outer_spec,
    psi_crossing, serving_cdf, Setup,
};
use super::{Approximation, EvalPath};

/// Tier-1 energy coverage under the mean-interference approximation.
pub fn energy_cov_tier1_approx1(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    energy_cov_tier1_approx1_with(cfg, tau, EvalPath::Specialized)
}

pub fn energy_cov_tier1_approx1_with(cfg: &SystemConfig, tau: f64, path: EvalPath) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let sd = s.serving(Tier::Network)?;
    let kink = match psi_crossing(&s, path)? {
        None => return Ok(1.0),
        Some(w) => w,
    };
    if path == EvalPath::Specialized && s.alpha == 4.0 {
        if let ClusterModel::Matern { r_c } = s.model {
            return matern_alpha4_tier1(&s, r_c);
        }
    }
    let hi = sd.effective_upper();
    let prefix = serving_cdf(&sd, kink, path)?;
    if kink >= hi {
        return Ok(prefix);
    }
    let (alpha, c) = (s.alpha, s.c);
    let tail = integrate_fallible(
        |w| {
            let pdf = sd.pdf(w);
            if pdf == 0.0 {
                return Ok(0.0);
            }
            let deficit = (c - s.psi(w, path)?).max(0.0);
            Ok((-w.powf(alpha) * deficit).exp() * pdf)
        },
        &break_points(kink, hi, &s.scales()),
        &outer_spec(),
    )?;
    Ok(prefix + tail)
}

/// Matérn, `alpha = 4`: `Psi(w) = (pi lambda + 1/R^2) / w^2`, so the crossing is
/// `B = sqrt((pi lambda + 1/R^2) / C)` and the integrand is elementary.
fn matern_alpha4_tier1(s: &Setup, r_c: f64) -> Result<f64> {
    let pl = PI * s.lambda;
    let r2 = r_c * r_c;
    let b = ((pl + 1.0 / r2) / s.c).sqrt();
    if b >= r_c {
        return Ok(1.0);
    }
    let a1 = s.assoc.a1;
    let c = s.c;
    let body = integrate_fallible(
        |w| {
            let w2 = w * w;
            Ok((-(c * w2 * w2 - w2 / r2)).exp() * 2.0 * pl * w * (r2 - w2) / r2)
        },
        &break_points(b, r_c, &s.scales()),
        &outer_spec(),
    )?;
    let prefix = (pl * r2 - 1.0 + (pl * (b * b - r2) + 1.0) * (-pl * b * b).exp()) / (pl * r2 * a1);
    Ok(body / a1 + prefix)
}

/// Tier-0 energy coverage under the mean-interference approximation.
pub fn energy_cov_tier0_approx1(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    energy_cov_tier0_approx1_with(cfg, tau, EvalPath::Specialized)
}

pub fn energy_cov_tier0_approx1_with(cfg: &SystemConfig, tau: f64, path: EvalPath) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let sd = s.serving(Tier::Center)?;
    let hi = sd.effective_upper();
    let a = s.a_radius;
    if a >= hi {
        return serving_cdf(&sd, hi, path);
    }
    let (alpha, c, lambda, a0) = (s.alpha, s.c, s.lambda, s.assoc.a0);
    let pts = break_points(a, hi, &s.scales());
    match (path, s.model) {
        (EvalPath::Specialized, ClusterModel::Matern { r_c }) if alpha == 4.0 => {
            let pl = PI * lambda;
            let g = upper_incomplete_gamma(0.5, c * a.powi(4))? - upper_incomplete_gamma(0.5, c * r_c.powi(4))?;
            Ok((-(-pl * a * a).exp_m1() + pl / (2.0 * c.sqrt()) * g) / (pl * r_c * r_c * a0))
        }
        (EvalPath::Specialized, ClusterModel::Thomas { sigma_c }) => {
            let s2 = sigma_c * sigma_c;
            let quad = PI * lambda + 1.0 / (2.0 * s2) - 2.0 * PI * lambda / (alpha - 2.0);
            let body = integrate_fallible(
                |w| Ok((-(c * w.powf(alpha) + quad * w * w)).exp() * w / s2),
                &pts,
                &outer_spec(),
            )?;
            Ok(sd.cdf(a) + body / a0)
        }
        _ => {
            let body = integrate_fallible(
                |w| Ok((-w.powf(alpha) * (c - s.theta(w))).exp() * sd.pdf(w)),
                &pts,
                &outer_spec(),
            )?;
            Ok(serving_cdf(&sd, a, path)? + body)
        }
    }
}

/// Tier-1 energy coverage keeping the serving link and the cluster-center
/// gateway with their exact exponential fading; the rest enters through its mean.
pub fn energy_cov_tier1_approx2(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let sd = s.serving(Tier::Network)?;
    let hi = sd.effective_upper();
    let a = s.a_radius;
    if a >= hi {
        return Ok(sd.cdf(hi));
    }
    let (alpha, c, lambda) = (s.alpha, s.c, s.lambda);
    let body = integrate_fallible(
        |w| {
            let f_r1 = 2.0 * PI * lambda * w * (-PI * lambda * w * w).exp();
            if f_r1 == 0.0 {
                return Ok(0.0);
            }
            let aw = w.powf(alpha);
            let rest = c - s.theta(w);
            let inner = center_tail_integral(&s.model, w, |r| hypoexp_survival(aw, r.powf(alpha), rest))?;
            Ok(f_r1 * inner)
        },
        &break_points(a, hi, &s.scales()),
        &outer_spec(),
    )?;
    Ok(sd.cdf(a) + body / s.assoc.a1)
}

/// Tier-0 energy coverage with the serving center gateway and the nearest
/// network gateway kept exact; the network beyond the nearest one enters
/// through its mean.
pub fn energy_cov_tier0_approx2(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let (alpha, c, lambda) = (s.alpha, s.c, s.lambda);
    let f_r1 = |r: f64| 2.0 * PI * lambda * r * (-PI * lambda * r * r).exp();
    let hi = s.nearest_upper();
    let a = s.a_radius.min(hi);
    // Nearest network gateway inside A: covered whenever the center serves.
    let covered = integrate_fallible(
        |r| Ok(f_r1(r) * center_head_integral(&s.model, r, |_| 1.0)?),
        &break_points(0.0, a, &s.scales()),
        &outer_spec(),
    )?;
    let mut body = 0.0;
    if a < hi {
        body = integrate_fallible(
            |r| {
                let weight = f_r1(r);
                if weight == 0.0 {
                    return Ok(0.0);
                }
                let br = r.powf(alpha);
                let rest = c - s.theta(r);
                let inner = center_head_integral(&s.model, r, |w| hypoexp_survival(w.powf(alpha), br, rest))?;
                Ok(weight * inner)
            },
            &break_points(a, hi, &s.scales()),
            &outer_spec(),
        )?;
    }
    Ok((covered + body) / s.assoc.a0)
}

/// Energy coverage with a gateway at the representative cluster center:
/// `A0 * E0 + A1 * E1`.
pub fn energy_coverage(cfg: &SystemConfig, tau: f64, approx: Approximation) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let (e0, e1) = energy_tiers(cfg, tau, approx)?;
    Ok(s.assoc.a0 * e0 + s.assoc.a1 * e1)
}

pub(crate) fn energy_tiers(cfg: &SystemConfig, tau: f64, approx: Approximation) -> Result<(f64, f64)> {
    Ok(match approx {
        Approximation::Approx1 => (energy_cov_tier0_approx1(cfg, tau)?, energy_cov_tier1_approx1(cfg, tau)?),
        Approximation::Approx2 => (energy_cov_tier0_approx2(cfg, tau)?, energy_cov_tier1_approx2(cfg, tau)?),
    })
}

/// Energy coverage when the gateways form a plain PPP.
pub fn energy_cov_ppp(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    let s = Setup::new(cfg, tau)?;
    let (alpha, c, lambda) = (s.alpha, s.c, s.lambda);
    let pl = PI * lambda;
    let hi = s.nearest_upper();
    let a = s.a_radius;
    if a >= hi {
        return Ok(1.0);
    }
    let quad = (1.0 - 2.0 / (alpha - 2.0)) * pl;
    let body = integrate_fallible(
        |r| Ok((-(c * r.powf(alpha) + quad * r * r)).exp() * 2.0 * pl * r),
        &break_points(a, hi, &s.scales()),
        &outer_spec(),
    )?;
    Ok(-(-pl * a * a).exp_m1() + body)
}

/// `p_b * E_cov + (1 - p_b) * E_cov(PPP)`.
pub fn energy_cov_overall(cfg: &SystemConfig, tau: f64, approx: Approximation) -> Result<f64> {
    let p_b = prob_gw_at_center(cfg)?;
    let chi = if p_b > 0.0 {
        energy_coverage(cfg, tau, approx)?
    } else {
        0.0
    };
    let chi_bar = if p_b < 1.0 { energy_cov_ppp(cfg, tau)? } else { 0.0 };
    Ok(overall_mixture(chi, chi_bar, p_b))
}
