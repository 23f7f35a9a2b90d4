use crate::distributions::Tier;
use crate::error::{Error, Result};
use crate::model::{check_tau, SystemConfig};

use super::sampling::Realization;

/// `d^-alpha` from the squared distance.
#[inline]
pub(crate) fn path_gain(d2: f64, alpha: f64) -> f64 {
    if alpha == 4.0 {
        1.0 / (d2 * d2)
    } else {
        d2.powf(-0.5 * alpha)
    }
}

/// Index of the nearest gateway; ties go to the lower index.
#[inline]
pub(crate) fn nearest(d2: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &d) in d2.iter().enumerate() {
        if best.is_none_or(|b| d < d2[b]) {
            best = Some(i);
        }
    }
    best
}

fn squared_distances(real: &Realization) -> Vec<f64> {
    real.gateways().map(|p| p.norm_sqr()).collect()
}

fn check_draws(draws: &[f64], n: usize, what: &'static str) -> Result<()> {
    if draws.len() != n {
        return Err(Error::domain(
            what,
            format!("need one draw per gateway ({n}), got {}", draws.len()),
        ));
    }
    Ok(())
}

/// Energy harvested in the charging phase, in joules:
/// `eta tau T P_t (sum_i g_i d_i^-alpha + tail_mean)`, with `g` in gateway index order.
pub fn harvested_energy(real: &Realization, g: &[f64], cfg: &SystemConfig, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    let d2 = squared_distances(real);
    check_draws(g, d2.len(), "charging fading")?;
    let sum: f64 = d2.iter().zip(g).map(|(&d, &gi)| gi * path_gain(d, cfg.alpha)).sum();
    Ok(cfg.eta * tau * cfg.slot_t * cfg.p_t * (sum + real.tail_mean))
}

/// Downlink SINR from the nearest gateway, with `h` in gateway index order.
///
/// Interference is every other gateway plus the mean of the truncated tail.
pub fn sinr(real: &Realization, h: &[f64], cfg: &SystemConfig) -> Result<f64> {
    let d2 = squared_distances(real);
    check_draws(h, d2.len(), "reception fading")?;
    let s = nearest(&d2).ok_or(Error::NoGateway)?;
    let mut interference = real.tail_mean;
    for (i, (&d, &hi)) in d2.iter().zip(h).enumerate() {
        if i != s {
            interference += hi * path_gain(d, cfg.alpha);
        }
    }
    Ok(h[s] * path_gain(d2[s], cfg.alpha) / (cfg.noise / cfg.p_t + interference))
}

/// Tier of the serving gateway.
pub fn serving_tier(real: &Realization) -> Result<Tier> {
    let d2 = squared_distances(real);
    let s = nearest(&d2).ok_or(Error::NoGateway)?;
    Ok(if real.center_gw.is_some() && s == 0 {
        Tier::Center
    } else {
        Tier::Network
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::Point;

    fn single(d: f64) -> Realization {
        Realization {
            center_gw: None,
            other_gws: vec![Point { x: 0.0, y: d }],
            r_max: 100.0,
            tail_mean: 0.0,
        }
    }

    #[test]
    fn one_gateway_energy() {
        let cfg = SystemConfig::default();
        let e = harvested_energy(&single(3.0), &[1.0], &cfg, 0.4).unwrap();
        assert!((e - 0.5 * 0.4 * 3f64.powi(-4)).abs() < 1e-15);
    }

    #[test]
    fn empty_geometry() {
        let cfg = SystemConfig::default();
        let empty = Realization {
            other_gws: vec![],
            ..single(1.0)
        };
        assert_eq!(harvested_energy(&empty, &[], &cfg, 0.5).unwrap(), 0.0);
        assert_eq!(sinr(&empty, &[], &cfg), Err(Error::NoGateway));
    }

    #[test]
    fn one_gateway_snr() {
        let cfg = SystemConfig::default();
        let s = sinr(&single(2.0), &[1.0], &cfg).unwrap();
        assert!((s - 2f64.powi(-4) / cfg.noise).abs() < 1e-6 * s);
    }

    #[test]
    fn equidistant_tie_goes_to_center() {
        let cfg = SystemConfig {
            alpha: 3.0,
            ..SystemConfig::default()
        };
        let real = Realization {
            center_gw: Some(Point { x: 2.0, y: 0.0 }),
            other_gws: vec![Point { x: 0.0, y: -2.0 }],
            r_max: 100.0,
            tail_mean: 0.0,
        };
        assert_eq!(serving_tier(&real).unwrap(), Tier::Center);
        // Equal fading: swapping which one serves does not change the SINR.
        let a = sinr(&real, &[0.7, 0.7], &cfg).unwrap();
        let swapped = Realization {
            center_gw: Some(Point { x: 0.0, y: -2.0 }),
            other_gws: vec![Point { x: 2.0, y: 0.0 }],
            ..real
        };
        assert_eq!(a, sinr(&swapped, &[0.7, 0.7], &cfg).unwrap());
    }

    #[test]
    fn fast_path_gain_matches_powf() {
        for d2 in [0.01, 1.0, 37.0, 1e4] {
            let fast = path_gain(d2, 4.0);
            assert!((fast - f64::powf(d2, -2.0)).abs() <= 1e-15 * fast);
        }
    }

    #[test]
    fn wrong_draw_count_rejected() {
        let cfg = SystemConfig::default();
        assert!(harvested_energy(&single(1.0), &[1.0, 2.0], &cfg, 0.5).is_err());
    }
}
