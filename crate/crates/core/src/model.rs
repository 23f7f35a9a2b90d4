//! System configuration and the scalar quantities shared by the analytic and
//! simulated paths: the energy threshold, the normalized threshold `C(tau)`,
//! the probability that the typical device has a gateway at its cluster
//! center, and the two-scenario mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dispersion law of device offsets around their cluster center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClusterModel {
    /// Isotropic Gaussian offsets with per-axis standard deviation `sigma_c` (m).
    Thomas { sigma_c: f64 },
    /// Offsets uniform on a disc of radius `r_c` (m).
    Matern { r_c: f64 },
}

impl ClusterModel {
    /// `sigma_c` or `r_c`, whichever the variant carries.
    pub fn size(&self) -> f64 {
        match *self {
            ClusterModel::Thomas { sigma_c } => sigma_c,
            ClusterModel::Matern { r_c } => r_c,
        }
    }

    /// Same law with its size parameter replaced.
    pub fn with_size(&self, size: f64) -> Self {
        match self {
            ClusterModel::Thomas { .. } => ClusterModel::Thomas { sigma_c: size },
            ClusterModel::Matern { .. } => ClusterModel::Matern { r_c: size },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (name, v) = match *self {
            ClusterModel::Thomas { sigma_c } => ("sigma_c", sigma_c),
            ClusterModel::Matern { r_c } => ("r_c", r_c),
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "cluster.{name} must be positive and finite (got {v})"
            )));
        }
        Ok(())
    }
}

/// Energy a device must harvest during the charging phase to power its receiver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnergyThresholdSpec {
    /// Constant threshold in joules.
    Fixed { e_rec: f64 },
    /// `E_rec(tau) = (1 - tau) * T * (a * r_prime + b)`.
    ///
    /// `r_prime` is the target downlink rate; when absent it defaults to
    /// `log2(1 + beta)`, the rate implied by the SINR threshold.
    RateLinked {
        a: f64,
        b: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_prime: Option<f64>,
    },
}

/// All physical and geometric parameters of the network.
///
/// Densities are in points/m², distances in meters, powers in watts and
/// energies in joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Path-loss exponent.
    pub alpha: f64,
    /// Density of all gateways, `lambda_bc + lambda_b`.
    pub lambda_total: f64,
    /// Density of gateways sitting on cluster centers.
    pub lambda_bc: f64,
    /// Density of gateways placed independently of the devices.
    pub lambda_b: f64,
    /// Density of cluster centers.
    pub lambda_c: f64,
    /// Mean devices per cluster that has a gateway at its center.
    pub n1: f64,
    /// Mean devices per cluster without a gateway.
    pub n2: f64,
    pub cluster: ClusterModel,
    /// Gateway transmit power.
    pub p_t: f64,
    /// Thermal noise power.
    #[serde(default = "default_noise")]
    pub noise: f64,
    /// Harvester efficiency.
    pub eta: f64,
    /// Slot duration `T` in seconds.
    pub slot_t: f64,
    /// SINR threshold.
    pub beta: f64,
    pub e_rec: EnergyThresholdSpec,
}

/// Noise floor used when a configuration leaves it unset; small enough that
/// the network is interference limited.
pub const DEFAULT_NOISE: f64 = 1e-10;

fn default_noise() -> f64 {
    DEFAULT_NOISE
}

impl Default for SystemConfig {
    /// The reference operating point: `alpha = 4`, `lambda = 0.01`,
    /// `eta = 0.5`, `P_t = 1`, rate-linked threshold with `a = 1e-4`,
    /// `b = 5e-5`, every gateway on a cluster center, Thomas `sigma_c = 5`,
    /// `beta = 1`, `r_prime = 1`.
    fn default() -> Self {
        SystemConfig {
            alpha: 4.0,
            lambda_total: 0.01,
            lambda_bc: 0.01,
            lambda_b: 0.0,
            lambda_c: 0.01,
            n1: 10.0,
            n2: 10.0,
            cluster: ClusterModel::Thomas { sigma_c: 5.0 },
            p_t: 1.0,
            noise: DEFAULT_NOISE,
            eta: 0.5,
            slot_t: 1.0,
            beta: 1.0,
            e_rec: EnergyThresholdSpec::RateLinked {
                a: 1e-4,
                b: 5e-5,
                r_prime: Some(1.0),
            },
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidConfig(msg()))
    }
}

/// Returns `cfg` unchanged when every invariant holds, otherwise an error
/// naming the first violated one.
pub fn validate_config(cfg: SystemConfig) -> Result<SystemConfig> {
    let finite = [
        ("alpha", cfg.alpha),
        ("lambda_total", cfg.lambda_total),
        ("lambda_bc", cfg.lambda_bc),
        ("lambda_b", cfg.lambda_b),
        ("lambda_c", cfg.lambda_c),
        ("n1", cfg.n1),
        ("n2", cfg.n2),
        ("p_t", cfg.p_t),
        ("noise", cfg.noise),
        ("eta", cfg.eta),
        ("slot_t", cfg.slot_t),
        ("beta", cfg.beta),
    ];
    for (name, v) in finite {
        check(v.is_finite(), || format!("{name} must be finite (got {v})"))?;
    }
    check(cfg.alpha > 2.0, || format!("alpha must exceed 2 (got {})", cfg.alpha))?;
    check(cfg.lambda_bc >= 0.0, || "lambda_bc must be non-negative".into())?;
    check(cfg.lambda_b >= 0.0, || "lambda_b must be non-negative".into())?;
    check(cfg.lambda_total > 0.0, || "lambda_total must be positive".into())?;
    let sum = cfg.lambda_bc + cfg.lambda_b;
    check(
        (cfg.lambda_total - sum).abs() <= 1e-9 * cfg.lambda_total.max(sum),
        || {
            format!(
                "lambda_total must equal lambda_bc + lambda_b ({} != {} + {})",
                cfg.lambda_total, cfg.lambda_bc, cfg.lambda_b
            )
        },
    )?;
    check(cfg.lambda_bc <= cfg.lambda_c, || {
        format!(
            "lambda_bc must not exceed lambda_c ({} > {})",
            cfg.lambda_bc, cfg.lambda_c
        )
    })?;
    check((0.0..=1.0).contains(&cfg.eta), || {
        format!("eta must lie in [0, 1] (got {})", cfg.eta)
    })?;
    check(cfg.p_t > 0.0, || "p_t must be positive".into())?;
    check(cfg.slot_t > 0.0, || "slot_t must be positive".into())?;
    check(cfg.noise >= 0.0, || "noise must be non-negative".into())?;
    check(cfg.beta > 0.0, || "beta must be positive".into())?;
    check(cfg.n1 > 0.0, || "n1 must be positive".into())?;
    check(cfg.n2 > 0.0, || "n2 must be positive".into())?;
    cfg.cluster.validate()?;
    match cfg.e_rec {
        EnergyThresholdSpec::Fixed { e_rec } => {
            check(e_rec.is_finite() && e_rec >= 0.0, || {
                format!("e_rec.e_rec must be non-negative (got {e_rec})")
            })?;
        }
        EnergyThresholdSpec::RateLinked { a, b, r_prime } => {
            check(a.is_finite() && b.is_finite(), || {
                "e_rec.a and e_rec.b must be finite".into()
            })?;
            if let Some(r) = r_prime {
                check(r.is_finite() && r >= 0.0, || {
                    format!("e_rec.r_prime must be non-negative (got {r})")
                })?;
            }
            let per_second = a * cfg.rate_target() + b;
            check(per_second >= 0.0, || {
                "e_rec: a * r_prime + b must be non-negative".into()
            })?;
        }
    }
    Ok(cfg)
}

pub(crate) fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("tau", format!("must lie in (0, 1), got {tau}")))
    }
}

impl SystemConfig {
    /// Target rate `R'` of the rate-linked threshold, `log2(1 + beta)` if unset.
    pub fn rate_target(&self) -> f64 {
        match self.e_rec {
            EnergyThresholdSpec::RateLinked { r_prime: Some(r), .. } => r,
            _ => (1.0 + self.beta).log2(),
        }
    }

    /// Copy with every defaulted field made explicit.
    pub fn resolved(&self) -> SystemConfig {
        let mut out = *self;
        if let EnergyThresholdSpec::RateLinked { a, b, r_prime: None } = self.e_rec {
            out.e_rec = EnergyThresholdSpec::RateLinked {
                a,
                b,
                r_prime: Some(self.rate_target()),
            };
        }
        out
    }

    /// Copy with the cluster size replaced.
    pub fn with_cluster_size(&self, size: f64) -> SystemConfig {
        SystemConfig {
            cluster: self.cluster.with_size(size),
            ..*self
        }
    }

    /// Copy with a fixed energy threshold.
    pub fn with_fixed_threshold(&self, e_rec: f64) -> SystemConfig {
        SystemConfig {
            e_rec: EnergyThresholdSpec::Fixed { e_rec },
            ..*self
        }
    }

    /// Copy where a fraction `gamma` of cluster centers carry a gateway while
    /// the total gateway density stays fixed.
    pub fn with_center_fraction(&self, gamma: f64) -> SystemConfig {
        let lambda_bc = gamma * self.lambda_c;
        SystemConfig {
            lambda_bc,
            lambda_b: self.lambda_total - lambda_bc,
            ..*self
        }
    }
}

/// Receiver-activation energy `E_rec` at slot split `tau`.
pub fn e_rec_at(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(match cfg.e_rec {
        EnergyThresholdSpec::Fixed { e_rec } => e_rec,
        EnergyThresholdSpec::RateLinked { a, b, .. } => (1.0 - tau) * cfg.slot_t * (a * cfg.rate_target() + b),
    })
}

/// Normalized energy threshold `C(tau) = E_rec / (eta * tau * T * P_t)`.
///
/// Energy coverage is the event that the fading-weighted path-gain sum from
/// all gateways reaches `C(tau)`.
pub fn c_of_tau(cfg: &SystemConfig, tau: f64) -> Result<f64> {
    if cfg.eta <= 0.0 {
        return Err(Error::domain(
            "eta",
            "harvester efficiency is zero, no energy can be harvested",
        ));
    }
    let e = e_rec_at(cfg, tau)?;
    Ok(e / (cfg.eta * tau * cfg.slot_t * cfg.p_t))
}

/// Probability `p_b` that the typical device's cluster has a gateway at its center.
pub fn prob_gw_at_center(cfg: &SystemConfig) -> Result<f64> {
    let with_gw = cfg.n1 * cfg.lambda_bc;
    let without = cfg.n2 * (cfg.lambda_c - cfg.lambda_bc);
    let denom = with_gw + without;
    if !(denom > 0.0) {
        return Err(Error::domain(
            "lambda_c",
            "cluster-center density is zero, p_b is undefined",
        ));
    }
    Ok(with_gw / denom)
}

/// `p_b * chi + (1 - p_b) * chi_bar`.
pub fn overall_mixture(chi: f64, chi_bar: f64, p_b: f64) -> f64 {
    p_b * chi + (1.0 - p_b) * chi_bar
}

/// The same mixture parametrized by `zeta = n2 / n1` and `gamma = lambda_bc / lambda_c`.
pub fn overall_mixture_zeta_gamma(chi: f64, chi_bar: f64, zeta: f64, gamma: f64) -> f64 {
    (zeta * chi_bar + gamma * (chi - zeta * chi_bar)) / (zeta + gamma * (1.0 - zeta))
}
