//! Analytic energy coverage, joint coverage and throughput, and the search for
//! the throughput-optimal charging fraction.
//!
//! Every function takes a [`SystemConfig`] and a charging fraction `tau` in
//! `(0, 1)`. Tier-conditioned values are conditional on the serving tier;
//! [`energy_coverage`] and [`joint_coverage`] mix them with the association
//! probabilities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemConfig;

mod common;
pub mod energy;
pub mod joint;
mod optimize;

pub use common::hypoexp_survival;
pub use energy::{
    energy_cov_overall, energy_cov_ppp, energy_cov_tier0_approx1, energy_cov_tier0_approx1_with,
    energy_cov_tier0_approx2, energy_cov_tier1_approx1, energy_cov_tier1_approx1_with, energy_cov_tier1_approx2,
    energy_coverage,
};
pub use joint::{joint_cov_overall, joint_cov_ppp, joint_cov_tier0, joint_cov_tier1, joint_coverage};
pub use optimize::{maximize_tau, optimal_tau, TauSearchResult};

/// Which closed forms an energy-coverage evaluation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalPath {
    /// Conditional means and CDFs by quadrature.
    General,
    /// Incomplete-gamma and elementary closed forms where they exist.
    #[default]
    Specialized,
}

/// Quantity being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Energy,
    Joint,
    Throughput,
}

/// Deployment the typical device sees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// A gateway sits at the typical device's cluster center.
    Clustered,
    /// [`Scenario::Clustered`] conditioned on the center gateway serving.
    ClusteredTier0,
    /// [`Scenario::Clustered`] conditioned on a network gateway serving.
    ClusteredTier1,
    /// Gateways form a PPP; no gateway at the cluster center.
    #[serde(rename = "ppp")]
    PppBaseline,
    /// Center gateway present with probability `p_b`.
    Overall,
}

/// How the non-serving gateways enter the energy-coverage expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Approximation {
    /// All non-serving gateways replaced by their conditional mean.
    Approx1,
    /// The two nearest gateways kept with exact fading.
    Approx2,
}

macro_rules! string_enum {
    ($t:ty, $what:literal, $($v:path => [$($s:literal),+]),+ $(,)?) => {
        impl $t {
            pub fn as_str(self) -> &'static str {
                match self { $($v => [$($s),+][0],)+ }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> std::result::Result<Self, String> {
                match s {
                    $($($s)|+ => Ok($v),)+
                    other => Err(format!(
                        concat!("unknown ", $what, " '{}', expected one of: {}"),
                        other,
                        [$([$($s),+][0]),+].join(", ")
                    )),
                }
            }
        }
    };
}

string_enum!(Metric, "metric",
    Metric::Energy => ["energy"],
    Metric::Joint => ["joint"],
    Metric::Throughput => ["throughput"],
);
string_enum!(Scenario, "scenario",
    Scenario::Clustered => ["clustered"],
    Scenario::ClusteredTier0 => ["clustered_tier0"],
    Scenario::ClusteredTier1 => ["clustered_tier1"],
    Scenario::PppBaseline => ["ppp", "ppp_baseline"],
    Scenario::Overall => ["overall"],
);
string_enum!(Approximation, "approximation",
    Approximation::Approx1 => ["approx1", "1"],
    Approximation::Approx2 => ["approx2", "2"],
);

/// One analytic evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageQuery {
    pub metric: Metric,
    pub scenario: Scenario,
    pub approximation: Approximation,
    pub tau: f64,
}

impl CoverageQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(Error::domain("tau", format!("must lie in (0, 1), got {}", self.tau)));
        }
        if self.approximation == Approximation::Approx2 && self.metric != Metric::Energy {
            return Err(Error::Unsupported(format!(
                "{} has no result under approx2; the two-gateway approximation covers energy coverage only",
                self.metric
            )));
        }
        Ok(())
    }
}

/// Evaluates `query` against `cfg`.
pub fn evaluate(cfg: &SystemConfig, query: &CoverageQuery) -> Result<f64> {
    query.validate()?;
    let tau = query.tau;
    match query.metric {
        Metric::Energy => {
            let approx = query.approximation;
            match query.scenario {
                Scenario::Clustered => energy_coverage(cfg, tau, approx),
                Scenario::ClusteredTier0 => match approx {
                    Approximation::Approx1 => energy_cov_tier0_approx1(cfg, tau),
                    Approximation::Approx2 => energy_cov_tier0_approx2(cfg, tau),
                },
                Scenario::ClusteredTier1 => match approx {
                    Approximation::Approx1 => energy_cov_tier1_approx1(cfg, tau),
                    Approximation::Approx2 => energy_cov_tier1_approx2(cfg, tau),
                },
                Scenario::PppBaseline => energy_cov_ppp(cfg, tau),
                Scenario::Overall => energy_cov_overall(cfg, tau, approx),
            }
        }
        Metric::Joint => joint_for(cfg, tau, query.scenario),
        Metric::Throughput => throughput(cfg, tau, query.scenario),
    }
}

fn joint_for(cfg: &SystemConfig, tau: f64, scenario: Scenario) -> Result<f64> {
    match scenario {
        Scenario::Clustered => joint_coverage(cfg, tau),
        Scenario::ClusteredTier0 => joint_cov_tier0(cfg, tau),
        Scenario::ClusteredTier1 => joint_cov_tier1(cfg, tau),
        Scenario::PppBaseline => joint_cov_ppp(cfg, tau),
        Scenario::Overall => joint_cov_overall(cfg, tau),
    }
}

/// Average downlink throughput `(1 - tau) log2(1 + beta) P_cov` in bits/s/Hz.
pub fn throughput(cfg: &SystemConfig, tau: f64, scenario: Scenario) -> Result<f64> {
    let p = joint_for(cfg, tau, scenario)?;
    Ok((1.0 - tau) * (1.0 + cfg.beta).log2() * p)
}
