//! Distance laws of the typical device: `R1` to the nearest gateway of the
//! network PPP, `R0` to its own cluster center, and the serving distances
//! `W0`, `W1` conditioned on which of the two is closer.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ClusterModel;

use super::quadrature::{integrate, QuadratureSpec};

/// `ln(1e14)`: outer integrals stop where the weight has dropped below
/// `1e-14` of its total mass.
pub(crate) const TAIL_LOG: f64 = 32.236_191_301_916_64;

/// A radial distance distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceLaw {
    /// Distance to the nearest point of a PPP of density `lambda`.
    NearestPpp { lambda: f64 },
    /// Rayleigh distance to a Thomas cluster center.
    ThomasCenter { sigma_c: f64 },
    /// Distance to a Matérn cluster center, `2r / R_c^2` on `[0, R_c]`.
    MaternCenter { r_c: f64 },
}

impl DistanceLaw {
    pub fn pdf(&self, r: f64) -> f64 {
        if r < 0.0 {
            return 0.0;
        }
        match *self {
            DistanceLaw::NearestPpp { lambda } => 2.0 * PI * lambda * r * (-PI * lambda * r * r).exp(),
            DistanceLaw::ThomasCenter { sigma_c } => {
                let s2 = sigma_c * sigma_c;
                r / s2 * (-r * r / (2.0 * s2)).exp()
            }
            DistanceLaw::MaternCenter { r_c } => {
                if r <= r_c {
                    2.0 * r / (r_c * r_c)
                } else {
                    0.0
                }
            }
        }
    }

    pub fn ccdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 1.0;
        }
        match *self {
            DistanceLaw::NearestPpp { lambda } => (-PI * lambda * r * r).exp(),
            DistanceLaw::ThomasCenter { sigma_c } => (-r * r / (2.0 * sigma_c * sigma_c)).exp(),
            DistanceLaw::MaternCenter { r_c } => {
                if r >= r_c {
                    0.0
                } else {
                    (r_c * r_c - r * r) / (r_c * r_c)
                }
            }
        }
    }

    pub fn cdf(&self, r: f64) -> f64 {
        match *self {
            DistanceLaw::NearestPpp { lambda } => -(-PI * lambda * r.max(0.0).powi(2)).exp_m1(),
            DistanceLaw::ThomasCenter { sigma_c } => -(-r.max(0.0).powi(2) / (2.0 * sigma_c * sigma_c)).exp_m1(),
            DistanceLaw::MaternCenter { .. } => 1.0 - self.ccdf(r),
        }
    }

    /// `(lo, hi)`; `hi` is infinite for unbounded laws.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            DistanceLaw::MaternCenter { r_c } => (0.0, r_c),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Finite upper limit that leaves at most `1e-14` of the mass outside.
    pub fn effective_upper(&self) -> f64 {
        match *self {
            DistanceLaw::NearestPpp { lambda } => (TAIL_LOG / (PI * lambda)).sqrt(),
            DistanceLaw::ThomasCenter { sigma_c } => sigma_c * (2.0 * TAIL_LOG).sqrt(),
            DistanceLaw::MaternCenter { r_c } => r_c,
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            "lambda",
            format!("density must be positive, got {lambda}"),
        ))
    }
}

/// Law of `R1`, the distance to the nearest gateway of a PPP of density `lambda`.
pub fn nearest_gw_distance_law(lambda: f64) -> Result<DistanceLaw> {
    check_lambda(lambda)?;
    Ok(DistanceLaw::NearestPpp { lambda })
}

/// Law of `R0`, the distance from the typical device to its cluster center.
pub fn cluster_center_distance_law(model: &ClusterModel) -> DistanceLaw {
    match *model {
        ClusterModel::Thomas { sigma_c } => DistanceLaw::ThomasCenter { sigma_c },
        ClusterModel::Matern { r_c } => DistanceLaw::MaternCenter { r_c },
    }
}

/// Probabilities of associating with the cluster-center gateway (`a0`) or
/// with the nearest network gateway (`a1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Association {
    pub a0: f64,
    pub a1: f64,
}

impl Association {
    pub fn of(&self, tier: Tier) -> f64 {
        match tier {
            Tier::Center => self.a0,
            Tier::Network => self.a1,
        }
    }
}

/// `(e^-u + u - 1) / u` without cancellation for small `u`.
fn matern_a1(u: f64) -> f64 {
    if u < 1e-3 {
        // u/2 - u^2/6 + u^3/24 - u^4/120
        u * (0.5 - u * (1.0 / 6.0 - u * (1.0 / 24.0 - u / 120.0)))
    } else {
        ((-u).exp_m1() + u) / u
    }
}

/// Closed-form association probabilities.
pub fn association_probabilities(model: &ClusterModel, lambda: f64) -> Result<Association> {
    check_lambda(lambda)?;
    let a1 = match *model {
        ClusterModel::Thomas { sigma_c } => {
            let k = 2.0 * PI * lambda * sigma_c * sigma_c;
            k / (1.0 + k)
        }
        ClusterModel::Matern { r_c } => matern_a1(PI * lambda * r_c * r_c),
    };
    Ok(Association { a0: 1.0 - a1, a1 })
}

/// `A1 = int ccdf_R0(r) pdf_R1(r) dr` evaluated by quadrature.
pub fn network_association_by_integral(model: &ClusterModel, lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    let r1 = nearest_gw_distance_law(lambda)?;
    let r0 = cluster_center_distance_law(model);
    let hi = r0.effective_upper().min(r1.effective_upper());
    Ok(integrate(|r| r0.ccdf(r) * r1.pdf(r), 0.0, hi, spec)?.value)
}

/// Which gateway serves the typical device.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    /// The gateway at the device's own cluster center (tier 0).
    Center,
    /// The nearest gateway of the rest of the network (tier 1).
    Network,
}

impl Tier {
    pub fn index(self) -> usize {
        match self {
            Tier::Center => 0,
            Tier::Network => 1,
        }
    }
}

/// Law of the serving distance `W_i` given association with tier `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServingDistance {
    pub tier: Tier,
    /// Association probability of `tier`.
    pub weight: f64,
    center: DistanceLaw,
    nearest: DistanceLaw,
    lambda: f64,
}

impl ServingDistance {
    pub fn new(tier: Tier, model: &ClusterModel, lambda: f64) -> Result<Self> {
        let weight = association_probabilities(model, lambda)?.of(tier);
        if !(weight > 0.0) {
            return Err(Error::domain(
                "association probability",
                format!("tier {} is never selected", tier.index()),
            ));
        }
        Ok(ServingDistance {
            tier,
            center: cluster_center_distance_law(model),
            nearest: nearest_gw_distance_law(lambda)?,
            lambda,
            weight,
        })
    }

    pub fn pdf(&self, w: f64) -> f64 {
        match self.tier {
            Tier::Center => self.nearest.ccdf(w) * self.center.pdf(w) / self.weight,
            Tier::Network => self.center.ccdf(w) * self.nearest.pdf(w) / self.weight,
        }
    }

    /// Closed-form CDF.
    pub fn cdf(&self, w: f64) -> f64 {
        let w = w.max(0.0);
        let pl = PI * self.lambda;
        let v = match (self.tier, self.center) {
            (Tier::Network, DistanceLaw::ThomasCenter { sigma_c }) => {
                let k = pl + 1.0 / (2.0 * sigma_c * sigma_c);
                pl / k * -(-k * w * w).exp_m1()
            }
            (Tier::Center, DistanceLaw::ThomasCenter { sigma_c }) => {
                let k = pl + 1.0 / (2.0 * sigma_c * sigma_c);
                -(-k * w * w).exp_m1() / (1.0 + 2.0 * pl * sigma_c * sigma_c)
            }
            (Tier::Network, DistanceLaw::MaternCenter { r_c }) => {
                let w = w.min(r_c);
                let u = pl * w * w;
                -(-u).exp_m1() - (1.0 - (1.0 + u) * (-u).exp()) / (pl * r_c * r_c)
            }
            (Tier::Center, DistanceLaw::MaternCenter { r_c }) => {
                let w = w.min(r_c);
                -(-pl * w * w).exp_m1() / (pl * r_c * r_c)
            }
            (_, DistanceLaw::NearestPpp { .. }) => unreachable!("center law is a cluster law"),
        };
        (v / self.weight).min(1.0)
    }

    /// Upper end of the support, truncated for unbounded laws.
    pub fn effective_upper(&self) -> f64 {
        match self.center {
            DistanceLaw::ThomasCenter { sigma_c } => {
                let k = PI * self.lambda + 1.0 / (2.0 * sigma_c * sigma_c);
                (TAIL_LOG / k).sqrt()
            }
            DistanceLaw::MaternCenter { r_c } => r_c,
            DistanceLaw::NearestPpp { .. } => unreachable!("center law is a cluster law"),
        }
    }
}

/// Density of the serving distance `W_i` at `w`.
pub fn serving_distance_pdf(tier: Tier, model: &ClusterModel, lambda: f64, w: f64) -> Result<f64> {
    if w < 0.0 {
        return Err(Error::domain("serving distance", format!("w must be >= 0, got {w}")));
    }
    Ok(ServingDistance::new(tier, model, lambda)?.pdf(w))
}
