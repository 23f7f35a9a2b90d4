use std::f64::consts::PI;

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::model::ClusterModel;

/// A gateway position relative to the typical device at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn polar(r: f64, angle: f64) -> Self {
        Point {
            x: r * angle.cos(),
            y: r * angle.sin(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// One draw of the gateway geometry seen by the typical device.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    /// Gateway at the device's cluster center, if the cluster has one.
    pub center_gw: Option<Point>,
    /// The rest of the network inside `r_max`.
    pub other_gws: Vec<Point>,
    pub r_max: f64,
    /// Mean path-gain sum of the network beyond `r_max`.
    pub tail_mean: f64,
}

impl Realization {
    /// Draws a realization with the center gateway present or absent.
    pub fn sample<R: Rng + ?Sized>(
        model: &ClusterModel,
        lambda: f64,
        alpha: f64,
        r_max: f64,
        with_center: bool,
        rng: &mut R,
    ) -> Self {
        let center_gw = with_center.then(|| {
            let r0 = sample_center_distance(model, rng.sample(Open01));
            Point::polar(r0, 2.0 * PI * rng.random::<f64>())
        });
        Realization {
            center_gw,
            other_gws: sample_phi1(lambda, r_max, rng),
            r_max,
            tail_mean: tail_mean(lambda, alpha, r_max),
        }
    }

    /// Gateways in index order: the center gateway first, when present.
    pub fn gateways(&self) -> impl Iterator<Item = &Point> {
        self.center_gw.iter().chain(self.other_gws.iter())
    }
}

/// Inverse-CDF draw of the device-to-center distance from `u` in `(0, 1)`.
pub fn sample_center_distance(model: &ClusterModel, u: f64) -> f64 {
    match *model {
        ClusterModel::Thomas { sigma_c } => sigma_c * (-2.0 * u.ln()).sqrt(),
        ClusterModel::Matern { r_c } => r_c * u.sqrt(),
    }
}

/// Homogeneous PPP of density `lambda` on the disc of radius `r_max`.
pub fn sample_phi1<R: Rng + ?Sized>(lambda: f64, r_max: f64, rng: &mut R) -> Vec<Point> {
    let count = poisson_count(lambda * PI * r_max * r_max, rng);
    (0..count)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            Point::polar(r_max * u.sqrt(), 2.0 * PI * rng.random::<f64>())
        })
        .collect()
}

pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("positive finite mean").sample(rng) as usize
}

/// `2 pi lambda r_max^(2 - alpha) / (alpha - 2)`.
pub fn tail_mean(lambda: f64, alpha: f64, r_max: f64) -> f64 {
    2.0 * PI * lambda * r_max.powf(2.0 - alpha) / (alpha - 2.0)
}

/// Fewest expected points per realization; keeps the disc well beyond any
/// plausible serving distance.
const MIN_EXPECTED_POINTS: f64 = 200.0;
const MAX_EXPECTED_POINTS: f64 = 20_000.0;

/// Disc radius for the network sample at normalized threshold `c`.
///
/// The truncated tail is replaced by its mean; the radius makes the tail's
/// standard deviation `sqrt(2 pi lambda / (alpha - 1)) r^(1 - alpha)` at most
/// `1e-3 c`, subject to at least 200 and at most 20000 expected points.
pub fn truncation_radius(lambda: f64, alpha: f64, c: f64) -> f64 {
    let floor = (MIN_EXPECTED_POINTS / (PI * lambda)).sqrt();
    let cap = (MAX_EXPECTED_POINTS / (PI * lambda)).sqrt();
    if c <= 0.0 {
        return floor;
    }
    let scale = (2.0 * PI * lambda / (alpha - 1.0)).sqrt();
    let r = (scale / (1e-3 * c)).powf(1.0 / (alpha - 1.0));
    r.clamp(floor, cap)
}
