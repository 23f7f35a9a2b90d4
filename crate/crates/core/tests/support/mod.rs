//! Statistical checks on the simulator shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_distr::Exp1;
use rfcov::analysis::Scenario;
use rfcov::distributions::{association_probabilities, cluster_center_distance_law, nearest_gw_distance_law};
use rfcov::model::{ClusterModel, SystemConfig};
use rfcov::montecarlo::{simulate, Geometry, Realization, SeedSpec};

/// Asymptotic Kolmogorov critical value at the 1% level, times `sqrt(n)`.
pub const KS_1PCT: f64 = 1.628;

/// Two-sided Kolmogorov-Smirnov statistic of `xs` against `cdf`.
pub fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub struct Ks {
    pub d: f64,
    pub critical: f64,
}

impl Ks {
    pub fn passed(&self) -> bool {
        self.d <= self.critical
    }
}

/// KS test of the simulated `R0` (device to own center) and `R1` (nearest
/// network gateway) against their laws.
pub fn distance_ks(model: &ClusterModel, lambda: f64, n: usize, seed: u64) -> (Ks, Ks) {
    let mut rng = SeedSpec::new(seed).block_rng(0);
    let r_max = (400.0 / (std::f64::consts::PI * lambda)).sqrt();
    let (mut r0, mut r1) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let real = Realization::sample(model, lambda, 4.0, r_max, true, &mut rng);
        r0.push(real.center_gw.unwrap().norm());
        let nearest = real.other_gws.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
        r1.push(nearest);
    }
    let law0 = cluster_center_distance_law(model);
    let law1 = nearest_gw_distance_law(lambda).unwrap();
    let critical = KS_1PCT / (n as f64).sqrt();
    (
        Ks {
            d: ks_statistic(r0, |r| law0.cdf(r)),
            critical,
        },
        Ks {
            d: ks_statistic(r1, |r| law1.cdf(r)),
            critical,
        },
    )
}

/// Fraction of realizations served by the network tier against `A1`,
/// in standard deviations.
pub fn tier_frequency(cfg: &SystemConfig, n: u64, seed: u64) -> (f64, f64, f64) {
    let tally = simulate(cfg, 0.5, Geometry::WithCenter, n, SeedSpec::new(seed)).unwrap();
    let a1 = association_probabilities(&cfg.cluster, cfg.lambda_total).unwrap().a1;
    let freq = tally.for_scenario(Scenario::ClusteredTier1).realizations as f64 / n as f64;
    let sd = (a1 * (1.0 - a1) / n as f64).sqrt();
    (freq, a1, (freq - a1) / sd)
}

/// Mean of `sum g d^-alpha` over network gateways in the annulus
/// `[r_in, r_max]`, against `2 pi lambda (r_in^(2-alpha) - r_max^(2-alpha)) / (alpha - 2)`.
/// Returns (sample mean, expected, z-score).
pub fn campbell_mean(lambda: f64, alpha: f64, r_in: f64, n: usize, seed: u64) -> (f64, f64, f64) {
    let mut rng = SeedSpec::new(seed).block_rng(0);
    let r_max = (300.0 / (std::f64::consts::PI * lambda)).sqrt();
    let model = ClusterModel::Thomas { sigma_c: 1.0 };
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..n {
        let real = Realization::sample(&model, lambda, alpha, r_max, false, &mut rng);
        let s: f64 = real
            .other_gws
            .iter()
            .map(|p| p.norm())
            .filter(|&d| d >= r_in)
            .map(|d| rng.sample::<f64, _>(Exp1) * d.powf(-alpha))
            .sum();
        sum += s;
        sum2 += s * s;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let se = ((sum2 / nf - mean * mean) / nf).sqrt();
    let expected =
        2.0 * std::f64::consts::PI * lambda * (r_in.powf(2.0 - alpha) - r_max.powf(2.0 - alpha)) / (alpha - 2.0);
    (mean, expected, (mean - expected) / se)
}

/// Same counts for repeated runs and for 1, 2 and 3 workers.
pub fn deterministic(cfg: &SystemConfig, tau: f64, n: u64, seed: u64) -> bool {
    let run = |w| simulate(cfg, tau, Geometry::WithCenter, n, SeedSpec::new(seed).with_workers(w)).unwrap();
    let first = run(1);
    first == run(1) && first == run(2) && first == run(3)
}
