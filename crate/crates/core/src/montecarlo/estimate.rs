use std::f64::consts::PI;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{Metric, Scenario};
use crate::error::{Error, Result};
use crate::model::{c_of_tau, prob_gw_at_center, validate_config, ClusterModel, SystemConfig};

use super::sampling::{sample_center_distance, tail_mean, truncation_radius};
use super::shot::{nearest, path_gain};

/// Realizations per seeded block. Fixed, so results do not depend on the
/// number of workers.
pub const BLOCK_SIZE: u64 = 4096;

/// Smallest sample size [`estimate`] accepts.
pub const MIN_SAMPLES: u64 = 100;

/// Seeding of a simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    /// Worker threads; `0` uses all available cores. Does not affect results.
    pub stream_count: usize,
}

impl SeedSpec {
    pub fn new(master_seed: u64) -> Self {
        SeedSpec {
            master_seed,
            stream_count: 0,
        }
    }

    pub fn with_workers(self, stream_count: usize) -> Self {
        SeedSpec { stream_count, ..self }
    }

    /// Generator for block `index`: the master seed selects the key, the
    /// block index the ChaCha stream.
    pub fn block_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(index);
        rng
    }
}

/// Sample mean of an indicator (or a scaled indicator) with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorResult {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    /// 95% interval: normal approximation, or Wilson when `p(1-p)n < 10`.
    pub ci95: (f64, f64),
}

impl EstimatorResult {
    pub fn from_counts(hits: u64, n: u64) -> Self {
        assert!(n > 0 && hits <= n, "need 0 <= hits <= n, n > 0");
        let nf = n as f64;
        let p = hits as f64 / nf;
        let stderr = (p * (1.0 - p) / nf).sqrt();
        const Z: f64 = 1.959_963_984_540_054;
        let ci95 = if p * (1.0 - p) * nf < 10.0 {
            let z2 = Z * Z / nf;
            let center = (p + z2 / 2.0) / (1.0 + z2);
            let half = Z / (1.0 + z2) * (p * (1.0 - p) / nf + z2 / (4.0 * nf)).sqrt();
            ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
        } else {
            ((p - Z * stderr).max(0.0), (p + Z * stderr).min(1.0))
        };
        EstimatorResult {
            mean: p,
            stderr,
            n,
            ci95,
        }
    }

    /// The estimate of `k` times the underlying quantity.
    pub fn scaled(self, k: f64) -> Self {
        EstimatorResult {
            mean: k * self.mean,
            stderr: k * self.stderr,
            ci95: (k * self.ci95.0, k * self.ci95.1),
            ..self
        }
    }
}

/// Event counts of the realizations served by one tier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TierTally {
    pub realizations: u64,
    pub energy: u64,
    pub sinr: u64,
    pub joint: u64,
}

impl TierTally {
    fn add(&mut self, o: &TierTally) {
        self.realizations += o.realizations;
        self.energy += o.energy;
        self.sinr += o.sinr;
        self.joint += o.joint;
    }

    pub fn hits(&self, metric: Metric) -> u64 {
        match metric {
            Metric::Energy => self.energy,
            Metric::Joint | Metric::Throughput => self.joint,
        }
    }
}

/// Counts split by serving tier: index 0 is the center gateway, 1 the network.
/// Realizations with no gateway at all count as tier 1 without SINR coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Tally {
    pub tiers: [TierTally; 2],
}

impl Tally {
    pub fn total(&self) -> TierTally {
        let mut t = self.tiers[0];
        t.add(&self.tiers[1]);
        t
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.tiers[0].add(&o.tiers[0]);
        self.tiers[1].add(&o.tiers[1]);
        self
    }

    /// Counts relevant to `scenario`.
    pub fn for_scenario(&self, scenario: Scenario) -> TierTally {
        match scenario {
            Scenario::ClusteredTier0 => self.tiers[0],
            Scenario::ClusteredTier1 => self.tiers[1],
            _ => self.total(),
        }
    }
}

/// Whether the typical device's cluster center carries a gateway.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    WithCenter,
    WithoutCenter,
    /// Present independently per realization with this probability.
    CenterWithProbability(f64),
}

impl Geometry {
    pub fn for_scenario(cfg: &SystemConfig, scenario: Scenario) -> Result<Self> {
        Ok(match scenario {
            Scenario::Clustered | Scenario::ClusteredTier0 | Scenario::ClusteredTier1 => Geometry::WithCenter,
            Scenario::PppBaseline => Geometry::WithoutCenter,
            Scenario::Overall => Geometry::CenterWithProbability(prob_gw_at_center(cfg)?),
        })
    }
}

struct Kernel {
    model: ClusterModel,
    alpha: f64,
    c: f64,
    beta: f64,
    noise: f64,
    tail: f64,
    r_max_sq: f64,
    count: Option<Poisson<f64>>,
    geometry: Geometry,
}

impl Kernel {
    fn run_block(&self, rng: &mut ChaCha8Rng, size: u64) -> Tally {
        let mut tally = Tally::default();
        let mut gain: Vec<f64> = Vec::new();
        let mut d2: Vec<f64> = Vec::new();
        for _ in 0..size {
            d2.clear();
            gain.clear();
            let center = match self.geometry {
                Geometry::WithCenter => true,
                Geometry::WithoutCenter => false,
                Geometry::CenterWithProbability(p) => rng.random::<f64>() < p,
            };
            if center {
                let r0 = sample_center_distance(&self.model, rng.sample(Open01));
                d2.push(r0 * r0);
            }
            let k = self.count.as_ref().map_or(0, |p| p.sample(rng) as usize);
            for _ in 0..k {
                let u: f64 = rng.sample(Open01);
                d2.push(self.r_max_sq * u);
            }
            gain.extend(d2.iter().map(|&d| path_gain(d, self.alpha)));

            let mut energy = self.tail;
            for &p in &gain {
                let g: f64 = Exp1.sample(rng);
                energy += g * p;
            }
            let energy_ok = energy >= self.c;

            let mut interference = self.tail;
            let mut signal = 0.0;
            let serving = nearest(&d2);
            for (i, &p) in gain.iter().enumerate() {
                let h: f64 = Exp1.sample(rng);
                if Some(i) == serving {
                    signal = h * p;
                } else {
                    interference += h * p;
                }
            }
            let sinr_ok = serving.is_some() && signal >= self.beta * (self.noise + interference);

            let tier = usize::from(!(center && serving == Some(0)));
            let t = &mut tally.tiers[tier];
            t.realizations += 1;
            t.energy += u64::from(energy_ok);
            t.sinr += u64::from(sinr_ok);
            t.joint += u64::from(energy_ok && sinr_ok);
        }
        tally
    }
}

/// Runs `n` realizations and counts energy, SINR and joint coverage per
/// serving tier. Charging and reception fading are independent draws on the
/// same geometry.
pub fn simulate(cfg: &SystemConfig, tau: f64, geometry: Geometry, n: u64, seed: SeedSpec) -> Result<Tally> {
    simulate_with_radius(cfg, tau, geometry, n, seed, None)
}

/// [`simulate`] with the network disc radius overridden.
pub fn simulate_with_radius(
    cfg: &SystemConfig,
    tau: f64,
    geometry: Geometry,
    n: u64,
    seed: SeedSpec,
    r_max: Option<f64>,
) -> Result<Tally> {
    let cfg = validate_config(*cfg)?;
    let c = c_of_tau(&cfg, tau)?;
    let lambda = cfg.lambda_total;
    let r_max = r_max.unwrap_or_else(|| truncation_radius(lambda, cfg.alpha, c));
    let mean_count = lambda * PI * r_max * r_max;
    let count = if mean_count > 0.0 {
        Some(Poisson::new(mean_count).map_err(|e| Error::domain("network sample", e.to_string()))?)
    } else {
        None
    };
    let kernel = Kernel {
        model: cfg.cluster,
        alpha: cfg.alpha,
        c,
        beta: cfg.beta,
        noise: cfg.noise / cfg.p_t,
        tail: tail_mean(lambda, cfg.alpha, r_max),
        r_max_sq: r_max * r_max,
        count,
        geometry,
    };
    let blocks: Vec<(u64, u64)> = (0..n.div_ceil(BLOCK_SIZE))
        .map(|b| (b, BLOCK_SIZE.min(n - b * BLOCK_SIZE)))
        .collect();
    let run = |&(b, size): &(u64, u64)| kernel.run_block(&mut seed.block_rng(b), size);
    let partials: Vec<Tally> = if seed.stream_count == 1 {
        blocks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(seed.stream_count)
            .build()
            .map_err(|e| Error::domain("worker pool", e.to_string()))?;
        pool.install(|| blocks.par_iter().map(run).collect())
    };
    Ok(partials.into_iter().fold(Tally::default(), Tally::merge))
}

/// Monte Carlo estimate of `metric` in `scenario`.
///
/// Tier-conditioned scenarios keep only the realizations served by that tier;
/// `n` of the result is the retained count.
pub fn estimate(
    metric: Metric,
    scenario: Scenario,
    cfg: &SystemConfig,
    tau: f64,
    n: u64,
    seed: SeedSpec,
) -> Result<EstimatorResult> {
    if n < MIN_SAMPLES {
        return Err(Error::domain(
            "samples",
            format!("need at least {MIN_SAMPLES}, got {n}"),
        ));
    }
    let tally = simulate(cfg, tau, Geometry::for_scenario(cfg, scenario)?, n, seed)?;
    result_from_tally(&tally, metric, scenario, cfg, tau)
}

/// Turns counts from [`simulate`] into the estimate for `metric` in `scenario`.
pub fn result_from_tally(
    tally: &Tally,
    metric: Metric,
    scenario: Scenario,
    cfg: &SystemConfig,
    tau: f64,
) -> Result<EstimatorResult> {
    let t = tally.for_scenario(scenario);
    if t.realizations == 0 {
        return Err(Error::ZeroRetention(scenario.to_string()));
    }
    let r = EstimatorResult::from_counts(t.hits(metric), t.realizations);
    Ok(match metric {
        Metric::Throughput => r.scaled((1.0 - tau) * (1.0 + cfg.beta).log2()),
        _ => r,
    })
}
