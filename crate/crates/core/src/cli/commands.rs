use crate::analysis::{evaluate, optimal_tau, Approximation, CoverageQuery, Metric, Scenario};
use crate::error::Result;
use crate::model::SystemConfig;
use crate::montecarlo::{estimate, result_from_tally, simulate, EstimatorResult, Geometry, SeedSpec};

use super::output::Row;

/// One analytic row per `tau`.
pub fn cmd_analytic(
    cfg: &SystemConfig,
    metric: Metric,
    scenario: Scenario,
    approx: Approximation,
    taus: &[f64],
) -> Result<Vec<Row>> {
    taus.iter()
        .map(|&tau| {
            let q = CoverageQuery {
                metric,
                scenario,
                approximation: approx,
                tau,
            };
            let v = evaluate(cfg, &q)?;
            Ok(Row::analytic(cfg, tau, metric, scenario, approx.as_str(), v))
        })
        .collect()
}

fn mc_row(
    cfg: &SystemConfig,
    tau: f64,
    metric: Metric,
    scenario: Scenario,
    method: &str,
    r: &EstimatorResult,
    seed: u64,
) -> Row {
    Row {
        stderr: Some(r.stderr),
        n: Some(r.n),
        seed: Some(seed),
        ..Row::analytic(cfg, tau, metric, scenario, method, r.mean)
    }
}

/// One Monte Carlo row per `tau`, all from the same master seed.
pub fn cmd_simulate(
    cfg: &SystemConfig,
    metric: Metric,
    scenario: Scenario,
    taus: &[f64],
    n: u64,
    seed: SeedSpec,
) -> Result<Vec<Row>> {
    taus.iter()
        .map(|&tau| {
            let r = estimate(metric, scenario, cfg, tau, n, seed)?;
            Ok(mc_row(cfg, tau, metric, scenario, "mc", &r, seed.master_seed))
        })
        .collect()
}

/// Energy coverage from both approximations and the simulator, plus the
/// absolute gap of each approximation to the simulation. Five rows per `tau`:
/// `approx1`, `approx2`, `mc`, `gap_approx1`, `gap_approx2`; gap rows carry
/// the simulation's standard error.
pub fn cmd_compare(cfg: &SystemConfig, scenario: Scenario, taus: &[f64], n: u64, seed: SeedSpec) -> Result<Vec<Row>> {
    let metric = Metric::Energy;
    let mut rows = Vec::with_capacity(5 * taus.len());
    for &tau in taus {
        let a1 = cmd_analytic(cfg, metric, scenario, Approximation::Approx1, &[tau])?.remove(0);
        let a2 = cmd_analytic(cfg, metric, scenario, Approximation::Approx2, &[tau])?.remove(0);
        let tally = simulate(cfg, tau, Geometry::for_scenario(cfg, scenario)?, n, seed)?;
        let mc = result_from_tally(&tally, metric, scenario, cfg, tau)?;
        let gap = |a: &Row, name: &str| Row {
            method: name.to_string(),
            value: (a.value - mc.mean).abs(),
            ..mc_row(cfg, tau, metric, scenario, name, &mc, seed.master_seed)
        };
        let g1 = gap(&a1, "gap_approx1");
        let g2 = gap(&a2, "gap_approx2");
        rows.extend([
            a1,
            a2,
            mc_row(cfg, tau, metric, scenario, "mc", &mc, seed.master_seed),
            g1,
            g2,
        ]);
    }
    Ok(rows)
}

/// Throughput-optimal `tau` per cluster size: `tau` holds `tau*`, `value` the
/// throughput there, `cluster_param` the size.
pub fn cmd_optimal_tau(
    cfg: &SystemConfig,
    scenario: Scenario,
    sizes: &[f64],
    grid_step: f64,
    refine_tol: f64,
) -> Result<Vec<Row>> {
    sizes
        .iter()
        .map(|&size| {
            let c = cfg.with_cluster_size(size);
            let r = optimal_tau(&c, scenario, grid_step, refine_tol)?;
            Ok(Row::analytic(
                &c,
                r.tau_star,
                Metric::Throughput,
                scenario,
                "optimal_tau",
                r.throughput_star,
            ))
        })
        .collect()
}
