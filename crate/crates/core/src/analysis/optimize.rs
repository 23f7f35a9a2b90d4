use crate::error::{Error, Result};
use crate::model::SystemConfig;

use super::{throughput, Scenario};

/// Outcome of a slot-split search.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSearchResult {
    pub tau_star: f64,
    pub throughput_star: f64,
    pub evaluations: usize,
    /// Every `(tau, R)` evaluated, grid first, then refinement.
    pub trace: Vec<(f64, f64)>,
}

/// Throughput-maximizing charging fraction for `scenario`.
///
/// Scans a grid of step `grid_step` over `[grid_step, 1 - grid_step]`, then
/// golden-section refines around the best grid point until the bracket is
/// narrower than `refine_tol`.
pub fn optimal_tau(cfg: &SystemConfig, scenario: Scenario, grid_step: f64, refine_tol: f64) -> Result<TauSearchResult> {
    maximize_tau(|tau| throughput(cfg, tau, scenario), grid_step, refine_tol)
}

/// [`optimal_tau`] for an arbitrary objective.
pub fn maximize_tau<F>(mut objective: F, grid_step: f64, refine_tol: f64) -> Result<TauSearchResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(grid_step > 0.0 && grid_step < 0.5) {
        return Err(Error::domain(
            "grid_step",
            format!("must lie in (0, 0.5), got {grid_step}"),
        ));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::domain(
            "refine_tol",
            format!("must be positive, got {refine_tol}"),
        ));
    }
    let (lo_edge, hi_edge) = (grid_step, 1.0 - grid_step);
    let mut trace = Vec::new();
    let mut eval = |tau: f64, trace: &mut Vec<(f64, f64)>| -> Result<f64> {
        let r = objective(tau)?;
        trace.push((tau, r));
        Ok(r)
    };

    let steps = ((hi_edge - lo_edge) / grid_step + 1e-9).floor() as usize;
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for i in 0..=steps {
        let tau = (lo_edge + i as f64 * grid_step).min(hi_edge);
        let r = eval(tau, &mut trace)?;
        if r > best.1 {
            best = (tau, r);
        }
    }
    if !(best.1 > 0.0) {
        return Err(Error::NoInteriorOptimum);
    }

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = (best.0 - grid_step).max(lo_edge);
    let mut b = (best.0 + grid_step).min(hi_edge);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1, &mut trace)?;
    let mut f2 = eval(x2, &mut trace)?;
    while b - a >= refine_tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1, &mut trace)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2, &mut trace)?;
        }
    }
    for &(tau, r) in &trace {
        if r > best.1 {
            best = (tau, r);
        }
    }
    Ok(TauSearchResult {
        tau_star: best.0,
        throughput_star: best.1,
        evaluations: trace.len(),
        trace,
    })
}
