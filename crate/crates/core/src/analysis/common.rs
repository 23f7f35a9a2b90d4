use std::f64::consts::PI;

use crate::distributions::laws::TAIL_LOG;
use crate::distributions::{
    association_probabilities, integrate, integrate_pieces, psi, Association, PsiVariant, QuadratureSpec,
    ServingDistance, Tier,
};
use crate::error::{Error, Result};
use crate::model::{c_of_tau, validate_config, ClusterModel, SystemConfig};

use super::EvalPath;

pub(crate) fn outer_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-11,
        rel_tol: 1e-10,
        max_subdivisions: 4000,
    }
}

pub(crate) fn inner_spec() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-13,
        rel_tol: 1e-10,
        max_subdivisions: 2000,
    }
}

/// Everything a coverage expression needs at one `(cfg, tau)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Setup {
    pub cfg: SystemConfig,
    pub lambda: f64,
    pub alpha: f64,
    /// Normalized threshold `C(tau)`.
    pub c: f64,
    /// Radius below which the mean network energy alone meets `C`; infinite when `C = 0`.
    pub a_radius: f64,
    pub model: ClusterModel,
    pub assoc: Association,
}

impl Setup {
    pub fn new(cfg: &SystemConfig, tau: f64) -> Result<Self> {
        let cfg = validate_config(*cfg)?;
        let c = c_of_tau(&cfg, tau)?;
        let lambda = cfg.lambda_total;
        let alpha = cfg.alpha;
        Ok(Setup {
            cfg,
            lambda,
            alpha,
            c,
            a_radius: threshold_radius(lambda, alpha, c),
            model: cfg.cluster,
            assoc: association_probabilities(&cfg.cluster, lambda)?,
        })
    }

    pub fn serving(&self, tier: Tier) -> Result<ServingDistance> {
        ServingDistance::new(tier, &self.model, self.lambda)
    }

    pub fn theta(&self, w: f64) -> f64 {
        2.0 * PI * self.lambda / (self.alpha - 2.0) * w.powf(2.0 - self.alpha)
    }

    pub fn psi(&self, w: f64, path: EvalPath) -> Result<f64> {
        let variant = match path {
            EvalPath::General => PsiVariant::General,
            EvalPath::Specialized => PsiVariant::ClosedForm,
        };
        psi(&self.model, self.lambda, self.alpha, w, variant)
    }

    /// `beta * sigma^2 / P_t`, the noise coefficient of `w^alpha` in the SINR exponent.
    pub fn noise_coeff(&self) -> f64 {
        self.cfg.beta * self.cfg.noise / self.cfg.p_t
    }

    /// Upper limit for integrals weighted by the nearest-PPP density.
    pub fn nearest_upper(&self) -> f64 {
        (TAIL_LOG / (PI * self.lambda)).sqrt()
    }

    /// Characteristic lengths used as quadrature break points.
    pub fn scales(&self) -> Vec<f64> {
        let mut s = vec![1.0 / (PI * self.lambda).sqrt(), self.model.size()];
        if self.c > 0.0 {
            s.push(self.c.powf(-1.0 / self.alpha));
        }
        s
    }
}

/// `A = (2 pi lambda / (C (alpha - 2)))^(1 / (alpha - 2))`.
pub(crate) fn threshold_radius(lambda: f64, alpha: f64, c: f64) -> f64 {
    if c <= 0.0 {
        return f64::INFINITY;
    }
    (2.0 * PI * lambda / (c * (alpha - 2.0))).powf(1.0 / (alpha - 2.0))
}

/// `lo`, `hi` and every scale strictly between them, sorted.
pub(crate) fn break_points(lo: f64, hi: f64, scales: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut inner: Vec<f64> = scales
        .iter()
        .copied()
        .filter(|&s| s > lo * (1.0 + 1e-9) && s < hi * (1.0 - 1e-9))
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * b.abs());
    pts.extend(inner);
    pts.push(hi);
    pts
}

/// Integrates a fallible integrand over consecutive pieces; the first error wins.
pub(crate) fn integrate_fallible<F>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let r = integrate_pieces(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        points,
        spec,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r?.value)
}

/// `int_w^inf g(r) f_R0(r) dr`.
pub(crate) fn center_tail_integral<G: FnMut(f64) -> f64>(model: &ClusterModel, w: f64, mut g: G) -> Result<f64> {
    match *model {
        ClusterModel::Thomas { sigma_c } => {
            // r^2 = w^2 + 2 sigma^2 t turns the Rayleigh tail into e^-t.
            let s2 = 2.0 * sigma_c * sigma_c;
            let r = integrate(
                |t: f64| g((w * w + s2 * t).sqrt()) * (-t).exp(),
                0.0,
                TAIL_LOG,
                &inner_spec(),
            )?;
            Ok((-w * w / s2).exp() * r.value)
        }
        ClusterModel::Matern { r_c } => {
            if w >= r_c {
                return Ok(0.0);
            }
            let r = integrate(|s: f64| g(s.sqrt()), w * w, r_c * r_c, &inner_spec())?;
            Ok(r.value / (r_c * r_c))
        }
    }
}

/// `int_0^min(r, support) g(w) f_R0(w) dw`.
pub(crate) fn center_head_integral<G: FnMut(f64) -> f64>(model: &ClusterModel, r: f64, mut g: G) -> Result<f64> {
    match *model {
        ClusterModel::Thomas { sigma_c } => {
            let s2 = 2.0 * sigma_c * sigma_c;
            let res = integrate(|s: f64| g(s.sqrt()) * (-s / s2).exp() / s2, 0.0, r * r, &inner_spec())?;
            Ok(res.value)
        }
        ClusterModel::Matern { r_c } => {
            let top = r.min(r_c);
            let res = integrate(|s: f64| g(s.sqrt()), 0.0, top * top, &inner_spec())?;
            Ok(res.value / (r_c * r_c))
        }
    }
}

/// Distance `w*` beyond which the conditional mean energy `Psi(w)` falls below
/// `C`. `None` when `Psi >= C` on the whole tier-1 support.
pub(crate) fn psi_crossing(setup: &Setup, path: EvalPath) -> Result<Option<f64>> {
    let c = setup.c;
    if c <= 0.0 {
        return Ok(None);
    }
    // Psi >= theta, so the crossing lies beyond A.
    let mut lo = setup.a_radius;
    let mut hi = match setup.model {
        ClusterModel::Matern { r_c } => {
            if lo >= r_c {
                return Ok(None);
            }
            // Psi(R_c-) = R_c^-alpha + theta(R_c)
            if r_c.powf(-setup.alpha) + setup.theta(r_c) >= c {
                return Ok(None);
            }
            r_c
        }
        ClusterModel::Thomas { .. } => {
            let mut hi = 2.0 * lo;
            let mut guard = 0;
            while setup.psi(hi, path)? >= c {
                lo = hi;
                hi *= 2.0;
                guard += 1;
                if guard > 200 {
                    return Err(Error::domain("psi crossing", "no bracket for Psi(w) = C"));
                }
            }
            hi
        }
    };
    let mut iters = 0;
    while hi - lo > 1e-10 && iters < 200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if setup.psi(mid, path)? >= c {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// `F_{W_i}(x)`: closed form, or quadrature of the density on the general path.
pub(crate) fn serving_cdf(sd: &ServingDistance, x: f64, path: EvalPath) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    match path {
        EvalPath::Specialized => Ok(sd.cdf(x)),
        EvalPath::General => {
            let hi = x.min(sd.effective_upper());
            let r = integrate(|w| sd.pdf(w), 0.0, hi, &inner_spec())?;
            Ok(r.value)
        }
    }
}

/// Hypo-exponential survival `P(X/a + Y/b >= c)` for unit exponentials `X, Y`:
/// `(b e^-ac - a e^-bc) / (b - a)`, computed as `e^-ac (1 + ac phi((b-a)c))`
/// with `phi(y) = (1 - e^-y) / y`, which has no cancellation as `b -> a`.
/// Symmetric in `a` and `b`; evaluated with `a <= b` so `e^-y` cannot overflow.
pub fn hypoexp_survival(a: f64, b: f64, c: f64) -> f64 {
    if c <= 0.0 {
        return 1.0;
    }
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let ac = a * c;
    let y = (b - a) * c;
    let phi = if y.abs() < 1e-6 {
        1.0 - y / 2.0 + y * y / 6.0
    } else {
        -(-y).exp_m1() / y
    };
    (-ac).exp() * (1.0 + ac * phi)
}
