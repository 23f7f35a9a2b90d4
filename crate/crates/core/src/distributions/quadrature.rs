//! Globally adaptive Gauss-Kronrod (10/21-point) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! error estimate meets `max(abs_tol, rel_tol * |value|)`. A range `[a, inf)`
//! is mapped onto `[0, 1)` with `x = a + t / (1 - t)` before integrating; the
//! Kronrod nodes never touch the endpoints, so integrable endpoint
//! singularities are tolerated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

/// Gauss weights paired with the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-9,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    /// Tight settings for special-function evaluation.
    pub fn precise() -> Self {
        QuadratureSpec {
            abs_tol: 0.0,
            rel_tol: 1e-13,
            max_subdivisions: 4000,
        }
    }

    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        QuadratureSpec {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let tol_ok = self.abs_tol >= 0.0 && self.rel_tol >= 0.0 && self.abs_tol + self.rel_tol > 0.0;
        if !tol_ok || self.max_subdivisions == 0 {
            return Err(Error::domain(
                "quadrature spec",
                format!("{self:?} needs positive tolerance and at least one subdivision"),
            ));
        }
        Ok(())
    }
}

/// Value of an integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    Segment {
        a,
        b,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
    }
}

fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let first = gauss_kronrod(&mut f, a, b);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subdivisions,
            });
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(Integral { value, error });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
            // Interval exhausted at machine precision; accept what we have.
            heap.push(Segment { error: 0.0, ..worst });
            error = heap.iter().map(|s| s.error).sum();
            if heap.iter().all(|s| s.error == 0.0) {
                return Ok(Integral { value, error });
            }
            continue;
        }
        let left = gauss_kronrod(&mut f, worst.a, mid);
        let right = gauss_kronrod(&mut f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // Resum to keep the running totals from drifting.
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// Integrates `f` over `[lo, hi]`, where `hi` may be `f64::INFINITY`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    if lo.is_nan() || hi.is_nan() || lo == f64::INFINITY || lo == f64::NEG_INFINITY {
        return Err(Error::domain("integration range", format!("[{lo}, {hi}]")));
    }
    if hi == lo {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    if hi < lo {
        let r = integrate(f, hi, lo, spec)?;
        return Ok(Integral {
            value: -r.value,
            error: r.error,
        });
    }
    if hi.is_infinite() {
        let mapped = move |t: f64| {
            let s = 1.0 - t;
            let y = f(lo + t / s) / (s * s);
            if y.is_finite() {
                y
            } else {
                0.0
            }
        };
        return adaptive(mapped, 0.0, 1.0, spec);
    }
    adaptive(f, lo, hi, spec)
}

/// Integrates over consecutive pieces `[p0, p1], [p1, p2], ...`, which keeps
/// kinks and discontinuities at the break points away from node sets.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Integral> {
    let mut total = Integral { value: 0.0, error: 0.0 };
    for w in points.windows(2) {
        let r = integrate(&mut f, w[0], w[1], spec)?;
        total.value += r.value;
        total.error += r.error;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_exponential_mass() {
        let r = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn zero_integrand() {
        let r = integrate(|_| 0.0, 0.0, 1.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn nearest_neighbour_density_normalizes() {
        let lambda = 0.01;
        let r = integrate(
            |r| 2.0 * PI * lambda * r * (-PI * lambda * r * r).exp(),
            0.0,
            f64::INFINITY,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn error_estimate_within_tolerance() {
        let spec = QuadratureSpec::default();
        let r = integrate(|x: f64| x.sin().powi(2), 0.0, 10.0, &spec).unwrap();
        assert!(r.error <= spec.abs_tol.max(spec.rel_tol * r.value.abs()));
        let exact = 5.0 - (20.0f64).sin() / 4.0;
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &QuadratureSpec::precise()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn reversed_range_flips_sign() {
        let r = integrate(|x| x, 1.0, 0.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value + 0.5).abs() < 1e-14);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let spec = QuadratureSpec {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            max_subdivisions: 3,
        };
        match integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &spec) {
            Err(Error::NoConvergence {
                estimate, subdivisions, ..
            }) => {
                assert!(estimate > 0.0);
                assert_eq!(subdivisions, 3);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn bad_spec_rejected() {
        let spec = QuadratureSpec {
            max_subdivisions: 0,
            ..QuadratureSpec::default()
        };
        assert!(integrate(|x| x, 0.0, 1.0, &spec).is_err());
    }

    #[test]
    fn pieces_sum() {
        let r = integrate_pieces(|x: f64| x.abs(), &[-1.0, 0.0, 2.0], &QuadratureSpec::default()).unwrap();
        assert!((r.value - 2.5).abs() < 1e-14);
    }
}
