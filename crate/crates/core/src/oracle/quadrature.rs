//! Globally adaptive Gauss–Kronrod (7/15) quadrature and the low-dimensional
//! deterministic oracle built on it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use super::sampler::PointFunction;
use super::OracleError;
use crate::formulas::{IntegralError, IntegralSpec, Measure, Region, Space};
use crate::special::log_gamma;

// 15-point Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// One GK15 panel: (Kronrod estimate, |Kronrod − Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// `∫_a^b f` to relative accuracy `rel_tol` (absolute when the integral is zero).
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult, OracleError> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let (value, error) = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_error = error;
    while total_error > rel_tol * total.abs() && total_error > f64::MIN_POSITIVE {
        if heap.len() >= MAX_INTERVALS {
            return Err(OracleError::QuadratureFailed {
                achieved: total_error / total.abs(),
                requested: rel_tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel at floating resolution; keep it and give up refining.
            heap.push(worst);
            break;
        }
        let (lv, le) = gk15(&f, worst.a, mid);
        let (rv, re) = gk15(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_error += le + re - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
    }
    // Re-sum to shed the drift of the running updates.
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        error,
        intervals: heap.len(),
    })
}

fn check_tol(tol: f64) -> Result<(), OracleError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(OracleError::InvalidTolerance(tol))
    }
}

/// `∫₀¹ r^{dim-1+power} (1-r²)^q dr`.
///
/// On `[0, 1/2]` the substitution `v = r^{dim+power}` removes the origin
/// behaviour; on `[1/2, 1]` the substitution `u = (1-r²)^{q+1}` removes the
/// endpoint singularity of the weight. Both pieces have bounded integrands.
pub fn radial_quadrature(effective_dim: f64, power: f64, q: f64, tol: f64) -> Result<f64, OracleError> {
    check_tol(tol)?;
    if !q.is_finite() || q <= -1.0 {
        return Err(IntegralError::Divergent { q }.into());
    }
    let s = effective_dim + power;
    if !s.is_finite() || s <= 0.0 {
        return Err(OracleError::InvalidRadial { effective_dim, power });
    }
    let inner = integrate(|v: f64| (1.0 - v.powf(2.0 / s)).powf(q), 0.0, 0.5f64.powf(s), tol / 4.0)?;
    let q1 = q + 1.0;
    let outer_exp = 0.5 * (s - 2.0);
    let outer = integrate(|u: f64| (1.0 - u.powf(1.0 / q1)).powf(outer_exp), 0.0, 0.75f64.powf(q1), tol / 4.0)?;
    Ok(inner.value / s + outer.value / (2.0 * q1))
}

/// `∫₀^∞ r^{dim-1+power} e^{-r²} dr`.
pub fn gaussian_radial_quadrature(effective_dim: f64, power: f64, tol: f64) -> Result<f64, OracleError> {
    check_tol(tol)?;
    let s = effective_dim + power;
    if !s.is_finite() || s <= 0.0 {
        return Err(OracleError::InvalidRadial { effective_dim, power });
    }
    let head = integrate(|v: f64| (-v.powf(2.0 / s)).exp(), 0.0, 1.0, tol / 4.0)?;
    // Beyond peak + 12 the integrand is below e^{-144} of its peak.
    let upper = (0.5 * (s - 1.0).max(0.0)).sqrt() + 12.0;
    let tail = integrate(|r: f64| ((s - 1.0) * r.ln() - r * r).exp(), 1.0, upper, tol / 4.0)?;
    Ok(head.value / s + tail.value)
}

/// Deterministic estimate for `ℝ¹`, `ℝ²` and `ℂ¹` by the polar split: an
/// angular integral (a two-point sum on `𝕊⁰`) times a radial integral.
pub fn quadrature_estimate(spec: &IntegralSpec<f64>, tol: f64) -> Result<f64, OracleError> {
    spec.validate()?;
    check_tol(tol)?;
    if tol < 1e-12 {
        return Err(OracleError::InvalidTolerance(tol));
    }
    let real_dim = match spec.space {
        Space::Real(n @ (1 | 2)) => n,
        Space::Complex(1) => 2,
        other => return Err(OracleError::UnsupportedDimension(other)),
    };
    let f = PointFunction::new(spec);
    let (angular, circumference) = if real_dim == 1 {
        (f.eval(&[1.0]) + f.eval(&[-1.0]), 2.0)
    } else {
        // Breakpoints at multiples of π/4 cover the kinks of |cos|, |sin| and
        // |cos + sin| powers.
        let mut sum = 0.0;
        for k in 0..8 {
            let a = k as f64 * PI / 4.0;
            let b = (k + 1) as f64 * PI / 4.0;
            sum += integrate(|t: f64| f.eval(&[t.cos(), t.sin()]), a, b, tol / 4.0)?.value;
        }
        (sum, 2.0 * PI)
    };
    let degree = spec.integrand.degree();
    let d = real_dim as f64;
    let value = match (spec.region, spec.measure) {
        (Region::Sphere, Measure::Standard) => angular,
        (Region::Sphere, Measure::Normalized) => angular / circumference,
        (Region::Ball, Measure::Standard) => angular * radial_quadrature(d, degree, spec.q, tol)?,
        (Region::Ball, Measure::Normalized) => angular / circumference * d * radial_quadrature(d, degree, spec.q, tol)?,
        (Region::Gaussian, measure) => {
            let standard = angular * gaussian_radial_quadrature(d, degree, tol)?;
            match measure {
                Measure::Standard => standard,
                // dν = Γ(1+n/2)/π^{n/2} dV
                Measure::Normalized => {
                    standard * (log_gamma(1.0 + 0.5 * d).map_err(IntegralError::from)? - 0.5 * d * PI.ln()).exp()
                }
            }
        }
    };
    Ok(value)
}
