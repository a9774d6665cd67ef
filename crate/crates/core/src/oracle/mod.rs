//! Independent estimates of the integrals: seeded Monte Carlo in any
//! dimension, adaptive quadrature in `ℝ¹`, `ℝ²` and `ℂ¹`, and a hybrid of the
//! two for ball weights with `-1 < q < 0`.
//!
//! The only inputs shared with [`crate::formulas`] are the region measures
//! `V(𝔅)` and `S(𝕊)` used to rescale normalized estimates.

pub mod quadrature;
pub mod rng;
mod sampler;

use rayon::prelude::*;
use thiserror::Error;

use crate::formulas::{normalization_constant, IntegralError, IntegralSpec, Measure, Region, Space};
use crate::special::log_gamma;
use sampler::{ball_point, gaussian_point, sphere_point, PointFunction};

pub use quadrature::{gaussian_radial_quadrature, integrate, quadrature_estimate, radial_quadrature, QuadResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error("plain Monte Carlo needs q >= 0 (got q = {q}); use the hybrid estimator")]
    NegativeWeight { q: f64 },
    #[error("hybrid estimation applies to ball integrals with -1 < q < 0 (got {0})")]
    NotHybrid(String),
    #[error("quadrature supports real dimension 1 or 2 and complex dimension 1, not {0:?}")]
    UnsupportedDimension(Space),
    #[error("quadrature stalled at relative error {achieved:e} (requested {requested:e})")]
    QuadratureFailed { achieved: f64, requested: f64 },
    #[error("tolerance {0} is out of range")]
    InvalidTolerance(f64),
    #[error("radial integral needs effective_dim + power > 0 (got {effective_dim} + {power})")]
    InvalidRadial { effective_dim: f64, power: f64 },
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OracleConfig {
    pub samples: u64,
    pub seed: u64,
    /// Samples per independent random stream.
    pub chunk_size: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples: 1_000_000,
            seed: 42,
            chunk_size: 1 << 16,
        }
    }
}

impl OracleConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        OracleConfig {
            samples,
            seed,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.samples < 2 {
            return Err(OracleError::InvalidConfig("samples must be at least 2"));
        }
        if self.chunk_size == 0 {
            return Err(OracleError::InvalidConfig("chunk_size must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `√samples_used`.
    pub standard_error: f64,
    pub samples_used: u64,
}

impl Estimate {
    /// `(mean - reference) / standard_error`. With a zero standard error the
    /// score is `0` when the two agree to `1e-12` relative and infinite
    /// otherwise.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.standard_error > 0.0 {
            diff / self.standard_error
        } else if diff.abs() <= 1e-12 * reference.abs().max(f64::MIN_POSITIVE) {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        }
    }

    fn scaled(self, factor: f64) -> Estimate {
        Estimate {
            mean: self.mean * factor,
            standard_error: self.standard_error * factor.abs(),
            samples_used: self.samples_used,
        }
    }
}

/// Streaming mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64 / count as f64);
        Moments { count, mean, m2 }
    }
}

fn run_chunk(spec: &IntegralSpec<f64>, f: &PointFunction, seed: u64, chunk: u64, count: u64) -> Moments {
    let mut rng = rng::chunk_rng(seed, chunk);
    let mut x = vec![0.0; spec.space.real_dim()];
    let mut moments = Moments::default();
    for _ in 0..count {
        let sample = match spec.region {
            Region::Sphere => {
                sphere_point(&mut rng, &mut x);
                f.eval(&x)
            }
            Region::Ball => {
                let r2 = ball_point(&mut rng, &mut x);
                let weight = if spec.q == 0.0 { 1.0 } else { (1.0 - r2).powf(spec.q) };
                f.eval(&x) * weight
            }
            Region::Gaussian => {
                gaussian_point(&mut rng, &mut x);
                f.eval(&x)
            }
        };
        moments.push(sample);
    }
    moments
}

/// Scale taking the sample mean to the integral under the spec's measure.
fn measure_scale(spec: &IntegralSpec<f64>) -> Result<f64, OracleError> {
    let n = spec.space.real_dim() as f64;
    Ok(match (spec.region, spec.measure) {
        (Region::Sphere | Region::Ball, Measure::Normalized) => 1.0,
        (Region::Sphere | Region::Ball, Measure::Standard) => normalization_constant::<f64>(spec.space, spec.region)?
            .value()
            .unwrap_or(f64::INFINITY),
        // ∫ f e^{-|x|²} dV = π^{n/2} E[f] under coordinates of density ∝ e^{-t²}
        (Region::Gaussian, Measure::Standard) => (0.5 * n * std::f64::consts::PI.ln()).exp(),
        (Region::Gaussian, Measure::Normalized) => log_gamma(1.0 + 0.5 * n).map_err(IntegralError::from)?.exp(),
    })
}

/// Relative per-sample scatter treated as rounding noise.
const RESOLUTION: f64 = 64.0 * f64::EPSILON;

/// Monte Carlo estimate of the spec's integral.
///
/// Samples are split into chunks of `chunk_size`, each with its own stream;
/// chunk moments are merged in chunk order, so the result does not depend on
/// the number of worker threads.
pub fn mc_estimate(spec: &IntegralSpec<f64>, config: &OracleConfig) -> Result<Estimate, OracleError> {
    spec.validate()?;
    config.validate()?;
    if spec.region == Region::Ball && spec.q < 0.0 {
        return Err(OracleError::NegativeWeight { q: spec.q });
    }
    let f = PointFunction::new(spec);
    let chunks = config.samples.div_ceil(config.chunk_size);
    let per_chunk: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * config.chunk_size;
            let count = config.chunk_size.min(config.samples - start);
            run_chunk(spec, &f, config.seed, c, count)
        })
        .collect();
    let moments = per_chunk.into_iter().fold(Moments::default(), Moments::merge);
    let spread = (moments.m2 / (moments.count - 1) as f64).max(0.0).sqrt();
    // A spread at the level of floating-point resolution means the integrand
    // is constant on the domain and the scatter is pure rounding.
    let spread = if spread <= RESOLUTION * moments.mean.abs() { 0.0 } else { spread };
    let estimate = Estimate {
        mean: moments.mean,
        standard_error: spread / (moments.count as f64).sqrt(),
        samples_used: moments.count,
    };
    Ok(estimate.scaled(measure_scale(spec)?))
}

/// Ball integral with `-1 < q < 0`: a Monte Carlo sphere average times a
/// quadrature of the singular radial factor.
pub fn hybrid_estimate(spec: &IntegralSpec<f64>, config: &OracleConfig, tol: f64) -> Result<Estimate, OracleError> {
    spec.validate()?;
    if spec.region != Region::Ball || spec.q.is_nan() || spec.q >= 0.0 {
        return Err(OracleError::NotHybrid(format!("{:?} with q = {}", spec.region, spec.q)));
    }
    let sphere = IntegralSpec {
        region: Region::Sphere,
        q: 0.0,
        ..spec.clone()
    };
    let angular = mc_estimate(&sphere, config)?;
    let n = spec.space.real_dim() as f64;
    let radial = radial_quadrature(n, spec.integrand.degree(), spec.q, tol)?;
    let factor = match spec.measure {
        Measure::Standard => radial,
        Measure::Normalized => n * radial,
    };
    Ok(angular.scaled(factor))
}
