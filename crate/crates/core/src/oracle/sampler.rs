//! Pointwise integrands and random points on the sphere, the ball and in
//! Gaussian space.
//!
//! Points are stored as real vectors of length `n` (or `2N` in `ℂᴺ`, with
//! `(re, im)` pairs). Inner products use the anchor direction
//! `(1, …, 1)/√d` rather than a coordinate axis, so rotation invariance of
//! the closed forms is exercised as well.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::formulas::{Integrand, IntegralSpec, Space};

#[derive(Debug, Clone)]
pub(crate) enum PointFunction {
    RealMonomial { exponents: Vec<f64> },
    ComplexMonomial { exponents: Vec<f64> },
    RealInner { p: f64, scale: f64 },
    ComplexInner { p: f64, scale: f64 },
    Signed { alpha: Vec<i32> },
}

impl PointFunction {
    pub fn new(spec: &IntegralSpec<f64>) -> Self {
        let dim = spec.space.dim();
        match (&spec.integrand, spec.space) {
            (Integrand::MonomialAbsPower { alpha, p }, Space::Real(_)) => PointFunction::RealMonomial {
                exponents: alpha.entries().iter().map(|&a| f64::from(a) * p).collect(),
            },
            (Integrand::MonomialAbsPower { alpha, p }, Space::Complex(_)) => PointFunction::ComplexMonomial {
                // |z_j|^{αⱼp} = (|z_j|²)^{αⱼp/2}
                exponents: alpha.entries().iter().map(|&a| 0.5 * f64::from(a) * p).collect(),
            },
            (Integrand::InnerProductPower { p, anchor_norm }, Space::Real(_)) => PointFunction::RealInner {
                p: *p,
                scale: anchor_norm / (dim as f64).sqrt(),
            },
            (Integrand::InnerProductPower { p, anchor_norm }, Space::Complex(_)) => PointFunction::ComplexInner {
                p: *p,
                scale: anchor_norm / (dim as f64).sqrt(),
            },
            (Integrand::SignedMonomial { alpha }, _) => PointFunction::Signed {
                alpha: alpha.entries().iter().map(|&a| a as i32).collect(),
            },
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            PointFunction::RealMonomial { exponents } => exponents
                .iter()
                .zip(x)
                .filter(|(e, _)| **e != 0.0)
                .map(|(e, xi)| xi.abs().powf(*e))
                .product(),
            PointFunction::ComplexMonomial { exponents } => exponents
                .iter()
                .zip(x.chunks_exact(2))
                .filter(|(e, _)| **e != 0.0)
                .map(|(e, z)| (z[0] * z[0] + z[1] * z[1]).powf(*e))
                .product(),
            PointFunction::RealInner { p, scale } => {
                if *p == 0.0 {
                    return 1.0;
                }
                (scale * x.iter().sum::<f64>()).abs().powf(*p)
            }
            PointFunction::ComplexInner { p, scale } => {
                if *p == 0.0 {
                    return 1.0;
                }
                let (re, im) = x.chunks_exact(2).fold((0.0, 0.0), |(re, im), z| (re + z[0], im + z[1]));
                (scale * re.hypot(im)).abs().powf(*p)
            }
            PointFunction::Signed { alpha } => alpha
                .iter()
                .zip(x)
                .filter(|(a, _)| **a != 0)
                .map(|(a, xi)| xi.powi(*a))
                .product(),
        }
    }
}

/// Fills `x` with a uniform point on the unit sphere.
pub(crate) fn sphere_point<R: Rng>(rng: &mut R, x: &mut [f64]) {
    loop {
        let mut norm2 = 0.0;
        for xi in x.iter_mut() {
            let g: f64 = rng.sample(StandardNormal);
            *xi = g;
            norm2 += g * g;
        }
        // All-zero draws have probability zero but would divide by zero.
        if norm2 > 0.0 {
            let inv = norm2.sqrt().recip();
            x.iter_mut().for_each(|xi| *xi *= inv);
            return;
        }
    }
}

/// Fills `x` with a uniform point in the unit ball and returns `|x|²`.
pub(crate) fn ball_point<R: Rng>(rng: &mut R, x: &mut [f64]) -> f64 {
    sphere_point(rng, x);
    let u: f64 = rng.random();
    let r = u.powf(1.0 / x.len() as f64);
    x.iter_mut().for_each(|xi| *xi *= r);
    r * r
}

/// Fills `x` with independent coordinates of density `∝ e^{-t²}`.
pub(crate) fn gaussian_point<R: Rng>(rng: &mut R, x: &mut [f64]) {
    for xi in x.iter_mut() {
        let g: f64 = rng.sample(StandardNormal);
        *xi = g * std::f64::consts::FRAC_1_SQRT_2;
    }
}
