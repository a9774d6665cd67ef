//! Closed forms for `∫|x^α|^p` and `∫|⟨x,y⟩|^p` over Gaussian space, the unit
//! sphere and the weighted unit ball, real and complex.
//!
//! All sixteen families reduce to one shape. With `b = 1/2` (real) or `b = 1`
//! (complex), coordinate exponents `eⱼ` (`αⱼp` for a monomial, `(p, 0, …, 0)`
//! for an inner product), total degree `a = Σ eⱼ` and half-dimension
//! `h = n/2 = N`:
//!
//! | region   | Lebesgue                                   | normalized                                    |
//! |----------|--------------------------------------------|-----------------------------------------------|
//! | Gaussian | `C Π Γ(b+eⱼ/2)`                            | `Γ(1+h) Π (b)_{eⱼ/2}`                          |
//! | sphere   | `2C Π Γ(b+eⱼ/2) / Γ(h+a/2)`                | `Π (b)_{eⱼ/2} / (h)_{a/2}`                     |
//! | ball     | `C Γ(1+q) Π Γ(b+eⱼ/2) / Γ(1+q+h+a/2)`      | `(1)_q Π (b)_{eⱼ/2} / (1+h)_{q+a/2}`           |
//!
//! where `C = 1` in `ℝⁿ` and `C = π^N` in `ℂᴺ`, times `|y|^p` for inner
//! products. Lebesgue values are assembled from gamma functions and
//! normalized values from Pochhammer symbols, so the two measures are
//! computed along independent routes. Integer cases (`p = 2m`, `q = k`) are
//! additionally evaluated exactly.

pub mod asymptotic;

use thiserror::Error;

use crate::exact::{exact_gamma_half_integer, ExactError, ExactValue, MultiIndex};
use crate::special::{log_gamma, log_pochhammer, LogValue, SpecialError};
use crate::{cst, Scalar};

/// Distance to the nearest integer below which `p` and `q` count as integers.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Default cap on the doubled gamma arguments of an exact evaluation.
pub const DEFAULT_EXACT_ARG_LIMIT: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegralError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("divergent integral: weight exponent q = {q} must satisfy q > -1")]
    Divergent { q: f64 },
    #[error("dimension mismatch: alpha has {got} entries but the space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("power p = {0} must be nonnegative")]
    NegativePower(f64),
    #[error("anchor norm {0} must be nonnegative")]
    NegativeAnchor(f64),
    #[error("{name} = {value} is not finite")]
    NonFinite { name: &'static str, value: f64 },
    #[error("signed monomials are only supported in real space")]
    SignedComplex,
    #[error("unsupported asymptotic limit: {0}")]
    UnsupportedAsymptotic(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// `ℝⁿ`
    Real(usize),
    /// `ℂᴺ`, identified with `ℝ^{2N}`.
    Complex(usize),
}

impl Space {
    /// `n` for real space, `N` for complex space.
    pub fn dim(self) -> usize {
        match self {
            Space::Real(n) | Space::Complex(n) => n,
        }
    }

    /// Underlying real dimension: `n` or `2N`.
    pub fn real_dim(self) -> usize {
        match self {
            Space::Real(n) => n,
            Space::Complex(n) => 2 * n,
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Space::Complex(_))
    }

    /// `Γ(b)` base of the per-coordinate factors: 1/2 in `ℝⁿ`, 1 in `ℂᴺ`.
    pub(crate) fn coordinate_base<T: Scalar>(self) -> T {
        match self {
            Space::Real(_) => cst(0.5),
            Space::Complex(_) => T::one(),
        }
    }

    /// `n/2 = N`.
    pub(crate) fn half_dim<T: Scalar>(self) -> T {
        cst::<T>(self.real_dim() as f64) * cst(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// All of space with weight `e^{-|x|²}`.
    Gaussian,
    Sphere,
    /// Unit ball with weight `(1-|x|²)^q`.
    Ball,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Lebesgue volume `V` or surface measure `S`.
    Standard,
    /// `ν` with `ν(𝔅) = 1`, or `σ` with `σ(𝕊) = 1`.
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Integrand<T> {
    /// `|x^α|^p`.
    MonomialAbsPower { alpha: MultiIndex, p: T },
    /// `|⟨x,y⟩|^p`; only `|y|` matters by rotation invariance.
    InnerProductPower { p: T, anchor_norm: T },
    /// `x^α` without absolute value (real space only).
    SignedMonomial { alpha: MultiIndex },
}

impl<T: Scalar> Integrand<T> {
    pub fn monomial(alpha: MultiIndex, p: T) -> Self {
        Integrand::MonomialAbsPower { alpha, p }
    }

    pub fn inner_product(p: T, anchor_norm: T) -> Self {
        Integrand::InnerProductPower { p, anchor_norm }
    }

    pub fn signed(alpha: MultiIndex) -> Self {
        Integrand::SignedMonomial { alpha }
    }

    pub fn power(&self) -> Option<T> {
        match self {
            Integrand::MonomialAbsPower { p, .. } | Integrand::InnerProductPower { p, .. } => Some(*p),
            Integrand::SignedMonomial { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<&MultiIndex> {
        match self {
            Integrand::MonomialAbsPower { alpha, .. } | Integrand::SignedMonomial { alpha } => Some(alpha),
            Integrand::InnerProductPower { .. } => None,
        }
    }

    /// Degree of homogeneity: `f(rξ) = r^degree f(ξ)`.
    pub fn degree(&self) -> T {
        match self {
            Integrand::MonomialAbsPower { alpha, p } => cst::<T>(alpha.order() as f64) * *p,
            Integrand::InnerProductPower { p, .. } => *p,
            Integrand::SignedMonomial { alpha } => cst(alpha.order() as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSpec<T> {
    pub space: Space,
    pub region: Region,
    pub integrand: Integrand<T>,
    /// Weight exponent; only read for [`Region::Ball`].
    pub q: T,
    pub measure: Measure,
}

impl<T: Scalar> IntegralSpec<T> {
    pub fn new(space: Space, region: Region, integrand: Integrand<T>, measure: Measure) -> Self {
        IntegralSpec {
            space,
            region,
            integrand,
            q: T::zero(),
            measure,
        }
    }

    pub fn ball(space: Space, integrand: Integrand<T>, q: T, measure: Measure) -> Self {
        IntegralSpec {
            space,
            region: Region::Ball,
            integrand,
            q,
            measure,
        }
    }

    pub fn with_q(mut self, q: T) -> Self {
        self.q = q;
        self
    }

    pub fn with_measure(mut self, measure: Measure) -> Self {
        self.measure = measure;
        self
    }

    /// Weight exponent if the region carries one.
    pub fn weight(&self) -> Option<T> {
        (self.region == Region::Ball).then_some(self.q)
    }

    pub fn validate(&self) -> Result<(), IntegralError> {
        let dim = self.space.dim();
        if dim == 0 {
            return Err(IntegralError::ZeroDimension);
        }
        let finite = |name: &'static str, v: T| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(IntegralError::NonFinite {
                    name,
                    value: v.to_f64().unwrap_or(f64::NAN),
                })
            }
        };
        if let Some(alpha) = self.integrand.alpha() {
            if alpha.len() != dim {
                return Err(IntegralError::DimensionMismatch {
                    expected: dim,
                    got: alpha.len(),
                });
            }
        }
        if let Some(p) = self.integrand.power() {
            finite("p", p)?;
            if p < T::zero() {
                return Err(IntegralError::NegativePower(p.to_f64().unwrap_or(f64::NAN)));
            }
        }
        match &self.integrand {
            Integrand::InnerProductPower { anchor_norm, .. } => {
                finite("anchor_norm", *anchor_norm)?;
                if *anchor_norm < T::zero() {
                    return Err(IntegralError::NegativeAnchor(anchor_norm.to_f64().unwrap_or(f64::NAN)));
                }
            }
            Integrand::SignedMonomial { .. } if self.space.is_complex() => {
                return Err(IntegralError::SignedComplex);
            }
            _ => {}
        }
        if let Some(q) = self.weight() {
            finite("q", q)?;
            if q <= -T::one() {
                return Err(IntegralError::Divergent {
                    q: q.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}

/// Either an exact zero or a positive value held by its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Magnitude<T> {
    Zero,
    Positive(LogValue<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralValue<T> {
    magnitude: Magnitude<T>,
    value: Option<T>,
    exact: Option<ExactValue>,
}

impl<T: Scalar> IntegralValue<T> {
    pub fn zero() -> Self {
        IntegralValue {
            magnitude: Magnitude::Zero,
            value: Some(T::zero()),
            exact: Some(ExactValue::zero()),
        }
    }

    fn positive(log: T, exact: Option<ExactValue>) -> Self {
        let log = LogValue::new(log);
        // An exact form rounds to a closer linear value than exp(log).
        let rounded = exact
            .as_ref()
            .and_then(|e| T::from_f64(e.to_f64()))
            .filter(|v| v.is_normal() && *v > T::zero());
        IntegralValue {
            magnitude: Magnitude::Positive(log),
            value: rounded.or_else(|| log.exp()),
            exact,
        }
    }

    pub fn magnitude(&self) -> Magnitude<T> {
        self.magnitude
    }

    /// `ln` of the value; `None` for an exact zero.
    pub fn log_value(&self) -> Option<T> {
        match self.magnitude {
            Magnitude::Zero => None,
            Magnitude::Positive(l) => Some(l.ln()),
        }
    }

    /// The linear value; `None` when it overflows the floating range.
    pub fn value(&self) -> Option<T> {
        self.value
    }

    pub fn exact(&self) -> Option<&ExactValue> {
        self.exact.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude == Magnitude::Zero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest doubled gamma argument (or anchor power) for which an exact
    /// value is assembled; `0` disables exact evaluation.
    pub exact_arg_limit: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            exact_arg_limit: DEFAULT_EXACT_ARG_LIMIT,
        }
    }
}

impl EvalOptions {
    pub fn float_only() -> Self {
        EvalOptions { exact_arg_limit: 0 }
    }
}

fn nearest_integer<T: Scalar>(x: T) -> Option<u64> {
    let r = x.round();
    if (x - r).abs() <= cst(INTEGER_TOLERANCE) && r >= T::zero() {
        r.to_u64()
    } else {
        None
    }
}

/// `Some(p)` when `p` is within tolerance of an even integer.
pub fn as_even_integer<T: Scalar>(p: T) -> Option<u64> {
    nearest_integer(p).filter(|k| k % 2 == 0)
}

/// `Some(q)` when `q` is within tolerance of a nonnegative integer.
pub fn as_nonnegative_integer<T: Scalar>(q: T) -> Option<u64> {
    nearest_integer(q)
}

/// The spec after the symmetry reduction of signed monomials and snapping
/// of near-integer parameters.
#[derive(Debug, Clone)]
pub(crate) struct Canonical<T> {
    pub space: Space,
    pub region: Region,
    pub measure: Measure,
    /// Per-coordinate exponents `eⱼ`.
    pub exponents: Vec<T>,
    /// `(alpha, m)` with `p = 2m` for the integer-case formulas.
    pub even: Option<(MultiIndex, u64)>,
    pub anchor: Option<T>,
    pub p: T,
    pub q: T,
    pub q_integer: Option<u64>,
}

/// The symmetry zero, or the canonical form of a validated spec.
pub(crate) fn canonicalize<T: Scalar>(spec: &IntegralSpec<T>) -> Result<Option<Canonical<T>>, IntegralError> {
    spec.validate()?;
    let dim = spec.space.dim();
    let (alpha, p, anchor) = match &spec.integrand {
        Integrand::SignedMonomial { alpha } => {
            if !alpha.all_even() {
                return Ok(None);
            }
            // x^α = |x^{α/2}|^2 for all-even α.
            let half = MultiIndex::new(alpha.entries().iter().map(|a| a / 2).collect());
            (half, cst::<T>(2.0), None)
        }
        Integrand::MonomialAbsPower { alpha, p } => (alpha.clone(), *p, None),
        Integrand::InnerProductPower { p, anchor_norm } => (MultiIndex::unit(dim, 0), *p, Some(*anchor_norm)),
    };
    let even_p = as_even_integer(p);
    let p = even_p.map_or(p, |k| cst(k as f64));
    if let Some(rho) = anchor {
        if rho == T::zero() && p > T::zero() {
            return Ok(None);
        }
    }
    let (q, q_integer) = match spec.region {
        Region::Ball => {
            let k = as_nonnegative_integer(spec.q);
            (k.map_or(spec.q, |k| cst(k as f64)), k)
        }
        _ => (T::zero(), None),
    };
    let exponents = alpha
        .entries()
        .iter()
        .map(|&a| cst::<T>(f64::from(a)) * p)
        .collect();
    Ok(Some(Canonical {
        space: spec.space,
        region: spec.region,
        measure: spec.measure,
        exponents,
        even: even_p.map(|k| (alpha, k / 2)),
        anchor,
        p,
        q,
        q_integer,
    }))
}

impl<T: Scalar> Canonical<T> {
    fn degree(&self) -> T {
        self.exponents.iter().fold(T::zero(), |acc, &e| acc + e)
    }

    fn anchor_log(&self) -> T {
        match self.anchor {
            Some(rho) if self.p > T::zero() => self.p * rho.ln(),
            _ => T::zero(),
        }
    }

    /// Lebesgue-measure value from gamma functions.
    fn log_standard(&self) -> Result<T, IntegralError> {
        let one = T::one();
        let half = cst::<T>(0.5);
        let b = self.space.coordinate_base::<T>();
        let h = self.space.half_dim::<T>();
        let t = h + self.degree() * half;
        let mut log = match self.space {
            Space::Real(_) => T::zero(),
            Space::Complex(n) => cst::<T>(n as f64) * T::PI().ln(),
        };
        for &e in &self.exponents {
            log = log + log_gamma(b + e * half)?;
        }
        log = log
            + match self.region {
                Region::Gaussian => T::zero(),
                Region::Sphere => T::LN_2() - log_gamma(t)?,
                Region::Ball => log_gamma(one + self.q)? - log_gamma(one + self.q + t)?,
            };
        Ok(log + self.anchor_log())
    }

    /// Normalized-measure value from Pochhammer symbols.
    fn log_normalized(&self) -> Result<T, IntegralError> {
        let one = T::one();
        let half = cst::<T>(0.5);
        let b = self.space.coordinate_base::<T>();
        let h = self.space.half_dim::<T>();
        let a_half = self.degree() * half;
        let mut log = T::zero();
        for &e in &self.exponents {
            log = log + log_pochhammer(b, e * half)?;
        }
        log = log
            + match self.region {
                Region::Gaussian => log_gamma(one + h)?,
                Region::Sphere => -log_pochhammer(h, a_half)?,
                Region::Ball => log_pochhammer(one, self.q)? - log_pochhammer(one + h, self.q + a_half)?,
            };
        Ok(log + self.anchor_log())
    }

    /// Exact value in the integer case, within the argument cap.
    fn exact(&self, limit: u64) -> Result<Option<ExactValue>, IntegralError> {
        let Some((alpha, m)) = &self.even else {
            return Ok(None);
        };
        let k = match (self.region, self.q_integer) {
            (Region::Ball, None) => return Ok(None),
            (Region::Ball, Some(k)) => k,
            _ => 0,
        };
        let base2: u64 = if self.space.is_complex() { 2 } else { 1 };
        let n_real = self.space.real_dim() as u64;
        let coord_args: Vec<u64> = alpha.entries().iter().map(|&a| base2 + 2 * m * u64::from(a)).collect();
        let radial2 = n_real + 2 * m * alpha.order();
        let largest = coord_args
            .iter()
            .copied()
            .chain([radial2 + 2 * k + 2, n_real + 2, 2 * m])
            .max()
            .unwrap_or(0);
        if largest > limit {
            return Ok(None);
        }

        let g = exact_gamma_half_integer;
        let mut value = ExactValue::one();
        for &d in &coord_args {
            value = value * g(d)?;
        }
        if let Space::Complex(n) = self.space {
            value = value * ExactValue::pi_power_half(2 * n as i64);
        }
        value = match self.region {
            Region::Gaussian => value,
            Region::Sphere => (value * ExactValue::from_integer(2)).checked_div(&g(radial2)?)?,
            Region::Ball => (value * g(2 + 2 * k)?).checked_div(&g(2 + 2 * k + radial2)?)?,
        };
        if self.measure == Measure::Normalized {
            value = value.checked_div(&exact_region_measure(n_real, self.region)?)?;
        }
        if let Some(rho) = self.anchor {
            let rho = ExactValue::from_f64(rho.to_f64().unwrap_or(f64::NAN))?;
            value = value * rho.pow(2 * *m as u32);
        }
        Ok(Some(value))
    }
}

/// Exact `V(𝔅)` (ball and Gaussian normalization) or `S(𝕊)` for real dimension `n`.
fn exact_region_measure(n_real: u64, region: Region) -> Result<ExactValue, ExactError> {
    let volume = ExactValue::pi_power_half(n_real as i64).checked_div(&exact_gamma_half_integer(n_real + 2)?)?;
    Ok(match region {
        Region::Sphere => volume * ExactValue::from_integer(n_real),
        Region::Gaussian | Region::Ball => volume,
    })
}

/// Evaluates the closed form with default options.
pub fn evaluate<T: Scalar>(spec: &IntegralSpec<T>) -> Result<IntegralValue<T>, IntegralError> {
    evaluate_with(spec, &EvalOptions::default())
}

pub fn evaluate_with<T: Scalar>(
    spec: &IntegralSpec<T>,
    options: &EvalOptions,
) -> Result<IntegralValue<T>, IntegralError> {
    let Some(canon) = canonicalize(spec)? else {
        return Ok(IntegralValue::zero());
    };
    let log = match canon.measure {
        Measure::Standard => canon.log_standard()?,
        Measure::Normalized => canon.log_normalized()?,
    };
    let exact = canon.exact(options.exact_arg_limit)?;
    Ok(IntegralValue::positive(log, exact))
}

fn measure_value<T: Scalar>(n: usize, measure: Measure, region: Region) -> Result<IntegralValue<T>, IntegralError> {
    if n == 0 {
        return Err(IntegralError::ZeroDimension);
    }
    if measure == Measure::Normalized {
        return Ok(IntegralValue::positive(T::zero(), Some(ExactValue::one())));
    }
    let nt = cst::<T>(n as f64);
    let half = nt * cst(0.5);
    let mut log = half * T::PI().ln() - log_gamma(T::one() + half)?;
    if region == Region::Sphere {
        log = log + nt.ln();
    }
    let exact = if (n as u64) + 2 <= DEFAULT_EXACT_ARG_LIMIT {
        Some(exact_region_measure(n as u64, region)?)
    } else {
        None
    };
    Ok(IntegralValue::positive(log, exact))
}

/// `V(𝔅) = π^{n/2}/Γ(1+n/2)` in real dimension `n`; `1` under `ν`.
pub fn ball_volume<T: Scalar>(n: usize, measure: Measure) -> Result<IntegralValue<T>, IntegralError> {
    measure_value(n, measure, Region::Ball)
}

/// `S(𝕊) = n π^{n/2}/Γ(1+n/2)` in real dimension `n`; `1` under `σ`.
pub fn sphere_surface<T: Scalar>(n: usize, measure: Measure) -> Result<IntegralValue<T>, IntegralError> {
    measure_value(n, measure, Region::Sphere)
}

/// Factor taking a normalized value to a Lebesgue one: `S(𝕊)` on the sphere,
/// `V(𝔅)` on the ball and in Gaussian space.
pub fn normalization_constant<T: Scalar>(space: Space, region: Region) -> Result<IntegralValue<T>, IntegralError> {
    match region {
        Region::Sphere => sphere_surface(space.real_dim(), Measure::Standard),
        Region::Ball | Region::Gaussian => ball_volume(space.real_dim(), Measure::Standard),
    }
}
