//! Closed-form integrals of `|x^α|^p` and `|⟨x,y⟩|^p` over the unit sphere,
//! the unit ball (with weight `(1-|x|²)^q`) and Gaussian-weighted space, in
//! both `ℝⁿ` and `ℂᴺ`, under Lebesgue and normalized measures.
//!
//! The numeric core is generic over the floating-point scalar (see
//! [`Scalar`]); integer-parameter cases additionally produce an
//! [`ExactValue`], an arbitrary-precision rational times a power of `√π`.
//! The [`oracle`] module provides independent Monte Carlo and quadrature
//! estimates for checking every closed form.
//!
//! Most callers want the `f64` aliases re-exported at the crate root:
//!
//! ```
//! use sbint::{evaluate, Integrand, IntegralSpec, Measure, MultiIndex, Region, Space};
//!
//! // ∫_S |ξ₁|² dS over the unit circle is π.
//! let spec = IntegralSpec::new(
//!     Space::Real(2),
//!     Region::Sphere,
//!     Integrand::monomial(MultiIndex::from(vec![1, 0]), 2.0),
//!     Measure::Standard,
//! );
//! let value = evaluate(&spec).unwrap();
//! assert!((value.value().unwrap() - std::f64::consts::PI).abs() < 1e-14);
//! assert_eq!(value.exact().unwrap().to_string(), "π");
//! ```

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub mod exact;
pub mod family;
pub mod formulas;
pub mod oracle;
pub mod special;

pub use exact::{ExactError, ExactValue, MultiIndex};
pub use family::{Family, PrimeLevel};
pub use formulas::asymptotic::{asymptotic_exponent, growth_ratio_spread, Limit};
pub use formulas::{IntegralError, Magnitude, Measure, Region, Space};
pub use oracle::{Estimate, OracleConfig, OracleError};
pub use special::{LogValue, SpecialError};

/// Floating-point types the numeric core can run on.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Converts an `f64` constant into the working scalar.
#[inline]
pub(crate) fn cst<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Integrand over `f64`.
pub type Integrand = formulas::Integrand<f64>;
/// Integral description over `f64`.
pub type IntegralSpec = formulas::IntegralSpec<f64>;
/// Integral result over `f64`.
pub type IntegralValue = formulas::IntegralValue<f64>;

/// Integrand over `f32`.
pub type Integrand32 = formulas::Integrand<f32>;
/// Integral description over `f32`.
pub type IntegralSpec32 = formulas::IntegralSpec<f32>;
/// Integral result over `f32`.
pub type IntegralValue32 = formulas::IntegralValue<f32>;

/// Evaluates an `f64` integral description. See [`formulas::evaluate`].
pub fn evaluate(spec: &IntegralSpec) -> Result<IntegralValue, IntegralError> {
    formulas::evaluate(spec)
}
