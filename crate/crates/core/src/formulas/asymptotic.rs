//! Polynomial growth exponents of the ball and sphere families as `q → ∞` or
//! `p → ∞`.
//!
//! From `Γ(c+a)/Γ(c+b) ∼ c^{a-b}`: with `b₀ = 1/2` (real) or `1` (complex),
//! half-dimension `h` and integrand degree `d`,
//!
//! * ball, `q → ∞`: `-(h + d/2)`
//! * inner product on the sphere, `p → ∞`: `b₀ - h`
//! * inner product on the ball, `p → ∞`: `b₀ - 1 - q - h`
//!
//! each times `|y|^p`. Gaussian integrals grow super-polynomially in `p` and
//! are not covered.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::{evaluate_with, EvalOptions, Integrand, IntegralError, IntegralSpec, Region};
use crate::{cst, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Limit {
    QToInfinity,
    PToInfinity,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::QToInfinity => "q",
            Limit::PToInfinity => "p",
        })
    }
}

/// Evaluation points used to check two-sided boundedness.
pub const BOUNDEDNESS_POINTS: [f64; 4] = [1e3, 1e4, 1e5, 1e6];

/// Growth exponent over any number type; `None` for unsupported families.
///
/// `coordinate_base` is `1/2` in real space and `1` in complex space.
pub fn growth_exponent<R>(
    region: Region,
    inner_product: bool,
    limit: Limit,
    half_dim: R,
    coordinate_base: R,
    degree: R,
    q: R,
) -> Option<R>
where
    R: Num + Clone,
{
    let two = R::one() + R::one();
    match (limit, region, inner_product) {
        (Limit::QToInfinity, Region::Ball, _) => Some(R::zero() - (half_dim + degree / two)),
        (Limit::PToInfinity, Region::Sphere, true) => Some(coordinate_base - half_dim),
        (Limit::PToInfinity, Region::Ball, true) => Some(coordinate_base - R::one() - q - half_dim),
        _ => None,
    }
}

fn unsupported<T: Scalar>(spec: &IntegralSpec<T>, limit: Limit) -> IntegralError {
    let kind = match spec.integrand {
        Integrand::MonomialAbsPower { .. } => "monomial",
        Integrand::InnerProductPower { .. } => "inner-product",
        Integrand::SignedMonomial { .. } => "signed-monomial",
    };
    IntegralError::UnsupportedAsymptotic(format!(
        "no polynomial growth law for the {kind} integral over {:?} as {limit} -> infinity",
        spec.region
    ))
}

fn to_rational<T: Scalar>(x: T) -> BigRational {
    BigRational::from_float(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_default()
}

/// Exact exponent `e` with `value ∼ t^e |y|^p` as the limit variable `t → ∞`.
pub fn asymptotic_exponent<T: Scalar>(spec: &IntegralSpec<T>, limit: Limit) -> Result<BigRational, IntegralError> {
    spec.validate()?;
    let inner = match spec.integrand {
        Integrand::SignedMonomial { .. } => return Err(unsupported(spec, limit)),
        Integrand::InnerProductPower { .. } => true,
        Integrand::MonomialAbsPower { .. } => false,
    };
    let base = if spec.space.is_complex() {
        BigRational::from_integer(1.into())
    } else {
        BigRational::new(1.into(), 2.into())
    };
    let half_dim = BigRational::new((spec.space.real_dim() as i64).into(), 2.into());
    growth_exponent(
        spec.region,
        inner,
        limit,
        half_dim,
        base,
        to_rational(spec.integrand.degree()),
        to_rational(spec.q),
    )
    .ok_or_else(|| unsupported(spec, limit))
}

fn at_limit<T: Scalar>(spec: &IntegralSpec<T>, limit: Limit, t: T) -> IntegralSpec<T> {
    let mut s = spec.clone();
    match limit {
        Limit::QToInfinity => s.q = t,
        Limit::PToInfinity => match &mut s.integrand {
            Integrand::MonomialAbsPower { p, .. } | Integrand::InnerProductPower { p, .. } => *p = t,
            Integrand::SignedMonomial { .. } => {}
        },
    }
    s
}

/// `max/min` of `value(t) · t^{-e} · |y|^{-p}` over `points`, computed in
/// log space.
pub fn growth_ratio_spread<T: Scalar>(spec: &IntegralSpec<T>, limit: Limit, points: &[T]) -> Result<T, IntegralError> {
    let exponent: T = cst(asymptotic_exponent(spec, limit)?.to_f64().unwrap_or(f64::NAN));
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for &t in points {
        let s = at_limit(spec, limit, t);
        let value = evaluate_with(&s, &EvalOptions::float_only())?;
        let Some(log) = value.log_value() else {
            return Err(IntegralError::UnsupportedAsymptotic(
                "integral is identically zero (zero anchor)".into(),
            ));
        };
        let anchor = match s.integrand {
            Integrand::InnerProductPower { p, anchor_norm } if p > T::zero() => p * anchor_norm.ln(),
            _ => T::zero(),
        };
        let scaled = log - exponent * t.ln() - anchor;
        lo = lo.min(scaled);
        hi = hi.max(scaled);
    }
    Ok((hi - lo).exp())
}
