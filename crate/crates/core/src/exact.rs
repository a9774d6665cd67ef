//! Exact values of the form `(num/den) · π^(s/2)` with arbitrary-precision
//! integers, and multi-indices.
//!
//! Every integer-parameter integral in this crate reduces to a product of
//! gamma values at integers and half-integers, powers of `π` and a rational
//! anchor power, so this normal form is closed under everything we need.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::special::LogValue;
use crate::{cst, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("exact gamma needs a positive argument, got 2t = {0}")]
    NonPositiveGamma(u64),
    #[error("reciprocal of an exact zero")]
    DivisionByZero,
    #[error("logarithm of a non-positive exact value {0}")]
    NonPositiveLog(String),
    #[error("invalid multi-index {0:?}: expected comma-separated nonnegative integers")]
    ParseMultiIndex(String),
    #[error("{0} is not a finite number")]
    NonFinite(f64),
}

/// `(numerator / denominator) · π^(pi_half_exponent / 2)` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeff: BigRational,
    pi_half_exponent: i64,
}

impl ExactValue {
    pub fn new(numerator: BigInt, denominator: BigInt, pi_half_exponent: i64) -> Result<Self, ExactError> {
        if denominator.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::from_rational(BigRational::new(numerator, denominator), pi_half_exponent))
    }

    pub fn from_rational(coeff: BigRational, pi_half_exponent: i64) -> Self {
        let pi_half_exponent = if coeff.is_zero() { 0 } else { pi_half_exponent };
        ExactValue {
            coeff,
            pi_half_exponent,
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0u32)
    }

    pub fn one() -> Self {
        Self::from_integer(1u32)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), 0)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()), 0)
    }

    /// `π^(s/2)`.
    pub fn pi_power_half(s: i64) -> Self {
        Self::from_rational(BigRational::one(), s)
    }

    /// The exact dyadic rational a finite float represents.
    pub fn from_f64(x: f64) -> Result<Self, ExactError> {
        BigRational::from_float(x)
            .map(|r| Self::from_rational(r, 0))
            .ok_or(ExactError::NonFinite(x))
    }

    pub fn numerator(&self) -> &BigInt {
        self.coeff.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.coeff.denom()
    }

    pub fn pi_half_exponent(&self) -> i64 {
        self.pi_half_exponent
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::from_rational(self.coeff.recip(), -self.pi_half_exponent))
    }

    pub fn checked_div(&self, rhs: &ExactValue) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Self::from_rational(
            num_traits::pow(self.coeff.clone(), exp as usize),
            self.pi_half_exponent * i64::from(exp),
        )
    }

    /// `ln(num/den) + (s/2) ln π` for a positive value.
    pub fn to_log<T: Scalar>(&self) -> Result<LogValue<T>, ExactError> {
        if !self.is_positive() {
            return Err(ExactError::NonPositiveLog(self.to_string()));
        }
        let ln = ln_biguint(self.numerator().magnitude()) - ln_biguint(self.denominator().magnitude())
            + 0.5 * self.pi_half_exponent as f64 * std::f64::consts::PI.ln();
        Ok(LogValue::new(cst(ln)))
    }

    /// Nearest float; `±inf` when out of range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let s = self.pi_half_exponent;
        let direct = self.coeff.to_f64().filter(|c| c.is_normal()).and_then(|c| {
            let pi_part = std::f64::consts::PI.powi(i32::try_from(s.div_euclid(2)).ok()?);
            let half = if s.rem_euclid(2) == 1 { std::f64::consts::PI.sqrt() } else { 1.0 };
            Some(c * pi_part * half).filter(|v| v.is_normal())
        });
        if let Some(v) = direct {
            return v;
        }
        let magnitude = Self::from_rational(self.coeff.abs(), s)
            .to_log::<f64>()
            .map(|l| l.ln().exp())
            .unwrap_or(f64::NAN);
        if self.coeff.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// Natural log of a big unsigned integer, accurate to a few ulps at any size.
fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl Mul for &ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::from_rational(
            &self.coeff * &rhs.coeff,
            self.pi_half_exponent + rhs.pi_half_exponent,
        )
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: ExactValue) -> ExactValue {
        &self * &rhs
    }
}

impl std::iter::Product for ExactValue {
    fn product<I: Iterator<Item = ExactValue>>(iter: I) -> Self {
        iter.fold(ExactValue::one(), |acc, v| acc * v)
    }
}

/// Product of two exact values in normal form.
pub fn exact_mul(a: &ExactValue, b: &ExactValue) -> ExactValue {
    a * b
}

impl fmt::Display for ExactValue {
    /// `num/den·π^k`, dropping unit factors: `4/3·π`, `3/4·π^(1/2)`, `π^2`, `1/60`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let s = self.pi_half_exponent;
        let pi = match s {
            0 => None,
            2 => Some("π".to_string()),
            s if s % 2 == 0 => Some(format!("π^{}", s / 2)),
            s => Some(format!("π^({s}/2)")),
        };
        let coeff = if self.denominator().is_one() {
            self.numerator().to_string()
        } else {
            format!("{}/{}", self.numerator(), self.denominator())
        };
        match pi {
            None => f.write_str(&coeff),
            Some(pi) if self.coeff.is_one() => f.write_str(&pi),
            Some(pi) if (-&self.coeff).is_one() => write!(f, "-{pi}"),
            Some(pi) => write!(f, "{coeff}·{pi}"),
        }
    }
}

fn product_range(lo: u64, hi: u64) -> BigUint {
    // Product of lo..=hi, empty product is 1. Pairwise split keeps the big
    // multiplications balanced.
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        return (lo..=hi).fold(BigUint::one(), |acc, k| acc * k);
    }
    let mid = lo + (hi - lo) / 2;
    product_range(lo, mid) * product_range(mid + 1, hi)
}

pub fn factorial(n: u64) -> BigUint {
    product_range(2, n)
}

/// Exact `Γ(two_t / 2)`: `(k-1)!` at integers, `(2m)!/(4^m m!) √π` at `m + 1/2`.
pub fn exact_gamma_half_integer(two_t: u64) -> Result<ExactValue, ExactError> {
    if two_t == 0 {
        return Err(ExactError::NonPositiveGamma(two_t));
    }
    if two_t.is_multiple_of(2) {
        let k = two_t / 2;
        return Ok(ExactValue::from_integer(BigInt::from_biguint(
            Sign::Plus,
            factorial(k - 1),
        )));
    }
    let m = (two_t - 1) / 2;
    // (2m)!/m! = (m+1)(m+2)…(2m)
    let num = BigInt::from_biguint(Sign::Plus, product_range(m + 1, 2 * m));
    let den = BigInt::one() << (2 * m) as usize;
    Ok(ExactValue::from_rational(BigRational::new(num, den), 1))
}

/// Exact rising factorial `(a)_k` for `a = two_a / 2`.
pub fn exact_pochhammer(two_a: u64, k: u64) -> ExactValue {
    let num = (0..k).fold(BigUint::one(), |acc, i| acc * (two_a + 2 * i));
    let den = BigInt::one() << k as usize;
    ExactValue::from_rational(BigRational::new(BigInt::from_biguint(Sign::Plus, num), den), 0)
}

/// Multi-index `α = (α₁, …, α_d)` of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    /// The coordinate vector `e_j` of length `len`.
    pub fn unit(len: usize, j: usize) -> Self {
        let mut entries = vec![0; len];
        entries[j] = 1;
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α| = Σ αⱼ`.
    pub fn order(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn scaled(&self, m: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&a| a * m).collect())
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|a| a % 2 == 0)
    }

    /// Zero-padded to `len` entries; `None` if it is already longer.
    pub fn padded(&self, len: usize) -> Option<MultiIndex> {
        (self.0.len() <= len).then(|| {
            let mut entries = self.0.clone();
            entries.resize(len, 0);
            MultiIndex(entries)
        })
    }

    /// `α! = Π αⱼ!`.
    pub fn factorial(&self) -> ExactValue {
        multiindex_factorial(self)
    }
}

pub fn multiindex_factorial(alpha: &MultiIndex) -> ExactValue {
    alpha
        .entries()
        .iter()
        .map(|&a| ExactValue::from_integer(BigInt::from_biguint(Sign::Plus, factorial(a.into()))))
        .product()
}

impl From<Vec<u32>> for MultiIndex {
    fn from(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(ExactError::ParseMultiIndex(s.to_string()));
        }
        trimmed
            .split(',')
            .map(|part| part.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(MultiIndex)
            .map_err(|_| ExactError::ParseMultiIndex(s.to_string()))
    }
}
