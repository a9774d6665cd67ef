//! `J1`…`J8` / `K1`…`K8` labels with prime levels.
//!
//! The number encodes integrand and region (1 Gaussian, 2 sphere, 3 weighted
//! ball, 4 unweighted ball; +4 for inner products), `J`/`K` the space, and the
//! primes the measure and whether the integer-parameter forms apply:
//! `''` and `'''` are the `p = 2m`, `q = k` cases under Lebesgue and
//! normalized measure respectively.

use std::fmt;
use std::str::FromStr;

use crate::formulas::{as_even_integer, as_nonnegative_integer, Integrand, IntegralSpec, Measure, Region};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeLevel {
    Plain,
    Prime,
    Double,
    Triple,
}

impl PrimeLevel {
    pub fn new(measure: Measure, integer_case: bool) -> Self {
        match (integer_case, measure) {
            (false, Measure::Standard) => PrimeLevel::Plain,
            (false, Measure::Normalized) => PrimeLevel::Prime,
            (true, Measure::Standard) => PrimeLevel::Double,
            (true, Measure::Normalized) => PrimeLevel::Triple,
        }
    }

    pub fn measure(self) -> Measure {
        match self {
            PrimeLevel::Plain | PrimeLevel::Double => Measure::Standard,
            PrimeLevel::Prime | PrimeLevel::Triple => Measure::Normalized,
        }
    }

    pub fn integer_case(self) -> bool {
        matches!(self, PrimeLevel::Double | PrimeLevel::Triple)
    }

    fn suffix(self) -> &'static str {
        match self {
            PrimeLevel::Plain => "",
            PrimeLevel::Prime => "'",
            PrimeLevel::Double => "''",
            PrimeLevel::Triple => "'''",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub complex: bool,
    /// 1..=8
    pub number: u8,
    pub level: PrimeLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family {0:?}: expected J1..J8 or K1..K8 followed by up to three primes")]
pub struct UnknownFamily(pub String);

impl Family {
    /// The family a spec belongs to; `None` for integrals outside the catalog
    /// (signed monomials with an odd exponent).
    pub fn of<T: Scalar>(spec: &IntegralSpec<T>) -> Option<Family> {
        let (offset, p_even) = match &spec.integrand {
            Integrand::SignedMonomial { alpha } => {
                if !alpha.all_even() {
                    return None;
                }
                (0, true)
            }
            Integrand::MonomialAbsPower { p, .. } => (0, as_even_integer(*p).is_some()),
            Integrand::InnerProductPower { p, .. } => (4, as_even_integer(*p).is_some()),
        };
        let (region_number, q_ok) = match spec.region {
            Region::Gaussian => (1, true),
            Region::Sphere => (2, true),
            Region::Ball => match as_nonnegative_integer(spec.q) {
                Some(0) => (4, true),
                Some(_) => (3, true),
                None => (3, false),
            },
        };
        Some(Family {
            complex: spec.space.is_complex(),
            number: offset + region_number,
            level: PrimeLevel::new(spec.measure, p_even && q_ok),
        })
    }

    /// Label of a spec, `"custom"` outside the catalog.
    pub fn label<T: Scalar>(spec: &IntegralSpec<T>) -> String {
        Family::of(spec).map_or_else(|| "custom".to_string(), |f| f.to_string())
    }

    pub fn region(self) -> Region {
        match self.number {
            1 | 5 => Region::Gaussian,
            2 | 6 => Region::Sphere,
            _ => Region::Ball,
        }
    }

    pub fn inner_product(self) -> bool {
        self.number >= 5
    }

    /// Families 4 and 8 fix `q = 0`.
    pub fn unweighted_ball(self) -> bool {
        self.number == 4 || self.number == 8
    }

    pub fn measure(self) -> Measure {
        self.level.measure()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.complex { 'K' } else { 'J' };
        write!(f, "{letter}{}{}", self.number, self.level.suffix())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || UnknownFamily(s.to_string());
        let mut chars = s.trim().chars();
        let complex = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('J') => false,
            Some('K') => true,
            _ => return Err(err()),
        };
        let number = chars
            .next()
            .and_then(|c| c.to_digit(10))
            .filter(|d| (1..=8).contains(d))
            .ok_or_else(err)? as u8;
        let mut primes = 0;
        for c in chars {
            primes += match c {
                '\'' | '′' => 1,
                '″' => 2,
                '‴' => 3,
                _ => return Err(err()),
            };
        }
        let level = match primes {
            0 => PrimeLevel::Plain,
            1 => PrimeLevel::Prime,
            2 => PrimeLevel::Double,
            3 => PrimeLevel::Triple,
            _ => return Err(err()),
        };
        Ok(Family { complex, number, level })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::MultiIndex;
    use crate::formulas::Space;

    fn mono(alpha: &[u32], p: f64) -> Integrand<f64> {
        Integrand::monomial(MultiIndex::from(alpha.to_vec()), p)
    }

    #[test]
    fn labels() {
        let j3 = IntegralSpec::ball(Space::Real(3), mono(&[2, 1, 0], 1.5), 1.0, Measure::Standard);
        assert_eq!(Family::label(&j3), "J3");
        let j3_int = IntegralSpec::ball(Space::Real(3), mono(&[2, 1, 0], 2.0), 1.0, Measure::Standard);
        assert_eq!(Family::label(&j3_int), "J3''");
        let j3_norm = j3_int.clone().with_measure(Measure::Normalized);
        assert_eq!(Family::label(&j3_norm), "J3'''");
        let j3_frac_q = j3_int.clone().with_q(0.5).with_measure(Measure::Normalized);
        assert_eq!(Family::label(&j3_frac_q), "J3'");
        let j4 = j3.clone().with_q(0.0);
        assert_eq!(Family::label(&j4), "J4");
        let k6 = IntegralSpec::new(Space::Complex(2), Region::Sphere, Integrand::inner_product(4.0, 1.0), Measure::Normalized);
        assert_eq!(Family::label(&k6), "K6'''");
        let k5 = IntegralSpec::new(Space::Complex(2), Region::Gaussian, Integrand::inner_product(1.0, 1.0), Measure::Standard);
        assert_eq!(Family::label(&k5), "K5");
        let odd = IntegralSpec::<f64>::new(Space::Real(2), Region::Sphere, Integrand::signed(MultiIndex::from(vec![1, 2])), Measure::Standard);
        assert_eq!(Family::label(&odd), "custom");
        let even = IntegralSpec::<f64>::new(Space::Real(2), Region::Sphere, Integrand::signed(MultiIndex::from(vec![2, 2])), Measure::Normalized);
        assert_eq!(Family::label(&even), "J2'''");
    }

    #[test]
    fn parse_round_trip() {
        for complex in [false, true] {
            for number in 1..=8 {
                for level in [PrimeLevel::Plain, PrimeLevel::Prime, PrimeLevel::Double, PrimeLevel::Triple] {
                    let f = Family { complex, number, level };
                    assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
                }
            }
        }
        assert_eq!("K7‴".parse::<Family>().unwrap().to_string(), "K7'''");
        assert_eq!("j6′".parse::<Family>().unwrap().to_string(), "J6'");
        for bad in ["", "J", "J9", "J0", "X3", "J3''''", "J3x"] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
    }

    #[test]
    fn family_properties() {
        let f: Family = "K8'''".parse().unwrap();
        assert!(f.inner_product());
        assert!(f.unweighted_ball());
        assert_eq!(f.region(), Region::Ball);
        assert_eq!(f.measure(), Measure::Normalized);
        assert!(f.level.integer_case());
        let g: Family = "J1'".parse().unwrap();
        assert_eq!(g.region(), Region::Gaussian);
        assert!(!g.inner_product());
    }
}
