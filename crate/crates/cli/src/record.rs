//! The machine-readable result of `eval` and `table`, and its inverse.

use serde::{Deserialize, Serialize};
use sbint::{Family, Integrand, IntegralSpec, IntegralValue, Measure, MultiIndex, Region, Space};

use crate::CliError;

/// One evaluated integral. `region` and the integrand kind are carried by the
/// family label; `p` is absent for signed monomials and `alpha` for inner
/// products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub space: String,
    pub dim: usize,
    pub alpha: Option<Vec<u32>>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub anchor_norm: Option<f64>,
    pub measure: String,
    pub value: Option<f64>,
    pub log_value: Option<f64>,
    pub exact: Option<String>,
}

pub fn space_name(space: Space) -> &'static str {
    if space.is_complex() {
        "complex"
    } else {
        "real"
    }
}

pub fn measure_name(measure: Measure) -> &'static str {
    match measure {
        Measure::Standard => "lebesgue",
        Measure::Normalized => "normalized",
    }
}

impl OutputRecord {
    pub fn new(spec: &IntegralSpec, value: &IntegralValue) -> Self {
        let (alpha, p, anchor_norm) = match &spec.integrand {
            Integrand::MonomialAbsPower { alpha, p } => (Some(alpha.entries().to_vec()), Some(*p), None),
            Integrand::InnerProductPower { p, anchor_norm } => (None, Some(*p), Some(*anchor_norm)),
            Integrand::SignedMonomial { alpha } => (Some(alpha.entries().to_vec()), None, None),
        };
        OutputRecord {
            family: Family::label(spec),
            space: space_name(spec.space).into(),
            dim: spec.space.dim(),
            alpha,
            p,
            q: spec.weight(),
            anchor_norm,
            measure: measure_name(spec.measure).into(),
            value: value.value(),
            log_value: value.log_value(),
            exact: value.exact().map(ToString::to_string),
        }
    }

    /// Rebuilds the spec that produced this record. Records labelled
    /// `custom` (odd signed monomials, zero everywhere) come back over the
    /// sphere.
    pub fn to_spec(&self) -> Result<IntegralSpec, CliError> {
        let bad = |what: String| CliError::Usage(format!("malformed record: {what}"));
        let space = match self.space.as_str() {
            "real" => Space::Real(self.dim),
            "complex" => Space::Complex(self.dim),
            other => return Err(bad(format!("space {other:?}"))),
        };
        let measure = match self.measure.as_str() {
            "lebesgue" => Measure::Standard,
            "normalized" => Measure::Normalized,
            other => return Err(bad(format!("measure {other:?}"))),
        };
        let (region, inner) = if self.family == "custom" {
            (Region::Sphere, false)
        } else {
            let family: Family = self.family.parse().map_err(|e| bad(format!("{e}")))?;
            (family.region(), family.inner_product())
        };
        let integrand = match (inner, &self.alpha, self.p) {
            (true, _, Some(p)) => Integrand::inner_product(p, self.anchor_norm.unwrap_or(1.0)),
            (false, Some(alpha), Some(p)) => Integrand::monomial(MultiIndex::from(alpha.clone()), p),
            (false, Some(alpha), None) => Integrand::signed(MultiIndex::from(alpha.clone())),
            _ => return Err(bad("integrand fields".into())),
        };
        Ok(IntegralSpec::new(space, region, integrand, measure).with_q(self.q.unwrap_or(0.0)))
    }

    pub fn to_text(&self) -> String {
        let list = |a: &[u32]| a.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let rows = [
            ("family", self.family.clone()),
            ("space", self.space.clone()),
            ("dim", self.dim.to_string()),
            ("alpha", self.alpha.as_deref().map_or_else(|| "-".into(), list)),
            ("p", sig17(self.p)),
            ("q", sig17(self.q)),
            ("anchor_norm", sig17(self.anchor_norm)),
            ("measure", self.measure.clone()),
            ("value", sig17(self.value)),
            ("log_value", sig17(self.log_value)),
            ("exact", self.exact.clone().unwrap_or_else(|| "-".into())),
        ];
        rows.iter().map(|(k, v)| format!("{k:<12}{v}\n")).collect()
    }
}

/// Seventeen significant digits, `-` when absent.
pub fn sig17(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.16e}"))
}

/// Shortest representation that parses back to the same `f64`.
pub fn shortest(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}
