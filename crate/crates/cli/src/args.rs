//! Command-line grammar and the translation of spec flags into an
//! [`IntegralSpec`].

use std::fmt::Debug;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sbint::{Family, Integrand, IntegralSpec, Measure, MultiIndex, Region, Space};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "sbint", version, about = "Closed-form integrals over spheres, balls and Gaussian space, with independent checks")]
pub struct Cli {
    /// Output format; `table` writes CSV unless `json` is requested.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for Monte Carlo checks.
    #[arg(long, global = true, env = "SBINT_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Relative tolerance for quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Worker threads for Monte Carlo; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Samples per random stream.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    pub chunk_size: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a closed form.
    Eval(SpecArgs),
    /// Compare a closed form with an independent oracle.
    Check(CheckArgs),
    /// Tabulate a family over parameter ranges as CSV.
    Table(TableArgs),
    /// Growth exponent as q or p tends to infinity.
    Asymptote(AsymptoteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    Gaussian,
    Sphere,
    Ball,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Lebesgue,
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Mc,
    Quadrature,
    Hybrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Q,
    P,
}

impl From<RegionKind> for Region {
    fn from(r: RegionKind) -> Self {
        match r {
            RegionKind::Gaussian => Region::Gaussian,
            RegionKind::Sphere => Region::Sphere,
            RegionKind::Ball => Region::Ball,
        }
    }
}

impl From<MeasureKind> for Measure {
    fn from(m: MeasureKind) -> Self {
        match m {
            MeasureKind::Lebesgue => Measure::Standard,
            MeasureKind::Normalized => Measure::Normalized,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Catalog label such as J3 or K7''' standing for space, region, integrand and measure.
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long, value_enum)]
    pub space: Option<SpaceKind>,
    /// n in real space, N in complex space.
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum)]
    pub region: Option<RegionKind>,
    /// Comma-separated exponents, one per coordinate.
    #[arg(long)]
    pub alpha: Option<MultiIndex>,
    /// Integrate |<x, y>|^p instead of a monomial.
    #[arg(long, conflicts_with = "signed")]
    pub inner_product: bool,
    /// Integrate x^alpha without absolute value.
    #[arg(long)]
    pub signed: bool,
    #[arg(long = "p", allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Ball weight exponent in (1 - |x|^2)^q.
    #[arg(long = "q", allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// |y| for inner products.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub anchor_norm: f64,
    #[arg(long, value_enum)]
    pub measure: Option<MeasureKind>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoteArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum)]
    pub limit: LimitKind,
    /// Also report max/min of value(t)·t^-e over t = 1e3..1e6.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub family: Family,
    /// Dimensions, e.g. `3`, `1..4` or `2,5`.
    #[arg(long)]
    pub dim: IntRange,
    /// Exponents for monomial families; zero-padded to each dimension.
    #[arg(long)]
    pub alpha: Option<MultiIndex>,
    /// p = 2m for the integer families.
    #[arg(long)]
    pub m: Option<IntRange>,
    /// q = k for the integer ball families.
    #[arg(long)]
    pub k: Option<IntRange>,
    /// Powers for the other families, comma-separated.
    #[arg(long = "p", value_delimiter = ',')]
    pub p: Vec<f64>,
    /// Weights for the other ball families, comma-separated.
    #[arg(long = "q", value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub anchor_norm: f64,
}

/// Sorted, deduplicated nonnegative integers from `a..b` (inclusive), `a`,
/// or `a,b,c`. A range with `b < a` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange(pub Vec<u64>);

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid integer {t:?} in range {s:?}"));
        let mut values = if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            (a..=b).collect()
        } else {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        };
        values.sort_unstable();
        values.dedup();
        Ok(IntRange(values))
    }
}

/// Settles a parameter fixed both by a flag and by `--family`.
fn agree<T: PartialEq + Debug>(name: &str, explicit: Option<T>, implied: Option<T>, family: Option<Family>) -> Result<Option<T>, CliError> {
    match (explicit, implied) {
        (Some(e), Some(i)) if e != i => Err(CliError::Usage(format!(
            "--{name} {e:?} contradicts family {}",
            family.map(|f| f.to_string()).unwrap_or_default()
        ))),
        (Some(e), _) => Ok(Some(e)),
        (None, i) => Ok(i),
    }
}

impl SpecArgs {
    /// Builds and validates the spec; with `--family` the parameters must
    /// land in exactly that family.
    pub fn to_spec(&self) -> Result<IntegralSpec, CliError> {
        let spec = self.build(None)?;
        self.check_family(&spec, true)?;
        Ok(spec)
    }

    /// Like [`SpecArgs::to_spec`] but fills a missing `p` and ignores the
    /// prime level, whose integer part depends on the parameter sent to
    /// infinity.
    pub fn to_limit_spec(&self, default_p: f64) -> Result<IntegralSpec, CliError> {
        let spec = self.build(Some(default_p))?;
        self.check_family(&spec, false)?;
        Ok(spec)
    }

    fn build(&self, default_p: Option<f64>) -> Result<IntegralSpec, CliError> {
        let family = self.family;
        let space_kind = agree(
            "space",
            self.space,
            family.map(|f| if f.complex { SpaceKind::Complex } else { SpaceKind::Real }),
            family,
        )?
        .unwrap_or(SpaceKind::Real);
        let region: Region = agree("region", self.region.map(Region::from), family.map(Family::region), family)?
            .ok_or_else(|| CliError::Usage("--region (or --family) is required".into()))?;
        let measure = agree("measure", self.measure.map(Measure::from), family.map(Family::measure), family)?
            .unwrap_or(Measure::Standard);
        let inner = match family {
            Some(f) if self.inner_product && !f.inner_product() => {
                return Err(CliError::Usage(format!("--inner-product contradicts monomial family {f}")))
            }
            Some(f) if f.inner_product() && (self.alpha.is_some() || self.signed) => {
                return Err(CliError::Usage(format!("family {f} integrates an inner product and takes no --alpha")))
            }
            Some(f) => f.inner_product(),
            None => self.inner_product,
        };
        let space = match space_kind {
            SpaceKind::Real => Space::Real(self.dim),
            SpaceKind::Complex => Space::Complex(self.dim),
        };
        let p = self.p.or(default_p);
        let integrand = if inner {
            if self.alpha.is_some() {
                return Err(CliError::Usage("--alpha does not apply to --inner-product".into()));
            }
            let p = p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
            Integrand::inner_product(p, self.anchor_norm)
        } else {
            let alpha = self
                .alpha
                .clone()
                .ok_or_else(|| CliError::Usage("--alpha is required for monomial integrands".into()))?;
            if self.signed {
                if self.p.is_some() {
                    return Err(CliError::Usage("--signed integrates x^alpha and takes no --p".into()));
                }
                Integrand::signed(alpha)
            } else {
                let p = p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
                Integrand::monomial(alpha, p)
            }
        };
        let q = match region {
            Region::Ball => {
                let fixed = family.filter(|f| f.unweighted_ball()).map(|_| 0.0);
                agree("q", self.q, fixed, family)?.unwrap_or(0.0)
            }
            _ if self.q.is_some() => {
                return Err(CliError::Usage("--q applies only to --region ball".into()));
            }
            _ => 0.0,
        };
        let spec = IntegralSpec::new(space, region, integrand, measure).with_q(q);
        spec.validate()?;
        Ok(spec)
    }

    fn check_family(&self, spec: &IntegralSpec, strict: bool) -> Result<(), CliError> {
        let Some(requested) = self.family else { return Ok(()) };
        let actual = Family::of(spec);
        let matches = actual.is_some_and(|a| {
            if strict {
                a == requested
            } else {
                a.complex == requested.complex && a.measure() == requested.measure()
            }
        });
        if matches {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "parameters describe {}, not {requested}",
                Family::label(spec)
            )))
        }
    }
}
