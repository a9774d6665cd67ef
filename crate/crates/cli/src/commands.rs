//! The four verbs.

use std::io::Write;

use serde::Serialize;
use sbint::oracle::{hybrid_estimate, mc_estimate, quadrature_estimate};
use sbint::{
    asymptotic_exponent, evaluate, growth_ratio_spread, Family, Integrand, IntegralSpec, Limit, MultiIndex,
    OracleConfig, Region, Space,
};

use crate::args::{AsymptoteArgs, CheckArgs, Cli, Format, IntRange, LimitKind, Method, SpecArgs, TableArgs};
use crate::record::{measure_name, shortest, sig17, OutputRecord};
use crate::{CliError, Outcome};

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_text(out: &mut dyn Write, rows: &[(&str, String)]) -> Result<(), CliError> {
    for (k, v) in rows {
        writeln!(out, "{k:<16}{v}")?;
    }
    Ok(())
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn eval(cli: &Cli, args: &SpecArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = args.to_spec()?;
    let record = OutputRecord::new(&spec, &evaluate(&spec)?);
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &record)?,
        Format::Text => write!(out, "{}", record.to_text())?,
    }
    Ok(Outcome::Pass)
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub family: String,
    pub method: &'static str,
    pub closed_form: f64,
    pub exact: Option<String>,
    pub estimate: f64,
    pub standard_error: Option<f64>,
    pub z_score: Option<f64>,
    pub relative_error: Option<f64>,
    pub tol: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub verdict: &'static str,
}

/// `|z| ≤ 4` for the random oracles.
pub const Z_LIMIT: f64 = 4.0;

pub fn check(cli: &Cli, args: &CheckArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let spec = args.spec.to_spec()?;
    let value = evaluate(&spec)?;
    let closed = value
        .value()
        .ok_or_else(|| CliError::Usage("closed form overflows f64 and cannot be compared with an estimate".into()))?;
    let method = match args.method {
        Method::Auto if spec.region == Region::Ball && spec.q < 0.0 => Method::Hybrid,
        Method::Auto => Method::Mc,
        m => m,
    };
    let config = OracleConfig {
        samples: cli.samples,
        seed: cli.seed,
        chunk_size: cli.chunk_size,
    };
    let report = match method {
        Method::Quadrature => {
            let estimate = quadrature_estimate(&spec, cli.tol)?;
            let error = if closed == 0.0 {
                estimate.abs()
            } else {
                ((estimate - closed) / closed).abs()
            };
            CheckReport {
                family: Family::label(&spec),
                method: "quadrature",
                closed_form: closed,
                exact: value.exact().map(ToString::to_string),
                estimate,
                standard_error: None,
                z_score: None,
                relative_error: Some(error),
                tol: Some(cli.tol),
                samples: None,
                seed: None,
                verdict: verdict(error <= cli.tol),
            }
        }
        Method::Mc | Method::Hybrid => {
            let run = || {
                if method == Method::Hybrid {
                    hybrid_estimate(&spec, &config, cli.tol)
                } else {
                    mc_estimate(&spec, &config)
                }
            };
            let est = match cli.threads {
                Some(0) => return Err(CliError::Usage("--threads must be positive".into())),
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?
                    .install(run)?,
                None => run()?,
            };
            let z = est.z_score(closed);
            CheckReport {
                family: Family::label(&spec),
                method: if method == Method::Hybrid { "hybrid" } else { "mc" },
                closed_form: closed,
                exact: value.exact().map(ToString::to_string),
                estimate: est.mean,
                standard_error: Some(est.standard_error),
                z_score: Some(z),
                relative_error: None,
                tol: (method == Method::Hybrid).then_some(cli.tol),
                samples: Some(est.samples_used),
                seed: Some(cli.seed),
                verdict: verdict(z.abs() <= Z_LIMIT),
            }
        }
        Method::Auto => unreachable!("auto resolved above"),
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &report)?,
        Format::Text => {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            write_text(
                out,
                &[
                    ("family", report.family.clone()),
                    ("method", report.method.into()),
                    ("closed_form", sig17(Some(report.closed_form))),
                    ("exact", opt(report.exact.clone())),
                    ("estimate", sig17(Some(report.estimate))),
                    ("standard_error", sig17(report.standard_error)),
                    ("z_score", report.z_score.map_or_else(|| "-".into(), |z| format!("{z:.3}"))),
                    ("relative_error", report.relative_error.map_or_else(|| "-".into(), |e| format!("{e:.3e}"))),
                    ("samples", opt(report.samples.map(|s| s.to_string()))),
                    ("seed", opt(report.seed.map(|s| s.to_string()))),
                    ("verdict", report.verdict.into()),
                ],
            )?;
        }
    }
    Ok(if report.verdict == "PASS" { Outcome::Pass } else { Outcome::Fail })
}

pub const TABLE_HEADER: [&str; 10] = ["family", "n_or_N", "alpha", "p", "q", "anchor_norm", "measure", "value", "log_value", "exact"];

fn padded_alpha(alpha: Option<&MultiIndex>, dim: usize) -> Result<MultiIndex, CliError> {
    match alpha {
        _ if dim == 0 => Err(sbint::IntegralError::ZeroDimension.into()),
        None => Ok(MultiIndex::unit(dim, 0)),
        Some(a) => a
            .padded(dim)
            .ok_or_else(|| CliError::Usage(format!("--alpha {a} has more entries than dimension {dim}"))),
    }
}

/// Specs for every parameter combination, in lexicographic order of
/// (dimension, p, q).
pub fn table_specs(args: &TableArgs) -> Result<Vec<IntegralSpec>, CliError> {
    let family = args.family;
    let weighted = matches!(family.number, 3 | 7);
    let usage = |m: String| Err(CliError::Usage(m));
    let (powers, weights): (Vec<f64>, Vec<f64>) = if family.level.integer_case() {
        if !args.p.is_empty() || !args.q.is_empty() {
            return usage(format!("{family} takes --m and --k, not --p and --q"));
        }
        let ms = args.m.clone().unwrap_or(IntRange(vec![1])).0;
        let ks = match (&args.k, weighted, family.unweighted_ball()) {
            (Some(k), true, _) => k.0.clone(),
            (None, true, _) => vec![1],
            (Some(k), false, true) if k.0.iter().all(|&k| k == 0) => vec![0],
            (Some(_), false, _) => return usage(format!("{family} has no free weight exponent")),
            (None, false, _) => vec![0],
        };
        (ms.iter().map(|&m| 2.0 * m as f64).collect(), ks.iter().map(|&k| k as f64).collect())
    } else {
        if args.m.is_some() || args.k.is_some() {
            return usage(format!("{family} takes --p and --q; --m and --k select the integer families"));
        }
        if args.p.is_empty() {
            return usage(format!("{family} needs --p"));
        }
        let mut ps = args.p.clone();
        ps.sort_by(f64::total_cmp);
        ps.dedup();
        let qs = match (args.q.is_empty(), weighted) {
            (false, true) => {
                let mut qs = args.q.clone();
                qs.sort_by(f64::total_cmp);
                qs.dedup();
                qs
            }
            (true, true) => return usage(format!("{family} needs --q")),
            (false, false) => return usage(format!("{family} has no free weight exponent")),
            (true, false) => vec![0.0],
        };
        (ps, qs)
    };
    if family.inner_product() && args.alpha.is_some() {
        return usage(format!("family {family} integrates an inner product and takes no --alpha"));
    }
    let mut specs = Vec::new();
    for &dim in &args.dim.0 {
        let dim = usize::try_from(dim).map_err(|_| CliError::Usage(format!("dimension {dim} is too large")))?;
        let space = if family.complex { Space::Complex(dim) } else { Space::Real(dim) };
        for &p in &powers {
            for &q in &weights {
                let integrand = if family.inner_product() {
                    Integrand::inner_product(p, args.anchor_norm)
                } else {
                    Integrand::monomial(padded_alpha(args.alpha.as_ref(), dim)?, p)
                };
                let spec = IntegralSpec::new(space, family.region(), integrand, family.measure()).with_q(q);
                spec.validate()?;
                if Family::of(&spec) != Some(family) {
                    return usage(format!(
                        "p = {p}, q = {q} in dimension {dim} belongs to {}, not {family}",
                        Family::label(&spec)
                    ));
                }
                specs.push(spec);
            }
        }
    }
    Ok(specs)
}

pub fn table(cli: &Cli, args: &TableArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let specs = table_specs(args)?;
    let records = specs
        .iter()
        .map(|spec| Ok(OutputRecord::new(spec, &evaluate(spec)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    if cli.format == Some(Format::Json) {
        for record in &records {
            write_json(out, record)?;
        }
        return Ok(Outcome::Pass);
    }
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(TABLE_HEADER)?;
    let num = |x: Option<f64>| x.map(shortest).unwrap_or_default();
    for r in &records {
        let alpha = r
            .alpha
            .as_ref()
            .map(|a| a.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .unwrap_or_default();
        csv.write_record([
            r.family.clone(),
            r.dim.to_string(),
            alpha,
            num(r.p),
            num(r.q),
            num(r.anchor_norm),
            r.measure.clone(),
            num(r.value),
            num(r.log_value),
            r.exact.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(Outcome::Pass)
}

#[derive(Debug, Serialize)]
pub struct AsymptoteReport {
    pub family: String,
    pub measure: &'static str,
    pub limit: String,
    pub exponent: String,
    pub exponent_value: f64,
    pub spread: Option<f64>,
    pub verdict: Option<&'static str>,
}

/// Two-sided boundedness allows `max/min ≤ 4` over the check points.
pub const SPREAD_LIMIT: f64 = 4.0;

pub fn asymptote(cli: &Cli, args: &AsymptoteArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let limit = match args.limit {
        LimitKind::Q => Limit::QToInfinity,
        LimitKind::P => Limit::PToInfinity,
    };
    let spec = args.spec.to_limit_spec(1.0)?;
    let exponent = asymptotic_exponent(&spec, limit)?;
    let exponent_value = num_traits::ToPrimitive::to_f64(&exponent).unwrap_or(f64::NAN);
    let spread = if args.verify {
        Some(growth_ratio_spread(&spec, limit, &sbint::formulas::asymptotic::BOUNDEDNESS_POINTS)?)
    } else {
        None
    };
    let report = AsymptoteReport {
        family: Family::label(&spec),
        measure: measure_name(spec.measure),
        limit: limit.to_string(),
        exponent: exponent.to_string(),
        exponent_value,
        spread,
        verdict: spread.map(|s| verdict(s <= SPREAD_LIMIT)),
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &report)?,
        Format::Text => write_text(
            out,
            &[
                ("family", report.family.clone()),
                ("limit", report.limit.clone()),
                ("exponent", report.exponent.clone()),
                ("spread", report.spread.map_or_else(|| "-".into(), |s| format!("{s:.6}"))),
                ("verdict", report.verdict.unwrap_or("-").into()),
            ],
        )?,
    }
    Ok(if report.verdict == Some("FAIL") { Outcome::Fail } else { Outcome::Pass })
}
