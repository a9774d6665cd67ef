use std::process::{Command, Output};

use proptest::prelude::*;
use sbint::{evaluate, Family, Integrand, IntegralSpec, Measure, MultiIndex, Region, Space};
use sbint_cli::OutputRecord;

fn sbint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbint")).args(args).env_remove("SBINT_SEED").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_reports_exact_forms() {
    let out = sbint(&["eval", "--format", "json", "--dim", "3", "--region", "ball", "--alpha", "2,1,0", "--p", "2", "--q", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let record: OutputRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record.family, "J3''");
    assert_eq!(record.exact.as_deref(), Some("8/3465·π"));
    assert!((record.value.unwrap() - 8.0 / 3465.0 * std::f64::consts::PI).abs() < 1e-18);
}

#[test]
fn eval_text_output() {
    let out = sbint(&["eval", "--format", "text", "--space", "complex", "--dim", "2", "--region", "sphere", "--inner-product", "--p", "2", "--measure", "normalized"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("K6'''"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("exact") && l.ends_with("1/2")), "{text}");
}

#[test]
fn json_round_trips_through_the_binary() {
    let cases: [&[&str]; 3] = [
        &["--dim", "4", "--region", "ball", "--alpha", "1,0,3,1", "--p", "0.3", "--q", "0.7"],
        &["--space", "complex", "--dim", "3", "--region", "gaussian", "--inner-product", "--p", "2.9", "--anchor-norm", "0.6"],
        &["--dim", "2", "--region", "sphere", "--alpha", "0,1", "--p", "1.1", "--measure", "normalized"],
    ];
    for args in cases {
        let out = sbint(&[&["eval", "--format", "json"][..], args].concat());
        assert_eq!(out.status.code(), Some(0));
        let record: OutputRecord = serde_json::from_str(stdout(&out).trim()).unwrap();
        let value = evaluate(&record.to_spec().unwrap()).unwrap();
        assert_eq!(value.value().map(f64::to_bits), record.value.map(f64::to_bits), "{args:?}");
        assert_eq!(value.log_value().map(f64::to_bits), record.log_value.map(f64::to_bits), "{args:?}");
    }
}

#[test]
fn check_exit_codes() {
    let pass = sbint(&["check", "--dim", "3", "--region", "ball", "--alpha", "1,0,1", "--p", "1", "--q", "0.5", "--samples", "100000"]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    let hybrid = sbint(&["check", "--dim", "2", "--region", "ball", "--alpha", "1,1", "--p", "1", "--q", "-0.5", "--samples", "100000"]);
    assert_eq!(hybrid.status.code(), Some(0));
    assert!(stdout(&hybrid).contains("\"method\":\"hybrid\""));
    // 20 samples with this seed land more than 4 standard errors out.
    let fail = sbint(&["check", "--dim", "2", "--region", "sphere", "--alpha", "1,0", "--p", "1", "--samples", "20", "--seed", "56"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("\"verdict\":\"FAIL\""));
    let divergent = sbint(&["check", "--dim", "2", "--region", "ball", "--alpha", "1,0", "--p", "1", "--q", "-2"]);
    assert_eq!(divergent.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&divergent.stderr).contains("q > -1"));
}

#[test]
fn quadrature_check_passes() {
    let out = sbint(&["check", "--method", "quadrature", "--dim", "2", "--region", "ball", "--inner-product", "--p", "3", "--q", "-0.4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--dim", "2", "--region", "sphere", "--alpha", "1,0", "--p", "1", "--q", "1"][..],
        &["eval", "--family", "J9", "--dim", "2"][..],
        &["eval", "--family", "J3", "--dim", "2", "--region", "sphere", "--alpha", "1,0", "--p", "1"][..],
        &["check", "--threads", "0", "--dim", "2", "--region", "sphere", "--alpha", "1,0", "--p", "1"][..],
        &["eval", "--dim", "2"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(sbint(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn table_of_integer_ball_family() {
    let out = sbint(&["table", "--family", "K8'''", "--dim", "1..3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let exact = headers.iter().position(|h| h == "exact").unwrap();
    let got: Vec<String> = rows.records().map(|r| r.unwrap()[exact].to_string()).collect();
    assert_eq!(got, ["1/2", "1/3", "1/4"]);

    let empty = sbint(&["table", "--family", "K8'''", "--dim", "3..1"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty).lines().count(), 1);
}

#[test]
fn table_json_lines() {
    let out = sbint(&["table", "--format", "json", "--family", "J2", "--dim", "2,3", "--p", "0.5,1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<OutputRecord> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.family == "J2" && r.alpha.as_ref().unwrap()[0] == 1));
}

#[test]
fn asymptote_verbs() {
    let out = sbint(&["asymptote", "--format", "json", "--space", "complex", "--dim", "3", "--region", "ball", "--inner-product", "--limit", "p", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["family"], "K8");
    assert_eq!(report["exponent"], "-3");
    assert_eq!(report["verdict"], "PASS");

    let real = sbint(&["asymptote", "--format", "json", "--dim", "2", "--region", "ball", "--inner-product", "--limit", "p"]);
    let report: serde_json::Value = serde_json::from_str(stdout(&real).trim()).unwrap();
    assert_eq!(report["exponent"], "-3/2");

    let unsupported = sbint(&["asymptote", "--dim", "2", "--region", "gaussian", "--inner-product", "--limit", "p"]);
    assert_eq!(unsupported.status.code(), Some(2));
}

fn arb_spec() -> impl Strategy<Value = IntegralSpec> {
    (
        any::<bool>(),
        1usize..6,
        0usize..4,
        any::<bool>(),
        any::<bool>(),
        prop::collection::vec(0u32..4, 5),
        prop_oneof![(0u32..5).prop_map(|m| 2.0 * f64::from(m)), 0.1f64..7.0],
        prop_oneof![(0u32..4).prop_map(f64::from), 0.1f64..4.0],
    )
        .prop_map(|(complex, dim, region, inner, normalized, alpha, p, q)| {
            let space = if complex { Space::Complex(dim) } else { Space::Real(dim) };
            let integrand = if inner {
                Integrand::inner_product(p, 1.0)
            } else {
                Integrand::monomial(MultiIndex::from(alpha[..space.dim()].to_vec()), p)
            };
            let (region, q) = match region {
                0 => (Region::Gaussian, 0.0),
                1 => (Region::Sphere, 0.0),
                2 => (Region::Ball, 0.0),
                _ => (Region::Ball, q),
            };
            let measure = if normalized { Measure::Normalized } else { Measure::Standard };
            IntegralSpec::new(space, region, integrand, measure).with_q(q)
        })
}

/// Everything a label encodes: space, region, integrand kind, whether a
/// ball is unweighted, the measure and whether p and q are integer-case.
fn label_key(spec: &IntegralSpec) -> (bool, Region, bool, bool, Measure, bool) {
    let (inner, p) = match spec.integrand {
        Integrand::InnerProductPower { p, .. } => (true, p),
        Integrand::MonomialAbsPower { p, .. } => (false, p),
        Integrand::SignedMonomial { .. } => unreachable!(),
    };
    let ball = spec.region == Region::Ball;
    let integer = p % 2.0 == 0.0 && (!ball || spec.q.fract() == 0.0);
    (spec.space.is_complex(), spec.region, inner, ball && spec.q == 0.0, spec.measure, integer)
}

proptest! {
    #[test]
    fn labels_are_injective_on_structure(a in arb_spec(), b in arb_spec()) {
        let (la, lb) = (Family::label(&a), Family::label(&b));
        prop_assert_eq!(label_key(&a) == label_key(&b), la == lb, "{} {:?} vs {} {:?}", la, a, lb, b);
        let parsed: Family = la.parse().unwrap();
        prop_assert_eq!(parsed.region(), a.region);
        prop_assert_eq!(parsed.inner_product(), matches!(a.integrand, Integrand::InnerProductPower { .. }));
    }
}
