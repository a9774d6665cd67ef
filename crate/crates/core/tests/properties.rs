//! Identities that tie the closed forms to each other and to independent
//! numerical routes.

use std::f64::consts::PI;

use proptest::prelude::*;
use sbint::formulas::{evaluate_with, EvalOptions};
use sbint::oracle::quadrature_estimate;
use sbint::special::{log_beta, log_gamma};
use sbint::{
    asymptotic_exponent, evaluate, growth_ratio_spread, Integrand, IntegralSpec, Limit, Measure, MultiIndex,
    Region, Space,
};

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

fn log_value(spec: &IntegralSpec) -> f64 {
    evaluate(spec).unwrap().log_value().unwrap()
}

/// Ball volume by the two-step recursion `V_n = 2π/n · V_{n-2}`, no gamma involved.
fn ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * ball_volume(n - 2),
    }
}

fn sphere_area(n: usize) -> f64 {
    n as f64 * ball_volume(n)
}

fn region_measure(space: Space, region: Region) -> f64 {
    let n = space.real_dim();
    match region {
        Region::Sphere => sphere_area(n),
        Region::Ball | Region::Gaussian => ball_volume(n),
    }
}

fn space() -> impl Strategy<Value = Space> {
    prop_oneof![(1usize..=10).prop_map(Space::Real), (1usize..=5).prop_map(Space::Complex)]
}

fn integrand(space: Space) -> impl Strategy<Value = Integrand> {
    let dim = space.dim();
    prop_oneof![
        (prop::collection::vec(0u32..=3, dim), 0.0f64..5.0)
            .prop_map(|(a, p)| Integrand::monomial(MultiIndex::new(a), p)),
        (0.0f64..6.0, 0.1f64..3.0).prop_map(|(p, r)| Integrand::inner_product(p, r)),
    ]
}

fn any_spec() -> impl Strategy<Value = IntegralSpec> {
    space().prop_flat_map(|s| {
        (
            integrand(s),
            prop_oneof![Just(Region::Gaussian), Just(Region::Sphere), Just(Region::Ball)],
            -0.9f64..5.0,
        )
            .prop_map(move |(f, region, q)| {
                let spec = IntegralSpec::new(s, region, f, Measure::Standard);
                if region == Region::Ball {
                    spec.with_q(q)
                } else {
                    spec
                }
            })
    })
}

/// Monomial specs with a real-valued (often non-integer) power.
fn monomial_spec() -> impl Strategy<Value = (Space, MultiIndex, f64)> {
    space().prop_flat_map(|s| {
        (prop::collection::vec(0u32..=3, s.dim()), 0.0f64..5.0).prop_map(move |(a, p)| (s, MultiIndex::new(a), p))
    })
}

fn homogeneous_dim(space: Space, degree: f64) -> f64 {
    space.real_dim() as f64 + degree
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn measure_bridge(spec in any_spec()) {
        let standard = log_value(&spec);
        let normalized = log_value(&spec.clone().with_measure(Measure::Normalized));
        let bridged = normalized + region_measure(spec.space, spec.region).ln();
        prop_assert!(rel(bridged.exp(), standard.exp()) < 1e-12, "{spec:?}");
    }

    #[test]
    fn radial_factorization((s, alpha, p) in monomial_spec(), q in -0.9f64..6.0) {
        let f = Integrand::monomial(alpha, p);
        let sphere = evaluate(&IntegralSpec::new(s, Region::Sphere, f.clone(), Measure::Standard)).unwrap();
        let ball = evaluate(&IntegralSpec::ball(s, f.clone(), q, Measure::Standard)).unwrap();
        let a = 0.5 * homogeneous_dim(s, f.degree());
        let expected = sphere.log_value().unwrap() + log_beta(a, 1.0 + q).unwrap() - 2f64.ln();
        prop_assert!(rel(ball.log_value().unwrap().exp(), expected.exp()) < 1e-12);
    }

    #[test]
    fn inner_product_radial_factorization(s in space(), p in 0.0f64..8.0, rho in 0.1f64..3.0, q in -0.9f64..6.0) {
        let f = Integrand::inner_product(p, rho);
        let sphere = log_value(&IntegralSpec::new(s, Region::Sphere, f.clone(), Measure::Standard));
        let ball = log_value(&IntegralSpec::ball(s, f, q, Measure::Standard));
        let a = 0.5 * homogeneous_dim(s, p);
        let expected = sphere + log_beta(a, 1.0 + q).unwrap() - 2f64.ln();
        prop_assert!(rel(ball.exp(), expected.exp()) < 1e-12);
    }

    #[test]
    fn gaussian_consistency((s, alpha, p) in monomial_spec()) {
        let f = Integrand::monomial(alpha, p);
        let gaussian = log_value(&IntegralSpec::new(s, Region::Gaussian, f.clone(), Measure::Standard));
        let sphere = log_value(&IntegralSpec::new(s, Region::Sphere, f.clone(), Measure::Standard));
        let a = 0.5 * homogeneous_dim(s, f.degree());
        let expected = sphere + log_gamma(a).unwrap() - 2f64.ln();
        prop_assert!(rel(gaussian.exp(), expected.exp()) < 1e-12);
    }

    #[test]
    fn q_to_zero_is_the_unweighted_ball((s, alpha, p) in monomial_spec()) {
        // ∫_B |x^α|^p dV = C·∏Γ(b + eⱼ/2) / Γ(1 + n/2 + |α|p/2), with C = 1 or π^N.
        let (base, c) = match s {
            Space::Real(_) => (0.5, 0.0),
            Space::Complex(n) => (1.0, n as f64 * PI.ln()),
        };
        let log_num: f64 = alpha.entries().iter()
            .map(|&a| log_gamma(base + 0.5 * f64::from(a) * p).unwrap())
            .sum();
        let degree = f64::from(alpha.order() as u32) * p;
        let expected = c + log_num - log_gamma(1.0 + 0.5 * homogeneous_dim(s, degree)).unwrap();
        let spec = IntegralSpec::ball(s, Integrand::monomial(alpha, p), 0.0, Measure::Standard);
        let got = log_value(&spec);
        prop_assert!(rel(got.exp(), expected.exp()) < 1e-13, "{got} vs {expected}");
        let nearby = log_value(&spec.clone().with_q(1e-9));
        prop_assert!((nearby - got).abs() < 1e-8);
    }

    #[test]
    fn exact_matches_float(spec in any_spec(), m in 0u32..6, k in 0u32..6, normalized in any::<bool>()) {
        let spec = {
            let mut spec = spec.with_measure(if normalized { Measure::Normalized } else { Measure::Standard });
            spec.integrand = match spec.integrand {
                Integrand::MonomialAbsPower { alpha, .. } => Integrand::monomial(alpha, 2.0 * f64::from(m)),
                Integrand::InnerProductPower { anchor_norm, .. } => Integrand::inner_product(2.0 * f64::from(m), anchor_norm),
                other => other,
            };
            if spec.region == Region::Ball { spec.with_q(f64::from(k)) } else { spec }
        };
        let value = evaluate(&spec).unwrap();
        let exact = value.exact().expect("integer parameters yield an exact form");
        let float = evaluate_with(&spec, &EvalOptions::float_only()).unwrap();
        prop_assert!(float.exact().is_none());
        prop_assert!(rel(exact.to_f64(), float.value().unwrap()) < 1e-12, "{spec:?}: {exact}");
    }

    #[test]
    fn inner_product_p_zero_is_region_measure(s in space(), rho in prop_oneof![Just(0.0), 0.0f64..5.0]) {
        for region in [Region::Sphere, Region::Ball, Region::Gaussian] {
            let spec = IntegralSpec::new(s, region, Integrand::inner_product(0.0, rho), Measure::Standard);
            let expected = match region {
                Region::Gaussian => PI.powf(0.5 * s.real_dim() as f64),
                _ => region_measure(s, region),
            };
            prop_assert!(rel(evaluate(&spec).unwrap().value().unwrap(), expected) < 1e-13);
            let normalized = evaluate(&spec.with_measure(Measure::Normalized)).unwrap();
            if region != Region::Gaussian {
                prop_assert!(rel(normalized.value().unwrap(), 1.0) < 1e-13);
            }
        }
    }

    #[test]
    fn anchor_scaling(spec in any_spec(), rho in 0.01f64..10.0) {
        let Integrand::InnerProductPower { p, .. } = spec.integrand else { return Ok(()) };
        let at = |r: f64| {
            let mut s = spec.clone();
            s.integrand = Integrand::inner_product(p, r);
            evaluate(&s).unwrap().value().unwrap()
        };
        prop_assert!(rel(at(2.0 * rho), at(rho) * 2f64.powf(p)) < 1e-13);
    }
}

#[test]
fn zero_anchor_gives_exact_zero() {
    let spec = IntegralSpec::new(Space::Real(3), Region::Sphere, Integrand::inner_product(1.5, 0.0), Measure::Standard);
    let value = evaluate(&spec).unwrap();
    assert!(value.is_zero());
    assert_eq!(value.value(), Some(0.0));
    assert_eq!(value.log_value(), None);
}

#[test]
fn asymptotic_boundedness_across_families() {
    let mut cases = Vec::new();
    for space in [Space::Real(1), Space::Real(2), Space::Real(5), Space::Complex(1), Space::Complex(3)] {
        let dim = space.dim();
        let alpha = MultiIndex::new((0..dim).map(|j| (j % 3) as u32).collect());
        for measure in [Measure::Standard, Measure::Normalized] {
            for p in [0.0, 1.0, 2.0, 3.5] {
                cases.push((IntegralSpec::ball(space, Integrand::monomial(alpha.clone(), p), 1.0, measure), Limit::QToInfinity));
                cases.push((IntegralSpec::ball(space, Integrand::inner_product(p, 1.5), 1.0, measure), Limit::QToInfinity));
            }
            for q in [0.0, 0.5, 3.0] {
                cases.push((IntegralSpec::ball(space, Integrand::inner_product(1.0, 1.0), q, measure), Limit::PToInfinity));
            }
            cases.push((IntegralSpec::new(space, Region::Sphere, Integrand::inner_product(1.0, 0.7), measure), Limit::PToInfinity));
        }
    }
    for (spec, limit) in cases {
        asymptotic_exponent(&spec, limit).unwrap();
        let spread = growth_ratio_spread(&spec, limit, &[1e3, 1e4, 1e5, 1e6]).unwrap();
        assert!((1.0..=4.0).contains(&spread), "{spec:?} {limit}: {spread}");
    }
}

#[test]
fn complex_monomials_are_not_real_ones() {
    let real = IntegralSpec::new(
        Space::Real(2),
        Region::Sphere,
        Integrand::monomial(MultiIndex::from(vec![2, 0]), 1.0),
        Measure::Standard,
    );
    let complex = IntegralSpec::new(
        Space::Complex(1),
        Region::Sphere,
        Integrand::monomial(MultiIndex::from(vec![2]), 1.0),
        Measure::Standard,
    );
    let real_quad = quadrature_estimate(&real, 1e-12).unwrap();
    let complex_quad = quadrature_estimate(&complex, 1e-12).unwrap();
    assert!(rel(real_quad, PI) < 1e-11);
    assert!(rel(complex_quad, 2.0 * PI) < 1e-11);
    assert!(rel(evaluate(&real).unwrap().value().unwrap(), real_quad) < 1e-11);
    assert!(rel(evaluate(&complex).unwrap().value().unwrap(), complex_quad) < 1e-11);
}

fn low_dim_grid() -> Vec<IntegralSpec> {
    let mut specs = Vec::new();
    let spaces = [
        (Space::Real(1), vec![vec![0], vec![1], vec![3]]),
        (Space::Real(2), vec![vec![0, 0], vec![1, 0], vec![1, 2]]),
        (Space::Complex(1), vec![vec![0], vec![1], vec![2]]),
    ];
    for (space, alphas) in spaces {
        for alpha in alphas {
            for p in [0.5, 1.0, 2.0, 3.3] {
                let f = Integrand::monomial(MultiIndex::from(alpha.clone()), p);
                specs.push(IntegralSpec::new(space, Region::Sphere, f.clone(), Measure::Standard));
                specs.push(IntegralSpec::ball(space, f.clone(), 1.5, Measure::Normalized));
                specs.push(IntegralSpec::new(space, Region::Gaussian, f, Measure::Standard));
            }
        }
        for p in [0.7, 2.0, 5.0] {
            specs.push(IntegralSpec::ball(space, Integrand::inner_product(p, 1.3), 0.25, Measure::Standard));
        }
    }
    specs
}

fn deviation(spec: &IntegralSpec, tol: f64) -> f64 {
    let closed = evaluate(spec).unwrap().value().unwrap();
    rel(quadrature_estimate(spec, tol).unwrap(), closed)
}

fn assert_non_increasing(spec: &IntegralSpec, tols: &[f64]) {
    let mut previous = f64::INFINITY;
    for &tol in tols {
        let d = deviation(spec, tol);
        assert!(d <= tol, "{spec:?} at {tol}: {d}");
        // The closed form itself carries ~1e-15 of rounding error.
        assert!(d <= previous.max(1e-14), "{spec:?} at {tol}: {d} > {previous}");
        previous = d;
    }
}

const HALVINGS: [f64; 12] = [1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5, 3.125e-5, 1.5625e-5, 7.8125e-6, 3.90625e-6, 1.953125e-6, 9.765625e-7, 4.8828125e-7];
const DECADES: [f64; 8] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10];

#[test]
fn single_integrals_never_lose_accuracy_when_tol_halves() {
    for spec in low_dim_grid().iter().filter(|s| s.region == Region::Sphere) {
        assert_non_increasing(spec, &HALVINGS);
        assert_non_increasing(spec, &DECADES);
    }
}

/// Ball and Gaussian values combine two adaptive integrals whose errors can
/// partly cancel, so a tighter tolerance may land slightly further from the
/// closed form. Every result still honours its own tolerance.
#[test]
fn composite_integrals_stay_within_tol() {
    for spec in low_dim_grid().iter().filter(|s| s.region != Region::Sphere) {
        for &tol in HALVINGS.iter().chain(&DECADES) {
            let d = deviation(spec, tol);
            assert!(d <= tol, "{spec:?} at {tol}: {d}");
        }
    }
}
