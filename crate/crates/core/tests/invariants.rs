//! Cross-module properties: evaluation against hand-coded twins, symbolic
//! derivatives against finite differences, quadrature against closed-form
//! tails, and the bounding inequalities against catalog oracles.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use series_bounds::catalog::{self, CatalogEntry, ClosedSum};
use series_bounds::expr::{parse, tokenize, Expr};
use series_bounds::quadrature::{integrate_finite, integrate_tail, QuadConfig};
use series_bounds::{
    adaptive_bounds, integral_bounds_from_series, refined_bounds, triple_bounds, verify_sandwich,
};

fn entry(name: &str, params: &[(&str, f64)]) -> CatalogEntry {
    let params: Vec<(String, f64)> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    catalog::lookup(name, &params).unwrap()
}

/// Containment with a 1e-12 guard below and a few-ulp guard above; the
/// closed-form oracle carries last-ulp roundoff of its own, which shows
/// once an interval collapses to sub-ulp width.
fn contains(lower: f64, upper: f64, value: f64) -> bool {
    lower - 1e-12 <= value && value <= upper + 4.0 * f64::EPSILON * upper.abs()
}

/// Catalog instances whose tails certify at the default tolerance.
fn certifiable_entries() -> Vec<CatalogEntry> {
    vec![
        entry("p_series", &[("p", 2.0)]),
        entry("p_series", &[("p", 3.0)]),
        entry("shifted_quadratic", &[("a", 2.0)]),
        entry("shifted_quadratic", &[("a", 0.5)]),
        entry("exponential", &[("a", 1.0)]),
        entry("exponential", &[("a", 0.1)]),
    ]
}

// ---------------------------------------------------------------------------
// expression language
// ---------------------------------------------------------------------------

#[test]
fn parsed_expressions_agree_with_hand_coded_twins() {
    type Twin = fn(f64) -> f64;
    let corpus: Vec<(&str, Twin)> = vec![
        ("1/(x^2+4)", |x| 1.0 / (x * x + 4.0)),
        ("2^-x", |x| 2.0f64.powf(-x)),
        ("exp(-0.5*x)", |x| (-0.5 * x).exp()),
        ("ln(x+1)/x", |x| (x + 1.0).ln() / x),
        ("sqrt(x)*atan(x)", |x| x.sqrt() * x.atan()),
        ("sin(x)+cos(x)", |x| x.sin() + x.cos()),
        ("abs(-x)", |x| x.abs()),
        ("-x^2 + x*x", |_| 0.0),
        ("(x+1)*(x-1)/(x*x)", |x| (x * x - 1.0) / (x * x)),
        ("2^3^2 + x", |x| 512.0 + x),
        ("x^1.5", |x| x.powf(1.5)),
        ("1/x^2", |x| 1.0 / (x * x)),
    ];
    let mut rng = StdRng::seed_from_u64(0x5e1f);
    for (text, twin) in corpus {
        let expr = Expr::parse_str(text).unwrap();
        for _ in 0..100 {
            let x = rng.gen_range(1.0..100.0);
            let got = expr.eval(x).unwrap();
            let want = twin(x);
            let scale = want.abs().max(got.abs()).max(1.0);
            assert!(
                (got - want).abs() <= 1e-12 * scale,
                "{text} at x = {x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn catalog_derivatives_match_central_differences() {
    let mut rng = StdRng::seed_from_u64(0xd1ff);
    for e in [
        entry("p_series", &[("p", 2.5)]),
        entry("shifted_quadratic", &[("a", 2.0)]),
        entry("exponential", &[("a", 0.7)]),
        entry("harmonic", &[]),
    ] {
        let derivative = e.expr.differentiate();
        for _ in 0..20 {
            let x: f64 = rng.gen_range(1.0..50.0);
            let h = 1e-5 * x.abs().max(1.0);
            let fd = (e.term(x + h) - e.term(x - h)) / (2.0 * h);
            let sym = derivative.eval(x).unwrap();
            let scale = fd.abs().max(sym.abs()).max(1e-300);
            assert!(
                (sym - fd).abs() <= 1e-5 * scale,
                "{} at x = {x}: symbolic {sym} vs finite difference {fd}",
                e.name
            );
        }
    }
}

proptest! {
    // Totality: any input yields tokens+tree or a structured error, never
    // a panic or crash.
    #[test]
    fn parser_is_total_on_arbitrary_text(input in ".*") {
        if let Ok(tokens) = tokenize(&input) {
            let _ = parse(&tokens);
        }
    }

    // Same, restricted to the grammar's alphabet so the parser is hit
    // far more often.
    #[test]
    fn parser_is_total_on_grammar_alphabet(input in "[-+*/^(), .0-9a-z]{0,64}") {
        if let Ok(tokens) = tokenize(&input) {
            let _ = parse(&tokens);
        }
    }
}

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

#[test]
fn tails_agree_with_closed_forms_within_reported_error() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        for n in [1.0, 2.0, 5.0, 10.0, 100.0] {
            let tail = integrate_tail(&e.term_fn(), n, &cfg).unwrap();
            let exact = e.closed_tail(n).unwrap();
            assert!(tail.converged, "{} n = {n}", e.name);
            assert!(tail.abs_error_estimate <= cfg.abs_tol, "{} n = {n}", e.name);
            assert!(
                (tail.value - exact).abs() <= tail.abs_error_estimate + 1e-15,
                "{} n = {n}: {} vs {exact} (est {})",
                e.name,
                tail.value,
                tail.abs_error_estimate
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn finite_integrals_are_additive(
        raw in prop::array::uniform3(1.0f64..50.0),
        which in 0usize..3,
    ) {
        let mut points = raw;
        points.sort_by(f64::total_cmp);
        let [a, b, c] = points;
        let entries = [
            entry("p_series", &[("p", 2.0)]),
            entry("shifted_quadratic", &[("a", 2.0)]),
            entry("exponential", &[("a", 0.5)]),
        ];
        let f = entries[which].term_fn();
        let cfg = QuadConfig::default();
        let whole = integrate_finite(&f, a, c, &cfg).unwrap();
        let left = integrate_finite(&f, a, b, &cfg).unwrap();
        let right = integrate_finite(&f, b, c, &cfg).unwrap();
        let slack = whole.abs_error_estimate
            + left.abs_error_estimate
            + right.abs_error_estimate
            + 1e-13;
        prop_assert!((whole.value - (left.value + right.value)).abs() <= slack);
    }
}

#[test]
fn tail_values_decrease_as_the_start_moves_out() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        let mut prev = integrate_tail(&e.term_fn(), 1.0, &cfg).unwrap();
        for n in 2..=20 {
            let next = integrate_tail(&e.term_fn(), n as f64, &cfg).unwrap();
            let slack = prev.abs_error_estimate + next.abs_error_estimate;
            assert!(
                next.value <= prev.value + slack,
                "{} n = {n}: {} then {}",
                e.name,
                prev.value,
                next.value
            );
            prev = next;
        }
    }
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

fn known_sum_entries() -> Vec<(CatalogEntry, f64)> {
    let mut out = Vec::new();
    for e in [
        entry("p_series", &[("p", 2.0)]),
        entry("shifted_quadratic", &[("a", 2.0)]),
        entry("shifted_quadratic", &[("a", 1.0)]),
        entry("exponential", &[("a", std::f64::consts::LN_2)]),
        entry("exponential", &[("a", 1.0)]),
        entry("exponential", &[("a", 0.25)]),
    ] {
        match e.closed_sum() {
            ClosedSum::Value(s) => out.push((e, s)),
            other => panic!("expected a known sum for {}, got {other:?}", e.name),
        }
    }
    out
}

#[test]
fn refined_intervals_contain_known_sums() {
    let cfg = QuadConfig::default();
    for (e, sum) in known_sum_entries() {
        for n in [1u64, 2, 3, 5, 10, 100, 1000] {
            let b = refined_bounds(&e.term_fn(), n, &cfg).unwrap();
            assert!(!b.diverged, "{} n = {n}", e.name);
            assert!(
                contains(b.lower, b.upper, sum),
                "{} n = {n}: {sum} outside [{}, {}]",
                e.name,
                b.lower,
                b.upper
            );
        }
    }
}

#[test]
fn refined_intervals_nest_as_n_doubles() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        let mut n = 1u64;
        let mut prev = refined_bounds(&e.term_fn(), n, &cfg).unwrap();
        while n <= 32 {
            n *= 2;
            let next = refined_bounds(&e.term_fn(), n, &cfg).unwrap();
            let slack = 2.0 * prev.quad_error.max(next.quad_error) + 1e-12;
            assert!(
                next.lower >= prev.lower - 1e-12,
                "{} n = {n}: lower went backwards",
                e.name
            );
            assert!(
                next.upper <= prev.upper + slack,
                "{} n = {n}: upper grew past slack",
                e.name
            );
            prev = next;
        }
    }
}

#[test]
fn triple_and_refined_at_one_are_consistent() {
    let cfg = QuadConfig::default();
    for (e, sum) in known_sum_entries() {
        let t = triple_bounds(&e.term_fn(), &cfg).unwrap();
        let r = refined_bounds(&e.term_fn(), 1, &cfg).unwrap();
        let slack = 2.0 * (t.quad_error + r.quad_error);
        // both are built from I and f(1): the upper endpoints coincide and
        // the triple lower (which may take the integral side) is at least
        // the refined lower S_1 = f(1)
        assert!((t.upper - r.upper).abs() <= slack, "{}", e.name);
        assert!(t.lower >= r.lower - 1e-12, "{}", e.name);
        assert!(contains(t.lower, t.upper, sum), "{}", e.name);
        assert!(contains(r.lower, r.upper, sum), "{}", e.name);
    }
}

#[test]
fn sandwich_holds_for_all_certifiable_entries() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        for n in 2..=50 {
            let report = verify_sandwich(&e.term_fn(), n, &cfg).unwrap();
            assert!(
                report.holds,
                "{} n = {n}: s_inf {} <= int {} <= s_sup {} failed",
                e.name, report.s_inf, report.integral_1_to_n, report.s_sup
            );
        }
    }
}

#[test]
fn refined_width_equals_tail_integral_within_error() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        for n in [1u64, 4, 16, 64] {
            let b = refined_bounds(&e.term_fn(), n, &cfg).unwrap();
            assert!(
                (b.width() - b.tail_integral).abs() <= 2.0 * b.quad_error + 1e-15,
                "{} n = {n}",
                e.name
            );
        }
    }
}

#[test]
fn adaptive_meets_its_target_when_it_claims_success() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        let out = adaptive_bounds(&e.term_fn(), 1e-4, &cfg, 1 << 22).unwrap();
        assert!(out.width_met, "{}", e.name);
        assert!(out.bounds.width() <= 1e-4, "{}", e.name);
    }
}

#[test]
fn series_bounds_recover_the_integral_reciprocally() {
    let cfg = QuadConfig::default();
    for e in certifiable_entries() {
        let out = adaptive_bounds(&e.term_fn(), 1e-4, &cfg, 1 << 22).unwrap();
        let b = &out.bounds;
        let (lo, hi) = integral_bounds_from_series(b.lower, b.upper, b.f1).unwrap();
        let integral = e.closed_tail(1.0).unwrap();
        assert!(
            lo <= integral && integral <= hi,
            "{}: I = {integral} outside [{lo}, {hi}]",
            e.name
        );
    }
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

#[test]
fn closed_tails_decrease_to_zero_dyadically() {
    for e in certifiable_entries() {
        let mut prev = f64::INFINITY;
        for k in 0..=20u32 {
            let n = (1u64 << k) as f64;
            let tail = e.closed_tail(n).unwrap();
            assert!(tail >= 0.0 && tail <= prev, "{} n = {n}", e.name);
            prev = tail;
        }
        // vanishing tail at the top of the dyadic ladder
        assert!(prev < 1e-5, "{}: tail at 2^20 still {prev}", e.name);
    }
}

#[test]
fn closed_tail_differences_match_finite_integrals() {
    let cfg = QuadConfig::default();
    let mut rng = StdRng::seed_from_u64(0x7a11);
    for e in certifiable_entries() {
        for _ in 0..20 {
            let n = rng.gen_range(1.0..99.0);
            let m = rng.gen_range(n..100.0);
            let finite = integrate_finite(&e.term_fn(), n, m, &cfg).unwrap();
            let exact = e.closed_tail(n).unwrap() - e.closed_tail(m).unwrap();
            assert!(
                (finite.value - exact).abs() <= finite.abs_error_estimate + 1e-13,
                "{} over [{n}, {m}]",
                e.name
            );
        }
    }
}

#[test]
fn bracketed_sum_oracle_agrees_with_cotangent_identity() {
    // sum of 1/(k^2+a^2) over k >= 1 equals (pi a coth(pi a) - 1)/(2 a^2);
    // the catalog oracle instead brackets a million-term partial sum, so
    // the two routes are fully independent
    for a in [0.5, 1.0, 2.0, 3.5] {
        let e = entry("shifted_quadratic", &[("a", a)]);
        let oracle = match e.closed_sum() {
            ClosedSum::Value(s) => s,
            other => panic!("expected a value, got {other:?}"),
        };
        let pa = std::f64::consts::PI * a;
        let identity = (pa / pa.tanh() - 1.0) / (2.0 * a * a);
        assert!(
            (oracle - identity).abs() < 5e-12,
            "a = {a}: oracle {oracle} vs identity {identity}"
        );
    }
}

#[test]
fn closed_sums_sit_inside_refined_intervals() {
    let cfg = QuadConfig::default();
    for (e, sum) in known_sum_entries() {
        for n in [1u64, 8, 64] {
            let b = refined_bounds(&e.term_fn(), n, &cfg).unwrap();
            assert!(contains(b.lower, b.upper, sum), "{} n = {n}", e.name);
        }
    }
}
