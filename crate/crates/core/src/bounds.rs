//! Two-sided bounds for series of positive decreasing terms.
//!
//! For positive continuous decreasing f with terms f(k), the series sum S
//! and improper integral I = int_1^inf f satisfy
//!
//! ```text
//! S - f(1) <= I <= S <= I + f(1)
//! ```
//!
//! which bounds the series by its integral ([`triple_bounds`]) and,
//! reciprocally, the integral by the series
//! ([`integral_bounds_from_series`]). The partial-sum refinement
//! `S_n <= S <= S_n + I_n` ([`refined_bounds`]) tightens with growing n,
//! which [`adaptive_bounds`] exploits by doubling n until a target width is
//! met. [`verify_sandwich`] numerically checks the finite-n inequality the
//! whole chain rests on.
//!
//! Callers are responsible for screening the positivity/monotonicity
//! hypotheses (see [`crate::expr::check_positive_decreasing`]); these
//! functions take any term function and trust it.

use thiserror::Error;

use crate::expr::EvalError;
use crate::kahan::KahanSum;
use crate::quadrature::{integrate_finite, integrate_tail, QuadConfig};

/// Which bounding rule produced a [`SeriesBounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMethod {
    Triple,
    Refined,
    Adaptive,
}

impl BoundsMethod {
    pub fn name(&self) -> &'static str {
        match self {
            BoundsMethod::Triple => "triple",
            BoundsMethod::Refined => "refined",
            BoundsMethod::Adaptive => "adaptive",
        }
    }
}

/// Certified interval for the series sum, plus provenance.
///
/// When `diverged` is set the tail integral failed to converge, the series
/// is unbounded (or too heavy to certify at the configured tolerance), and
/// `lower`/`upper`/`tail_integral` are conceptual infinities that must not
/// be formatted as values.
#[derive(Debug, Clone)]
pub struct SeriesBounds {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundsMethod,
    pub n_terms: u64,
    /// S_n, the sum of the first `n_terms` terms.
    pub partial_sum: f64,
    /// I_n, the tail integral from `n_terms`.
    pub tail_integral: f64,
    /// Quadrature error the bounds were widened by.
    pub quad_error: f64,
    /// f(1), the first term.
    pub f1: f64,
    pub diverged: bool,
}

impl SeriesBounds {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn diverged(method: BoundsMethod, n_terms: u64, partial_sum: f64, f1: f64) -> Self {
        SeriesBounds {
            lower: f64::INFINITY,
            upper: f64::INFINITY,
            method,
            n_terms,
            partial_sum,
            tail_integral: f64::INFINITY,
            quad_error: 0.0,
            f1,
            diverged: true,
        }
    }
}

/// Result of the adaptive driver: the tightest bounds reached and whether
/// the requested width was met before the term cap.
#[derive(Debug, Clone)]
pub struct AdaptiveBounds {
    pub bounds: SeriesBounds,
    pub width_met: bool,
}

/// Numeric check of the finite-n rectangle sandwich
/// `S_n - f(1) <= int_1^n f <= S_(n-1)`.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: u64,
    /// Inferior sum: S_n - f(1).
    pub s_inf: f64,
    pub integral_1_to_n: f64,
    /// Superior sum: S_(n-1).
    pub s_sup: f64,
    pub holds: bool,
    /// integral - s_inf; negative only within quadrature error when holding.
    pub slack_low: f64,
    /// s_sup - integral; negative only within quadrature error when holding.
    pub slack_high: f64,
    pub quad_error: f64,
}

/// Invalid interval arithmetic input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("series bounds are inverted: lower {lower} > upper {upper}")]
    InvertedInterval { lower: f64, upper: f64 },
    #[error("first term must be positive, got {f1}")]
    NonPositiveFirstTerm { f1: f64 },
}

/// Sum of the first `n` terms f(1) + ... + f(n), compensated, ascending.
pub fn partial_sum<F>(f: &F, n: u64) -> Result<f64, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    assert!(n >= 1, "partial sums start at n = 1");
    let mut acc = KahanSum::new();
    for k in 1..=n {
        acc.add(f(k as f64)?);
    }
    Ok(acc.value())
}

/// Bounds the series by its improper integral: `I <= S <= I + f(1)`.
///
/// The lower endpoint is `max(I - e, f(1))` where `e` is the quadrature
/// error: both `I` and the first term are valid lower bounds for S, and
/// the first term needs no error widening.
pub fn triple_bounds<F>(f: &F, cfg: &QuadConfig) -> Result<SeriesBounds, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let f1 = f(1.0)?;
    let tail = integrate_tail(f, 1.0, cfg)?;
    if !tail.converged {
        return Ok(SeriesBounds::diverged(BoundsMethod::Triple, 1, f1, f1));
    }
    let integral = tail.value;
    let err = tail.abs_error_estimate;
    Ok(SeriesBounds {
        lower: (integral - err).max(f1),
        upper: integral + f1 + err,
        method: BoundsMethod::Triple,
        n_terms: 1,
        partial_sum: f1,
        tail_integral: integral,
        quad_error: err,
        f1,
        diverged: false,
    })
}

/// Partial-sum refinement: `S_n <= S <= S_n + I_n`.
///
/// The lower endpoint is exactly S_n; only the upper endpoint carries
/// quadrature error. At n = 1 this reduces to `f(1) <= S <= f(1) + I`.
pub fn refined_bounds<F>(f: &F, n: u64, cfg: &QuadConfig) -> Result<SeriesBounds, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    assert!(n >= 1, "refined bounds need n >= 1");
    let f1 = f(1.0)?;
    let s_n = partial_sum(f, n)?;
    let tail = integrate_tail(f, n as f64, cfg)?;
    if !tail.converged {
        return Ok(SeriesBounds::diverged(BoundsMethod::Refined, n, s_n, f1));
    }
    let err = tail.abs_error_estimate;
    Ok(SeriesBounds {
        lower: s_n,
        upper: s_n + tail.value + err,
        method: BoundsMethod::Refined,
        n_terms: n,
        partial_sum: s_n,
        tail_integral: tail.value,
        quad_error: err,
        f1,
        diverged: false,
    })
}

/// Runs [`refined_bounds`] at n = 1, 2, 4, 8, ... until the interval width
/// drops to `target_width` or doubling would pass `n_cap`. Returns the last
/// (tightest) bounds either way; `width_met` distinguishes the outcomes.
pub fn adaptive_bounds<F>(
    f: &F,
    target_width: f64,
    cfg: &QuadConfig,
    n_cap: u64,
) -> Result<AdaptiveBounds, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    assert!(target_width > 0.0, "target width must be positive");
    assert!(n_cap >= 1, "n_cap must be at least 1");

    let mut n = 1u64;
    loop {
        let mut bounds = refined_bounds(f, n, cfg)?;
        bounds.method = BoundsMethod::Adaptive;
        if bounds.diverged {
            return Ok(AdaptiveBounds {
                bounds,
                width_met: false,
            });
        }
        if bounds.width() <= target_width {
            return Ok(AdaptiveBounds {
                bounds,
                width_met: true,
            });
        }
        match n.checked_mul(2) {
            Some(next) if next <= n_cap => n = next,
            _ => {
                return Ok(AdaptiveBounds {
                    bounds,
                    width_met: false,
                })
            }
        }
    }
}

/// The reciprocal direction: given bounds for the series, bounds for the
/// integral via `S - f(1) <= I <= S`.
pub fn integral_bounds_from_series(
    s_lower: f64,
    s_upper: f64,
    f1: f64,
) -> Result<(f64, f64), DomainError> {
    if s_lower > s_upper {
        return Err(DomainError::InvertedInterval {
            lower: s_lower,
            upper: s_upper,
        });
    }
    if f1 <= 0.0 {
        return Err(DomainError::NonPositiveFirstTerm { f1 });
    }
    Ok((s_lower - f1, s_upper))
}

/// Checks the rectangle sandwich `S_n - f(1) <= int_1^n f <= S_(n-1)` with
/// quadrature-error slack, reporting both slacks.
pub fn verify_sandwich<F>(f: &F, n: u64, cfg: &QuadConfig) -> Result<SandwichReport, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    assert!(n >= 2, "the sandwich needs n >= 2");
    let f1 = f(1.0)?;
    let s_sup = partial_sum(f, n - 1)?;
    let s_n = s_sup + f(n as f64)?;
    let s_inf = s_n - f1;
    let integral = integrate_finite(f, 1.0, n as f64, cfg)?;
    let q = integral.abs_error_estimate;
    let slack_low = integral.value - s_inf;
    let slack_high = s_sup - integral.value;
    Ok(SandwichReport {
        n,
        s_inf,
        integral_1_to_n: integral.value,
        s_sup,
        holds: slack_low >= -q && slack_high >= -q,
        slack_low,
        slack_high,
        quad_error: q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Result<f64, EvalError> {
        move |x| Ok(f(x))
    }

    fn golden_term(x: f64) -> f64 {
        1.0 / (x * x + 4.0)
    }

    #[test]
    fn partial_sum_first_term_is_f1() {
        let s = partial_sum(&ok(golden_term), 1).unwrap();
        assert_eq!(s, 0.2);
    }

    #[test]
    fn partial_sum_of_thousand_golden_terms() {
        let s = partial_sum(&ok(golden_term), 1000).unwrap();
        assert_eq!(format!("{s:.6}"), "0.659404");
    }

    #[test]
    fn partial_sum_of_constant_terms() {
        let s = partial_sum(&ok(|_| 1.0), 7).unwrap();
        assert_eq!(s, 7.0);
    }

    #[test]
    fn triple_bounds_match_golden_interval() {
        let b = triple_bounds(&ok(golden_term), &QuadConfig::default()).unwrap();
        assert!(!b.diverged);
        assert!((b.lower - 0.553574).abs() < 1e-5);
        assert!((b.upper - 0.753574).abs() < 1e-5);
        assert_eq!(b.n_terms, 1);
        assert_eq!(b.f1, 0.2);
        assert_eq!(b.partial_sum, 0.2);
    }

    #[test]
    fn triple_bounds_contain_geometric_sum() {
        // sum of 2^-k is exactly 1; the integral from 1 is 1/(2 ln 2)
        let b = triple_bounds(&ok(|x| (2.0f64).powf(-x)), &QuadConfig::default()).unwrap();
        let integral = 0.5 / std::f64::consts::LN_2;
        assert!(!b.diverged);
        assert!(b.lower <= 1.0 && 1.0 <= b.upper);
        assert!((b.lower - integral).abs() < 1e-6);
    }

    #[test]
    fn triple_bounds_report_harmonic_divergence() {
        let b = triple_bounds(&ok(|x| 1.0 / x), &QuadConfig::default()).unwrap();
        assert!(b.diverged);
        assert!(b.lower.is_infinite() && b.upper.is_infinite());
    }

    #[test]
    fn refined_bounds_at_thousand_terms() {
        let b = refined_bounds(&ok(golden_term), 1000, &QuadConfig::default()).unwrap();
        assert!((b.lower - 0.659404).abs() < 1e-5);
        assert!((b.upper - 0.660404).abs() < 1e-5);
        // true sum lies inside
        let exact = exact_golden_sum();
        assert!(b.lower <= exact && exact <= b.upper);
    }

    #[test]
    fn refined_bounds_at_one_term_reduce_to_triple_upper() {
        let b = refined_bounds(&ok(golden_term), 1, &QuadConfig::default()).unwrap();
        assert_eq!(b.lower, 0.2);
        assert!((b.upper - 0.753574).abs() < 1e-5);
    }

    #[test]
    fn refined_bounds_inverse_square_contains_basel_sum() {
        let b = refined_bounds(&ok(|x| 1.0 / (x * x)), 10, &QuadConfig::default()).unwrap();
        let basel = std::f64::consts::PI.powi(2) / 6.0;
        assert!((b.upper - b.lower - 0.1).abs() < 1e-9);
        assert!(b.lower <= basel && basel <= b.upper);
    }

    #[test]
    fn adaptive_meets_millibel_width_by_1024_terms() {
        let out = adaptive_bounds(&ok(golden_term), 1e-3, &QuadConfig::default(), 1 << 22).unwrap();
        assert!(out.width_met);
        assert_eq!(out.bounds.n_terms, 1024);
        assert!(out.bounds.width() <= 1e-3);
    }

    #[test]
    fn adaptive_with_loose_target_stops_at_one_term() {
        let out = adaptive_bounds(&ok(golden_term), 1.0, &QuadConfig::default(), 1 << 22).unwrap();
        assert!(out.width_met);
        assert_eq!(out.bounds.n_terms, 1);
    }

    #[test]
    fn adaptive_reports_divergence_immediately() {
        let out = adaptive_bounds(&ok(|x| 1.0 / x), 1e-3, &QuadConfig::default(), 1 << 22).unwrap();
        assert!(out.bounds.diverged);
        assert!(!out.width_met);
    }

    #[test]
    fn adaptive_respects_term_cap() {
        let out = adaptive_bounds(&ok(golden_term), 1e-9, &QuadConfig::default(), 64).unwrap();
        assert!(!out.width_met);
        assert_eq!(out.bounds.n_terms, 64);
        assert!(!out.bounds.diverged);
    }

    #[test]
    fn integral_bounds_follow_from_series_bounds() {
        let (lo, hi) = integral_bounds_from_series(0.660404, 0.660405, 0.2).unwrap();
        assert!((lo - 0.460404).abs() < 1e-12);
        assert!((hi - 0.660405).abs() < 1e-12);
        // the known integral sits inside
        assert!(lo <= 0.553574 && 0.553574 <= hi);
    }

    #[test]
    fn integral_bounds_from_exact_geometric_sum() {
        let (lo, hi) = integral_bounds_from_series(1.0, 1.0, 0.5).unwrap();
        let integral = 0.5 / std::f64::consts::LN_2;
        assert_eq!((lo, hi), (0.5, 1.0));
        assert!(lo <= integral && integral <= hi);
    }

    #[test]
    fn integral_bounds_width_law() {
        let (lo, hi) = integral_bounds_from_series(3.0, 3.0, 1.0).unwrap();
        assert_eq!((lo, hi), (2.0, 3.0));
        assert_eq!(hi - lo, 1.0);
    }

    #[test]
    fn integral_bounds_reject_bad_inputs() {
        assert!(matches!(
            integral_bounds_from_series(2.0, 1.0, 0.5),
            Err(DomainError::InvertedInterval { .. })
        ));
        assert!(matches!(
            integral_bounds_from_series(1.0, 2.0, 0.0),
            Err(DomainError::NonPositiveFirstTerm { .. })
        ));
    }

    #[test]
    fn sandwich_for_golden_function_at_three() {
        let r = verify_sandwich(&ok(golden_term), 3, &QuadConfig::default()).unwrap();
        assert!(r.holds);
        assert!((r.s_inf - 0.201923).abs() < 1e-6);
        assert!((r.integral_1_to_n - 0.259573).abs() < 1e-6);
        assert!((r.s_sup - 0.325).abs() < 1e-12);
    }

    #[test]
    fn sandwich_is_tight_for_constant_terms() {
        let c = 0.7;
        let r = verify_sandwich(&ok(move |_| c), 5, &QuadConfig::default()).unwrap();
        assert!(r.holds);
        assert!((r.s_inf - 4.0 * c).abs() < 1e-12);
        assert!((r.integral_1_to_n - 4.0 * c).abs() < 1e-10);
        assert!((r.s_sup - 4.0 * c).abs() < 1e-12);
    }

    #[test]
    fn sandwich_for_inverse_square_at_two() {
        let r = verify_sandwich(&ok(|x| 1.0 / (x * x)), 2, &QuadConfig::default()).unwrap();
        assert!(r.holds);
        assert!((r.s_inf - 0.25).abs() < 1e-12);
        assert!((r.integral_1_to_n - 0.5).abs() < 1e-10);
        assert!((r.s_sup - 1.0).abs() < 1e-12);
    }

    /// High-precision sum of the golden series, independent of the bounds
    /// code: a million direct terms plus the bracketed closed-form tail.
    fn exact_golden_sum() -> f64 {
        let n = 1_000_000u64;
        let mut acc = KahanSum::new();
        for k in 1..=n {
            acc.add(golden_term(k as f64));
        }
        let tail_at = |m: f64| 0.5 * (2.0 / m).atan();
        acc.value() + 0.5 * (tail_at(n as f64) + tail_at((n + 1) as f64))
    }

    #[test]
    fn eval_errors_propagate_through_partial_sum() {
        let f = |x: f64| -> Result<f64, EvalError> {
            if x >= 3.0 {
                Err(EvalError::NonFinite { x })
            } else {
                Ok(1.0 / x)
            }
        };
        assert!(partial_sum(&f, 5).is_err());
    }
}
