//! Adaptive quadrature for finite intervals and decreasing-integrand tails.
//!
//! Each subinterval is evaluated with an embedded Gauss(7)/Kronrod(15) pair;
//! the difference of the two rules is the local error estimate. The interval
//! with the worst estimate is bisected until the summed estimate meets the
//! tolerance or the subdivision limits are hit. Tails over `[n, inf)` are
//! mapped onto a finite interval by the rational substitution
//! `x = n + t/(1-t)` and truncated where a dyadic-decay estimate certifies
//! the remaining mass is negligible.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::expr::EvalError;
use crate::kahan::KahanSum;

/// Tolerances and subdivision limits for adaptive integration.
#[derive(Debug, Clone)]
pub struct QuadConfig {
    /// Target absolute error for the total estimate.
    pub abs_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: usize,
    /// Smallest subinterval width that is still split.
    pub min_interval: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 50,
            min_interval: 1e-14,
        }
    }
}

impl QuadConfig {
    fn validate(&self) {
        assert!(self.abs_tol > 0.0, "abs_tol must be positive");
        assert!(self.max_depth >= 1, "max_depth must be at least 1");
        assert!(self.min_interval > 0.0, "min_interval must be positive");
    }
}

/// Integral value with an absolute error estimate.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub subdivisions: usize,
    /// True when the error estimate met the configured tolerance.
    pub converged: bool,
    /// Set when partial values grew past the divergence guard; the result
    /// must not be read as an approximation of a finite integral.
    pub magnitude_exceeded: bool,
}

/// Partial values beyond this magnitude are reported as non-convergence
/// rather than approximated.
const MAGNITUDE_LIMIT: f64 = 1e12;

/// Hard cap on bisections per call, independent of depth limits.
const MAX_SPLITS: usize = 30_000;

// 15-point Kronrod extension of 7-point Gauss-Legendre, on [-1, 1].
// Odd-indexed abscissae (and the centre) are the embedded Gauss-7 nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One Gauss-Kronrod pass over `[a, b]`: returns the Kronrod value and the
/// |Kronrod - Gauss| local error estimate.
fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64), EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let offset = half * XGK[j];
        let f_low = f(center - offset)?;
        let f_high = f(center + offset)?;
        let pair = f_low + f_high;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }

    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    Ok((value, err))
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
///
/// Never silent about failure: when the subdivision limits are reached with
/// the estimate still above tolerance, the result carries `converged =
/// false` and the honest remaining estimate.
pub fn integrate_finite<F>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    cfg.validate();
    assert!(a <= b, "integration bounds must satisfy a <= b");

    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
            magnitude_exceeded: false,
        });
    }

    let (value, err) = gauss_kronrod_15(f, a, b)?;
    let mut active = BinaryHeap::new();
    active.push(Segment {
        a,
        b,
        value,
        err,
        depth: 0,
    });
    let mut frozen: Vec<Segment> = Vec::new();

    let mut total_err = err;
    let mut total_value = value;
    let mut frozen_err = 0.0f64;
    let mut splits = 0usize;
    let mut magnitude_exceeded = total_value.abs() > MAGNITUDE_LIMIT;

    while total_err > cfg.abs_tol && !magnitude_exceeded {
        let Some(worst) = active.pop() else { break };
        let width = worst.b - worst.a;
        let splittable =
            width * 0.5 >= cfg.min_interval && worst.depth < cfg.max_depth && splits < MAX_SPLITS;
        if !splittable {
            frozen_err += worst.err;
            frozen.push(worst);
            if frozen_err > cfg.abs_tol {
                // unreducible error already exceeds the tolerance
                break;
            }
            continue;
        }

        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gauss_kronrod_15(f, worst.a, mid)?;
        let (rv, re) = gauss_kronrod_15(f, mid, worst.b)?;
        splits += 1;

        total_err += le + re - worst.err;
        total_value += lv + rv - worst.value;
        magnitude_exceeded = total_value.abs() > MAGNITUDE_LIMIT;

        active.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            err: le,
            depth: worst.depth + 1,
        });
        active.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            err: re,
            depth: worst.depth + 1,
        });
    }

    // recompute totals exactly over the final partition
    let mut value_sum = KahanSum::new();
    let mut err_sum = KahanSum::new();
    for seg in frozen.iter().chain(active.iter()) {
        value_sum.add(seg.value);
        err_sum.add(seg.err);
    }
    let value = value_sum.value();
    let abs_error_estimate = err_sum.value();

    Ok(QuadResult {
        value,
        abs_error_estimate,
        subdivisions: splits,
        converged: abs_error_estimate <= cfg.abs_tol && !magnitude_exceeded,
        magnitude_exceeded,
    })
}

/// Truncation point and estimated remaining mass for a decreasing tail.
///
/// For positive decreasing f, `int_X^inf f <= sum_j 2^j X f(2^j X)`; when the
/// dyadic ratio `r = 2 f(2X)/f(X)` stays below 1 that sum is geometrically
/// bounded by `X f(X) / (1 - r)`. The search doubles the offset past `n`
/// until the bound drops under `target`, or gives up at `offset_cap` (chosen
/// so the transformed interval stays resolvable at `min_interval`).
fn find_truncation<F>(
    f: &F,
    n: f64,
    target: f64,
    offset_cap: f64,
) -> Result<Option<(f64, f64)>, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let mut offset = 1.0f64;
    let mut best: Option<(f64, f64)> = None;
    loop {
        let x = n + offset;
        let fx = f(x)?;
        let mass = if fx == 0.0 {
            Some(0.0)
        } else {
            let f2x = f(2.0 * x)?;
            let ratio = 2.0 * f2x / fx;
            // clamp keeps the estimate non-negative for inputs that violate
            // the positive-decreasing hypothesis (screening skipped)
            (ratio < 1.0).then(|| (x * fx / (1.0 - ratio)).max(0.0))
        };
        if let Some(mass) = mass {
            best = Some((x, mass));
            if mass <= target {
                return Ok(best);
            }
        }
        if offset >= offset_cap {
            return Ok(best);
        }
        offset = (offset * 2.0).min(offset_cap);
    }
}

/// Tail integral of a positive decreasing `f` over `[n, inf)`.
///
/// Substitutes `x = n + t/(1-t)` (so `dx = dt/(1-t)^2`), integrates the
/// transformed integrand over `[0, t_max]`, and folds the truncated mass
/// beyond the cut into the error estimate. A tail whose mass estimate never
/// settles is reported with `converged = false` -- the operational signal
/// for a divergent or too-heavy tail.
pub fn integrate_tail<F>(f: &F, n: f64, cfg: &QuadConfig) -> Result<QuadResult, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    cfg.validate();
    assert!(n >= 1.0, "tail integrals start at n >= 1");

    // keep 1 - t_max well above min_interval so the edge stays splittable
    let offset_cap = 1.0 / (100.0 * cfg.min_interval);
    let truncation = find_truncation(f, n, cfg.abs_tol / 10.0, offset_cap)?;

    let Some((x_cut, mass)) = truncation else {
        // no finite mass estimate anywhere up to the cap
        return Ok(QuadResult {
            value: f64::INFINITY,
            abs_error_estimate: f64::INFINITY,
            subdivisions: 0,
            converged: false,
            magnitude_exceeded: true,
        });
    };

    let t_max = (x_cut - n) / (x_cut - n + 1.0);
    let transformed = |t: f64| -> Result<f64, EvalError> {
        let one_minus = 1.0 - t;
        let x = n + t / one_minus;
        Ok(f(x)? / (one_minus * one_minus))
    };

    let inner_cfg = QuadConfig {
        abs_tol: cfg.abs_tol * 0.9,
        ..cfg.clone()
    };
    let inner = integrate_finite(&transformed, 0.0, t_max, &inner_cfg)?;

    let abs_error_estimate = inner.abs_error_estimate + mass;
    Ok(QuadResult {
        value: inner.value,
        abs_error_estimate,
        subdivisions: inner.subdivisions,
        converged: !inner.magnitude_exceeded && abs_error_estimate <= cfg.abs_tol,
        magnitude_exceeded: inner.magnitude_exceeded,
    })
}
