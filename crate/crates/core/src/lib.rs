//! Certified two-sided bounds for infinite series of positive decreasing
//! terms, computed from their improper integrals (and reciprocally, bounds
//! for the integrals from the series).
//!
//! The engine rests on the integral-test inequality chain
//! `S - f(1) <= I <= S <= I + f(1)` and its partial-sum refinement
//! `S_n <= S <= S_n + I_n`: every tail integral is evaluated by adaptive
//! Gauss-Kronrod quadrature and the resulting error estimate is folded
//! outward into the reported interval, so the interval contains the true
//! sum whenever f really is positive, continuous, and decreasing.
//!
//! ```
//! use series_bounds::{bounds, expr::Expr, quadrature::QuadConfig};
//!
//! let f = Expr::parse_str("1/(x^2+4)").unwrap();
//! let b = bounds::triple_bounds(&|x| f.eval(x), &QuadConfig::default()).unwrap();
//! assert!((b.lower - 0.553574).abs() < 1e-5);
//! assert!((b.upper - 0.753574).abs() < 1e-5);
//! ```

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod expr;
pub mod kahan;
pub mod quadrature;

pub use bounds::{
    adaptive_bounds, integral_bounds_from_series, partial_sum, refined_bounds, triple_bounds,
    verify_sandwich, SeriesBounds,
};
pub use expr::Expr;
pub use quadrature::{integrate_finite, integrate_tail, QuadConfig, QuadResult};
