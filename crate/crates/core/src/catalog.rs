//! Built-in function families with closed-form tail integrals, used both as
//! correctness oracles and as ready-made CLI inputs.
//!
//! Four families, each with a distinct tail shape:
//!
//! | name                | f(x)          | constraint | tail from n              |
//! |---------------------|---------------|------------|--------------------------|
//! | `p_series`          | x^(-p)        | p > 0      | n^(1-p)/(p-1) for p > 1  |
//! | `shifted_quadratic` | 1/(x^2 + a^2) | a > 0      | (pi/2 - atan(n/a))/a     |
//! | `exponential`       | e^(-a x)      | a > 0      | e^(-a n)/a               |
//! | `harmonic`          | 1/x           | none       | divergent                |

use thiserror::Error;

use crate::expr::{EvalError, Expr, Func};
use crate::kahan::KahanSum;

/// Catalog names accepted by [`lookup`].
pub const FAMILY_NAMES: [&str; 4] = ["p_series", "shifted_quadratic", "exponential", "harmonic"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{name}' (expected one of: p_series, shifted_quadratic, exponential, harmonic)")]
    UnknownEntry { name: String },
    #[error("catalog entry '{name}' requires parameter '{param}'")]
    MissingParam { name: String, param: &'static str },
    #[error("catalog entry '{name}' does not take parameter '{param}'")]
    UnexpectedParam { name: String, param: String },
    #[error("parameter '{param}' = {value} violates constraint: {constraint}")]
    ParamError {
        param: &'static str,
        value: f64,
        constraint: &'static str,
    },
}

/// Tail integral (or sum) of a non-convergent entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("divergent")]
pub struct Divergent;

/// Closed-form or high-precision value for the full series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedSum {
    /// Exact or oracle-certified to well under 1e-9.
    Value(f64),
    Unknown,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    PSeries { p: f64 },
    ShiftedQuadratic { a: f64 },
    Exponential { a: f64 },
    Harmonic,
}

/// A named function family instance with closed-form oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<(&'static str, f64)>,
    /// The family function as an expression tree (the same object a user
    /// could have typed).
    pub expr: Expr,
    pub convergent: bool,
    form: Form,
}

impl CatalogEntry {
    /// Direct evaluation of the family function, bypassing the expression
    /// tree. Infallible on x >= 1 for valid parameters.
    pub fn term(&self, x: f64) -> f64 {
        match self.form {
            Form::PSeries { p } => x.powf(-p),
            Form::ShiftedQuadratic { a } => 1.0 / (x * x + a * a),
            Form::Exponential { a } => (-a * x).exp(),
            Form::Harmonic => 1.0 / x,
        }
    }

    /// The family function as a fallible closure, for the bounds engine.
    pub fn term_fn(&self) -> impl Fn(f64) -> Result<f64, EvalError> + '_ {
        move |x| Ok(self.term(x))
    }

    /// Exact tail integral from n: `int_n^inf f(x) dx`.
    pub fn closed_tail(&self, n: f64) -> Result<f64, Divergent> {
        assert!(n >= 1.0, "tails start at n >= 1");
        match self.form {
            Form::PSeries { p } if p > 1.0 => Ok(n.powf(1.0 - p) / (p - 1.0)),
            Form::PSeries { .. } | Form::Harmonic => Err(Divergent),
            // (pi/2 - atan(n/a))/a, computed as atan(a/n)/a to avoid
            // cancellation at large n
            Form::ShiftedQuadratic { a } => Ok((a / n).atan() / a),
            Form::Exponential { a } => Ok((-a * n).exp() / a),
        }
    }

    /// Series sum where known. The geometric family is exact; the shifted
    /// quadratic is oracle-computed from a million terms plus the bracketed
    /// closed-form tail, accurate to about half a term at 10^6.
    pub fn closed_sum(&self) -> ClosedSum {
        match self.form {
            Form::PSeries { p } if p <= 1.0 => ClosedSum::Divergent,
            Form::Harmonic => ClosedSum::Divergent,
            Form::PSeries { p: 2.0 } => ClosedSum::Value(std::f64::consts::PI.powi(2) / 6.0),
            Form::PSeries { .. } => ClosedSum::Unknown,
            Form::Exponential { a } => ClosedSum::Value(1.0 / a.exp_m1()),
            Form::ShiftedQuadratic { .. } => {
                let n = 1_000_000u64;
                let mut acc = KahanSum::new();
                for k in 1..=n {
                    acc.add(self.term(k as f64));
                }
                let lo = self.closed_tail((n + 1) as f64).expect("convergent");
                let hi = self.closed_tail(n as f64).expect("convergent");
                ClosedSum::Value(acc.value() + 0.5 * (lo + hi))
            }
        }
    }
}

fn single_param(
    name: &str,
    params: &[(String, f64)],
    expected: &'static str,
) -> Result<f64, CatalogError> {
    let mut value = None;
    for (key, v) in params {
        if key == expected && value.is_none() {
            value = Some(*v);
        } else {
            return Err(CatalogError::UnexpectedParam {
                name: name.to_string(),
                param: key.clone(),
            });
        }
    }
    value.ok_or(CatalogError::MissingParam {
        name: name.to_string(),
        param: expected,
    })
}

fn no_params(name: &str, params: &[(String, f64)]) -> Result<(), CatalogError> {
    match params.first() {
        Some((key, _)) => Err(CatalogError::UnexpectedParam {
            name: name.to_string(),
            param: key.clone(),
        }),
        None => Ok(()),
    }
}

/// Looks up a family by name and validates its parameters.
pub fn lookup(name: &str, params: &[(String, f64)]) -> Result<CatalogEntry, CatalogError> {
    match name {
        "p_series" => {
            let p = single_param(name, params, "p")?;
            if !p.is_finite() || p <= 0.0 {
                return Err(CatalogError::ParamError {
                    param: "p",
                    value: p,
                    constraint: "p > 0 (convergent iff p > 1)",
                });
            }
            // x^(-p)
            let expr = Expr::Pow(
                Box::new(Expr::Variable),
                Box::new(Expr::Negate(Box::new(Expr::Constant(p)))),
            );
            Ok(CatalogEntry {
                name: "p_series",
                params: vec![("p", p)],
                expr,
                convergent: p > 1.0,
                form: Form::PSeries { p },
            })
        }
        "shifted_quadratic" => {
            let a = single_param(name, params, "a")?;
            if !a.is_finite() || a <= 0.0 {
                return Err(CatalogError::ParamError {
                    param: "a",
                    value: a,
                    constraint: "a > 0",
                });
            }
            // 1/(x^2 + a^2)
            let expr = Expr::Div(
                Box::new(Expr::Constant(1.0)),
                Box::new(Expr::Add(
                    Box::new(Expr::Pow(
                        Box::new(Expr::Variable),
                        Box::new(Expr::Constant(2.0)),
                    )),
                    Box::new(Expr::Constant(a * a)),
                )),
            );
            Ok(CatalogEntry {
                name: "shifted_quadratic",
                params: vec![("a", a)],
                expr,
                convergent: true,
                form: Form::ShiftedQuadratic { a },
            })
        }
        "exponential" => {
            let a = single_param(name, params, "a")?;
            if !a.is_finite() || a <= 0.0 {
                return Err(CatalogError::ParamError {
                    param: "a",
                    value: a,
                    constraint: "a > 0",
                });
            }
            // exp(-a*x)
            let expr = Expr::Call(
                Func::Exp,
                Box::new(Expr::Negate(Box::new(Expr::Mul(
                    Box::new(Expr::Constant(a)),
                    Box::new(Expr::Variable),
                )))),
            );
            Ok(CatalogEntry {
                name: "exponential",
                params: vec![("a", a)],
                expr,
                convergent: true,
                form: Form::Exponential { a },
            })
        }
        "harmonic" => {
            no_params(name, params)?;
            let expr = Expr::Div(Box::new(Expr::Constant(1.0)), Box::new(Expr::Variable));
            Ok(CatalogEntry {
                name: "harmonic",
                params: Vec::new(),
                expr,
                convergent: false,
                form: Form::Harmonic,
            })
        }
        _ => Err(CatalogError::UnknownEntry {
            name: name.to_string(),
        }),
    }
}
