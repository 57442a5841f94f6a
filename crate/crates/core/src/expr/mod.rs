//! Expressions in one real variable: lexing, parsing, evaluation, symbolic
//! differentiation, and sample-based screening of the positivity/monotonicity
//! hypotheses required by the bounds engine.
//!
//! The grammar covers arithmetic (`+ - * / ^`, parentheses, unary minus) and
//! the unary functions `exp`, `ln`, `sqrt`, `atan`, `sin`, `cos`, `abs`.
//! `abs` differentiates to `u/abs(u) * u'`; that quotient is undefined where
//! the inner expression vanishes, and screening treats the derivative there
//! as 0.

mod lexer;
mod parser;

pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, ParseError};

use std::fmt;

use thiserror::Error;

/// Unary functions available in the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Ln,
    Sqrt,
    Atan,
    Sin,
    Cos,
    Abs,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "ln" => Some(Func::Ln),
            "sqrt" => Some(Func::Sqrt),
            "atan" => Some(Func::Atan),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "abs" => Some(Func::Abs),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Abs => "abs",
        }
    }
}

/// Expression tree over a single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable,
    Negate(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Evaluation failure; carries the evaluation point.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at x = {x}")]
    DivisionByZero { x: f64 },
    #[error("ln of non-positive argument {arg} at x = {x}")]
    LogNonPositive { x: f64, arg: f64 },
    #[error("sqrt of negative argument {arg} at x = {x}")]
    SqrtNegative { x: f64, arg: f64 },
    #[error("non-finite intermediate value at x = {x}")]
    NonFinite { x: f64 },
}

impl Expr {
    /// Parses source text straight to an expression.
    pub fn parse_str(source: &str) -> Result<Expr, ExprParseError> {
        let tokens = tokenize(source)?;
        Ok(parse(&tokens)?)
    }

    /// Evaluates the expression at `x`. Division by zero, `ln`/`sqrt`
    /// outside their domains, and non-finite intermediates are errors.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Constant(c) => *c,
            Expr::Variable => x,
            Expr::Negate(inner) => -inner.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let num = a.eval(x)?;
                let den = b.eval(x)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero { x });
                }
                num / den
            }
            Expr::Pow(base, exp) => base.eval(x)?.powf(exp.eval(x)?),
            Expr::Call(func, arg) => {
                let v = arg.eval(x)?;
                match func {
                    Func::Exp => v.exp(),
                    Func::Ln => {
                        if v <= 0.0 {
                            return Err(EvalError::LogNonPositive { x, arg: v });
                        }
                        v.ln()
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            return Err(EvalError::SqrtNegative { x, arg: v });
                        }
                        v.sqrt()
                    }
                    Func::Atan => v.atan(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Abs => v.abs(),
                }
            }
        };
        if !v.is_finite() {
            return Err(EvalError::NonFinite { x });
        }
        Ok(v)
    }

    /// Symbolic derivative with respect to `x`. Total: every expression has
    /// a derivative tree, with no simplification beyond structural validity.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Constant(_) => Expr::Constant(0.0),
            Expr::Variable => Expr::Constant(1.0),
            Expr::Negate(inner) => Expr::Negate(Box::new(inner.differentiate())),
            Expr::Add(a, b) => Expr::Add(Box::new(a.differentiate()), Box::new(b.differentiate())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.differentiate()), Box::new(b.differentiate())),
            Expr::Mul(a, b) => Expr::Add(
                Box::new(Expr::Mul(Box::new(a.differentiate()), b.clone())),
                Box::new(Expr::Mul(a.clone(), Box::new(b.differentiate()))),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(Expr::Sub(
                    Box::new(Expr::Mul(Box::new(a.differentiate()), b.clone())),
                    Box::new(Expr::Mul(a.clone(), Box::new(b.differentiate()))),
                )),
                Box::new(Expr::Mul(b.clone(), b.clone())),
            ),
            Expr::Pow(base, exp) => match exp.as_ref() {
                // d(u^c) = c * u^(c-1) * u'
                Expr::Constant(c) => Expr::Mul(
                    Box::new(Expr::Mul(
                        Box::new(Expr::Constant(*c)),
                        Box::new(Expr::Pow(base.clone(), Box::new(Expr::Constant(c - 1.0)))),
                    )),
                    Box::new(base.differentiate()),
                ),
                // d(u^v) = u^v * (v' ln u + v u'/u)
                _ => Expr::Mul(
                    Box::new(self.clone()),
                    Box::new(Expr::Add(
                        Box::new(Expr::Mul(
                            Box::new(exp.differentiate()),
                            Box::new(Expr::Call(Func::Ln, base.clone())),
                        )),
                        Box::new(Expr::Div(
                            Box::new(Expr::Mul(exp.clone(), Box::new(base.differentiate()))),
                            base.clone(),
                        )),
                    )),
                ),
            },
            Expr::Call(func, arg) => {
                let du = Box::new(arg.differentiate());
                let outer = match func {
                    Func::Exp => Expr::Call(Func::Exp, arg.clone()),
                    Func::Ln => Expr::Div(Box::new(Expr::Constant(1.0)), arg.clone()),
                    Func::Sqrt => Expr::Div(
                        Box::new(Expr::Constant(0.5)),
                        Box::new(Expr::Call(Func::Sqrt, arg.clone())),
                    ),
                    Func::Atan => Expr::Div(
                        Box::new(Expr::Constant(1.0)),
                        Box::new(Expr::Add(
                            Box::new(Expr::Constant(1.0)),
                            Box::new(Expr::Mul(arg.clone(), arg.clone())),
                        )),
                    ),
                    Func::Sin => Expr::Call(Func::Cos, arg.clone()),
                    Func::Cos => Expr::Negate(Box::new(Expr::Call(Func::Sin, arg.clone()))),
                    Func::Abs => {
                        Expr::Div(arg.clone(), Box::new(Expr::Call(Func::Abs, arg.clone())))
                    }
                };
                Expr::Mul(Box::new(outer), du)
            }
        }
    }
}

/// Either phase of text-to-expression conversion can fail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write!(f, "{c}"),
            Expr::Variable => write!(f, "x"),
            Expr::Negate(inner) => write!(f, "(-{inner})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

/// Fixed caveat carried by every [`CheckReport`].
pub const SCREENING_CAVEAT: &str =
    "sample-based screening over a finite grid; not a proof of positivity or monotonicity";

/// First hypothesis violation found while screening.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// f(x) <= 0 at a sample point.
    NonPositive { x: f64, value: f64 },
    /// f'(x) > 0 (beyond roundoff slack) at a sample point.
    NotDecreasing { x: f64, derivative: f64 },
    /// f itself failed to evaluate at a sample point.
    EvalFailed { x: f64, message: String },
}

impl Witness {
    /// The sample point the witness was found at.
    pub fn x(&self) -> f64 {
        match self {
            Witness::NonPositive { x, .. }
            | Witness::NotDecreasing { x, .. }
            | Witness::EvalFailed { x, .. } => *x,
        }
    }
}

/// Outcome of positivity/monotonicity screening.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub positive_ok: bool,
    pub decreasing_ok: bool,
    pub samples_used: usize,
    pub witness: Option<Witness>,
    pub caveat: &'static str,
}

impl CheckReport {
    pub fn all_ok(&self) -> bool {
        self.positive_ok && self.decreasing_ok
    }
}

/// Roundoff slack allowed when asserting f' <= 0 at sample points.
const DECREASING_SLACK: f64 = 1e-12;

/// Screens `f > 0` and `f' <= 0` on a uniform grid of `samples` points over
/// `[x_min, x_max]` (endpoints included). Both properties are checked over
/// the whole grid; when both fail, the positivity witness is reported.
///
/// A derivative that fails to evaluate at a point where `f` itself is fine
/// (the `abs` quotient at an inner zero) is treated as 0 there.
pub fn check_positive_decreasing(f: &Expr, x_min: f64, x_max: f64, samples: usize) -> CheckReport {
    assert!(
        x_min >= 1.0 && x_min < x_max,
        "screening range must satisfy 1 <= x_min < x_max"
    );
    assert!(samples >= 2, "screening needs at least 2 samples");

    let derivative = f.differentiate();
    let step = (x_max - x_min) / (samples - 1) as f64;

    let mut positive_witness: Option<Witness> = None;
    let mut decreasing_witness: Option<Witness> = None;

    for i in 0..samples {
        let x = if i + 1 == samples {
            x_max
        } else {
            x_min + step * i as f64
        };
        match f.eval(x) {
            Ok(v) if v > 0.0 => {}
            Ok(v) => {
                if positive_witness.is_none() {
                    positive_witness = Some(Witness::NonPositive { x, value: v });
                }
            }
            Err(err) => {
                if positive_witness.is_none() {
                    positive_witness = Some(Witness::EvalFailed {
                        x,
                        message: err.to_string(),
                    });
                }
            }
        }
        if decreasing_witness.is_none() {
            if let Ok(d) = derivative.eval(x) {
                if d > DECREASING_SLACK {
                    decreasing_witness = Some(Witness::NotDecreasing { x, derivative: d });
                }
            }
        }
    }

    let positive_ok = positive_witness.is_none();
    let decreasing_ok = decreasing_witness.is_none();
    let witness = positive_witness.or(decreasing_witness);
    CheckReport {
        positive_ok,
        decreasing_ok,
        samples_used: samples,
        witness,
        caveat: SCREENING_CAVEAT,
    }
}
