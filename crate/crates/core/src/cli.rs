//! Command-line front end: argument parsing, single-run and batch
//! execution, text and structured (JSON) reporting.
//!
//! Exit codes: 0 all ok, 1 divergent or target width not reached,
//! 2 usage/parse/validation error, 3 numeric failure. A batch exits with
//! the maximum severity of its entries.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use clap::Parser as ClapParser;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    adaptive_bounds, integral_bounds_from_series, refined_bounds, triple_bounds, BoundsMethod,
    SeriesBounds,
};
use crate::catalog;
use crate::expr::{check_positive_decreasing, CheckReport, Expr, ExprParseError, Witness};
use crate::quadrature::QuadConfig;

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_N_CAP: u64 = 1 << 22;
pub const DEFAULT_TARGET_WIDTH: f64 = 1e-6;
const SCREENING_SAMPLES: usize = 1000;

/// Bounding method selector shared by CLI flags, batch records, and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Triple,
    Refined,
    Adaptive,
}

impl From<BoundsMethod> for Method {
    fn from(m: BoundsMethod) -> Self {
        match m {
            BoundsMethod::Triple => Method::Triple,
            BoundsMethod::Refined => Method::Refined,
            BoundsMethod::Adaptive => Method::Adaptive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

/// Which function the request is about.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Expression(String),
    Catalog {
        name: String,
        params: Vec<(String, f64)>,
    },
}

/// A fully validated run request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub source: Source,
    pub method: Method,
    pub n: Option<u64>,
    pub target_width: Option<f64>,
    pub quad_tol: f64,
    pub n_cap: u64,
    pub skip_screening: bool,
    pub also_integral: bool,
    pub output_format: OutputFormat,
}

/// Request record as it appears in batch files and report echoes. Field
/// names mirror the CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RequestEcho {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<String, f64>>,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_width: Option<f64>,
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
    #[serde(default = "default_n_cap")]
    pub n_cap: u64,
    #[serde(default)]
    pub skip_screening: bool,
    #[serde(default)]
    pub also_integral: bool,
}

fn default_quad_tol() -> f64 {
    DEFAULT_QUAD_TOL
}

fn default_n_cap() -> u64 {
    DEFAULT_N_CAP
}

impl RunRequest {
    /// Validates an echo record into a runnable request.
    pub fn from_echo(echo: &RequestEcho, output_format: OutputFormat) -> Result<Self, String> {
        let source = match (&echo.expr, &echo.catalog) {
            (Some(text), None) => {
                if echo.params.is_some() {
                    return Err("params are only valid with a catalog source".into());
                }
                Source::Expression(text.clone())
            }
            (None, Some(name)) => Source::Catalog {
                name: name.clone(),
                params: echo
                    .params
                    .as_ref()
                    .map(|m| m.iter().map(|(k, v)| (k.clone(), *v)).collect())
                    .unwrap_or_default(),
            },
            (Some(_), Some(_)) => return Err("give either expr or catalog, not both".into()),
            (None, None) => return Err("one of expr or catalog is required".into()),
        };
        if echo.method == Method::Refined && echo.n.is_none() {
            return Err("the refined method requires n".into());
        }
        if let Some(n) = echo.n {
            if n < 1 {
                return Err("n must be at least 1".into());
            }
        }
        if let Some(w) = echo.target_width {
            if !w.is_finite() || w <= 0.0 {
                return Err("target_width must be a positive real".into());
            }
        }
        if !echo.quad_tol.is_finite() || echo.quad_tol <= 0.0 {
            return Err("quad_tol must be a positive real".into());
        }
        if echo.n_cap < 1 {
            return Err("n_cap must be at least 1".into());
        }
        let target_width = match echo.method {
            Method::Adaptive => Some(echo.target_width.unwrap_or(DEFAULT_TARGET_WIDTH)),
            _ => echo.target_width,
        };
        Ok(RunRequest {
            source,
            method: echo.method,
            n: echo.n,
            target_width,
            quad_tol: echo.quad_tol,
            n_cap: echo.n_cap,
            skip_screening: echo.skip_screening,
            also_integral: echo.also_integral,
            output_format,
        })
    }

    pub fn echo(&self) -> RequestEcho {
        let (expr, catalog, params) = match &self.source {
            Source::Expression(text) => (Some(text.clone()), None, None),
            Source::Catalog { name, params } => {
                let map: BTreeMap<String, f64> =
                    params.iter().map(|(k, v)| (k.clone(), *v)).collect();
                (None, Some(name.clone()), (!map.is_empty()).then_some(map))
            }
        };
        RequestEcho {
            expr,
            catalog,
            params,
            method: self.method,
            n: self.n,
            target_width: self.target_width,
            quad_tol: self.quad_tol,
            n_cap: self.n_cap,
            skip_screening: self.skip_screening,
            also_integral: self.also_integral,
        }
    }
}

/// Run outcome label. `Error` is always accompanied by an `error` detail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Divergent,
    WidthNotReached,
    HypothesisUnverified,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Lex,
    Parse,
    Validation,
    HypothesisViolation,
    Eval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub kind: ErrorKind,
    pub message: String,
}

/// Series bounds as reported. Conceptually infinite endpoints of a diverged
/// run are omitted rather than encoded as float sentinels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsOut {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    pub n_terms: u64,
    pub partial_sum: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_integral: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_error: Option<f64>,
    pub f1: f64,
    pub diverged: bool,
}

impl From<&SeriesBounds> for BoundsOut {
    fn from(b: &SeriesBounds) -> Self {
        let finite = |v: f64| v.is_finite().then_some(v);
        BoundsOut {
            method: b.method.into(),
            lower: finite(b.lower),
            upper: finite(b.upper),
            n_terms: b.n_terms,
            partial_sum: b.partial_sum,
            tail_integral: finite(b.tail_integral),
            quad_error: finite(b.quad_error),
            f1: b.f1,
            diverged: b.diverged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessOut {
    NonPositive { x: f64, value: f64 },
    NotDecreasing { x: f64, derivative: f64 },
    EvalFailed { x: f64, message: String },
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::NonPositive { x, value } => WitnessOut::NonPositive {
                x: *x,
                value: *value,
            },
            Witness::NotDecreasing { x, derivative } => WitnessOut::NotDecreasing {
                x: *x,
                derivative: *derivative,
            },
            Witness::EvalFailed { x, message } => WitnessOut::EvalFailed {
                x: *x,
                message: message.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreeningOut {
    pub positive_ok: bool,
    pub decreasing_ok: bool,
    pub samples_used: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    pub caveat: String,
}

impl From<&CheckReport> for ScreeningOut {
    fn from(r: &CheckReport) -> Self {
        ScreeningOut {
            positive_ok: r.positive_ok,
            decreasing_ok: r.decreasing_ok,
            samples_used: r.samples_used,
            witness: r.witness.as_ref().map(WitnessOut::from),
            caveat: r.caveat.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalOut {
    pub lower: f64,
    pub upper: f64,
}

/// Full report for one run. Serializes to the documented JSON schema and
/// deserializes back to an equal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub request: RequestEcho,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDetail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screening: Option<ScreeningOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral_bounds: Option<IntervalOut>,
    pub timing_ms: f64,
}

impl RunReport {
    /// Process exit code this report maps to.
    pub fn severity(&self) -> i32 {
        match self.status {
            Status::Ok | Status::HypothesisUnverified => 0,
            Status::Divergent | Status::WidthNotReached => 1,
            Status::Error => match self.error.as_ref().map(|e| e.kind) {
                Some(ErrorKind::Eval) => 3,
                _ => 2,
            },
        }
    }
}

/// Executes a single validated request. Never panics on user input; every
/// failure is mapped into the report status.
pub fn run(request: &RunRequest) -> RunReport {
    let started = Instant::now();
    let echo = request.echo();

    let fail =
        |kind: ErrorKind, message: String, screening: Option<ScreeningOut>, t: Instant| RunReport {
            request: echo.clone(),
            status: Status::Error,
            error: Some(ErrorDetail { kind, message }),
            bounds: None,
            screening,
            integral_bounds: None,
            timing_ms: t.elapsed().as_secs_f64() * 1e3,
        };

    // resolve the source to an expression
    let expr: Expr = match &request.source {
        Source::Expression(text) => match Expr::parse_str(text) {
            Ok(expr) => expr,
            Err(ExprParseError::Lex(e)) => {
                return fail(ErrorKind::Lex, e.to_string(), None, started)
            }
            Err(ExprParseError::Parse(e)) => {
                return fail(ErrorKind::Parse, e.to_string(), None, started)
            }
        },
        Source::Catalog { name, params } => match catalog::lookup(name, params) {
            Ok(entry) => entry.expr,
            Err(e) => return fail(ErrorKind::Validation, e.to_string(), None, started),
        },
    };

    // screen hypotheses over the region the bounds will touch
    let mut screening: Option<ScreeningOut> = None;
    if !request.skip_screening {
        let n_used = match request.method {
            Method::Triple => 1,
            Method::Refined => request.n.unwrap_or(1),
            Method::Adaptive => request.n_cap,
        };
        let x_max = 1e4f64.max(10.0 * n_used as f64);
        let report = check_positive_decreasing(&expr, 1.0, x_max, SCREENING_SAMPLES);
        let out = ScreeningOut::from(&report);
        if !report.all_ok() {
            let what = match &report.witness {
                Some(w) => format!(" ({})", describe_witness(w)),
                None => String::new(),
            };
            return fail(
                ErrorKind::HypothesisViolation,
                format!(
                    "screening failed on [1, {x_max}]: positive={}, decreasing={}{what}; \
                     pass --skip-screening to compute anyway",
                    report.positive_ok, report.decreasing_ok
                ),
                Some(out),
                started,
            );
        }
        screening = Some(out);
    }

    let cfg = QuadConfig {
        abs_tol: request.quad_tol,
        ..QuadConfig::default()
    };
    let term = |x: f64| expr.eval(x);

    let (bounds, width_met) = match request.method {
        Method::Triple => match triple_bounds(&term, &cfg) {
            Ok(b) => (b, true),
            Err(e) => return fail(ErrorKind::Eval, e.to_string(), screening, started),
        },
        Method::Refined => {
            let n = request.n.expect("validated: refined carries n");
            match refined_bounds(&term, n, &cfg) {
                Ok(b) => (b, true),
                Err(e) => return fail(ErrorKind::Eval, e.to_string(), screening, started),
            }
        }
        Method::Adaptive => {
            let width = request.target_width.unwrap_or(DEFAULT_TARGET_WIDTH);
            match adaptive_bounds(&term, width, &cfg, request.n_cap) {
                Ok(out) => (out.bounds, out.width_met),
                Err(e) => return fail(ErrorKind::Eval, e.to_string(), screening, started),
            }
        }
    };

    let integral_bounds = if request.also_integral && !bounds.diverged {
        match integral_bounds_from_series(bounds.lower, bounds.upper, bounds.f1) {
            Ok((lower, upper)) => Some(IntervalOut { lower, upper }),
            Err(e) => return fail(ErrorKind::Validation, e.to_string(), screening, started),
        }
    } else {
        None
    };

    let status = if bounds.diverged {
        Status::Divergent
    } else if !width_met {
        Status::WidthNotReached
    } else if request.skip_screening {
        Status::HypothesisUnverified
    } else {
        Status::Ok
    };

    RunReport {
        request: echo,
        status,
        error: None,
        bounds: Some(BoundsOut::from(&bounds)),
        screening,
        integral_bounds,
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::NonPositive { x, value } => format!("f({x}) = {value} <= 0"),
        Witness::NotDecreasing { x, derivative } => format!("f'({x}) = {derivative} > 0"),
        Witness::EvalFailed { x, message } => format!("f({x}) failed: {message}"),
    }
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("cannot read batch file '{path}': {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed batch file: {0}")]
    Malformed(String),
    #[error("invalid request at index {index}: {message}")]
    Invalid { index: usize, message: String },
}

/// Parses and validates a whole batch file, then executes every request.
/// Any parse or validation failure aborts before any execution. Requests
/// run concurrently; reports come back in input order.
pub fn run_batch(path: &Path) -> Result<Vec<RunReport>, BatchError> {
    let text = std::fs::read_to_string(path).map_err(|e| BatchError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let echoes: Vec<RequestEcho> =
        serde_json::from_str(&text).map_err(|e| BatchError::Malformed(e.to_string()))?;

    let requests = echoes
        .iter()
        .enumerate()
        .map(|(index, echo)| {
            RunRequest::from_echo(echo, OutputFormat::Structured)
                .map_err(|message| BatchError::Invalid { index, message })
        })
        .collect::<Result<Vec<_>, _>>()?;

    if requests.is_empty() {
        return Ok(Vec::new());
    }

    let slots: Vec<Mutex<Option<RunReport>>> = requests.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(requests.len());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= requests.len() {
                    break;
                }
                let report = run(&requests[i]);
                *slots[i].lock().expect("poisoned slot") = Some(report);
            });
        }
    });

    Ok(slots
        .into_iter()
        .map(|slot| {
            slot.into_inner()
                .expect("poisoned slot")
                .expect("worker filled slot")
        })
        .collect())
}

#[derive(ClapParser, Debug)]
#[command(
    name = "series-bounds",
    version,
    about = "Two-sided bounds for series of positive decreasing terms via the integral test"
)]
struct Args {
    /// Expression in x, e.g. "1/(x^2+4)"
    #[arg(long, value_name = "TEXT")]
    expr: Option<String>,
    /// Catalog family: p_series, shifted_quadratic, exponential, harmonic
    #[arg(long, value_name = "NAME", conflicts_with = "expr")]
    catalog: Option<String>,
    /// Catalog parameter as key=value (repeatable)
    #[arg(long = "param", value_name = "K=V")]
    param: Vec<String>,
    /// Bounding method
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Term count (required by the refined method)
    #[arg(long)]
    n: Option<u64>,
    /// Target interval width for the adaptive method [default: 1e-6]
    #[arg(long = "target-width")]
    target_width: Option<f64>,
    /// Absolute quadrature tolerance
    #[arg(long = "quad-tol", default_value_t = DEFAULT_QUAD_TOL)]
    quad_tol: f64,
    /// Largest term count the adaptive method may reach
    #[arg(long = "n-cap", default_value_t = DEFAULT_N_CAP)]
    n_cap: u64,
    /// Skip hypothesis screening (result is marked unverified)
    #[arg(long = "skip-screening")]
    skip_screening: bool,
    /// Emit a structured JSON report
    #[arg(long)]
    json: bool,
    /// Execute a JSON array of request records from a file
    #[arg(long, value_name = "PATH", conflicts_with_all = ["expr", "catalog", "method"])]
    batch: Option<PathBuf>,
    /// Also report integral bounds derived from the series bounds
    #[arg(long = "also-integral")]
    also_integral: bool,
}

/// A parsed command line: one request or a batch file.
#[derive(Debug, Clone, PartialEq)]
pub enum Invocation {
    Single(RunRequest),
    Batch { path: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Usage(String),
}

/// Parses argv (including the program name) into an invocation.
pub fn parse_args<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;

    if let Some(path) = args.batch {
        return Ok(Invocation::Batch { path });
    }

    let method = args
        .method
        .ok_or_else(|| CliError::Usage("--method is required".into()))?;

    let params = args
        .param
        .iter()
        .map(|kv| {
            let (key, value) = kv
                .split_once('=')
                .filter(|(k, _)| !k.is_empty())
                .ok_or_else(|| CliError::Usage(format!("--param '{kv}' is not of the form k=v")))?;
            let value: f64 = value
                .parse()
                .map_err(|_| CliError::Usage(format!("--param '{kv}' has a malformed number")))?;
            Ok((key.to_string(), value))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let echo = RequestEcho {
        expr: args.expr,
        catalog: args.catalog,
        params: (!params.is_empty()).then(|| params.into_iter().collect()),
        method,
        n: args.n,
        target_width: args.target_width,
        quad_tol: args.quad_tol,
        n_cap: args.n_cap,
        skip_screening: args.skip_screening,
        also_integral: args.also_integral,
    };
    let format = if args.json {
        OutputFormat::Structured
    } else {
        OutputFormat::Text
    };
    RunRequest::from_echo(&echo, format)
        .map(Invocation::Single)
        .map_err(CliError::Usage)
}

fn render_text(report: &RunReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    match report.status {
        Status::Error => {
            let detail = report.error.as_ref().expect("error status carries detail");
            let kind = serde_json::to_value(detail.kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            writeln!(out, "error ({kind}): {}", detail.message).unwrap();
        }
        Status::Divergent => {
            writeln!(
                out,
                "diverged: the tail integral does not converge (integral test), \
                 or is too heavy to certify at this tolerance"
            )
            .unwrap();
            if let Some(b) = &report.bounds {
                writeln!(out, "  method        {}", method_name(b.method)).unwrap();
                writeln!(out, "  n_terms       {}", b.n_terms).unwrap();
                writeln!(out, "  partial_sum   {:.11e}", b.partial_sum).unwrap();
            }
        }
        _ => {
            let b = report
                .bounds
                .as_ref()
                .expect("non-error status carries bounds");
            let (lower, upper) = (
                b.lower.expect("convergent bounds have a lower endpoint"),
                b.upper.expect("convergent bounds have an upper endpoint"),
            );
            writeln!(out, "{lower:.6} <= S <= {upper:.6}").unwrap();
            writeln!(out, "  method        {}", method_name(b.method)).unwrap();
            writeln!(out, "  n_terms       {}", b.n_terms).unwrap();
            writeln!(out, "  lower         {lower:.11e}").unwrap();
            writeln!(out, "  upper         {upper:.11e}").unwrap();
            writeln!(out, "  width         {:.11e}", upper - lower).unwrap();
            writeln!(out, "  partial_sum   {:.11e}", b.partial_sum).unwrap();
            if let Some(tail) = b.tail_integral {
                writeln!(out, "  tail_integral {tail:.11e}").unwrap();
            }
            if let Some(q) = b.quad_error {
                writeln!(out, "  quad_error    {q:.3e}").unwrap();
            }
            if let Some(iv) = &report.integral_bounds {
                writeln!(out, "{:.6} <= I <= {:.6}", iv.lower, iv.upper).unwrap();
                writeln!(out, "  int_lower     {:.11e}", iv.lower).unwrap();
                writeln!(out, "  int_upper     {:.11e}", iv.upper).unwrap();
            }
            if report.status == Status::WidthNotReached {
                writeln!(out, "  note: target width not reached before n-cap").unwrap();
            }
            if report.status == Status::HypothesisUnverified {
                writeln!(out, "  note: hypotheses not screened (--skip-screening)").unwrap();
            }
        }
    }
    out
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Triple => "triple",
        Method::Refined => "refined",
        Method::Adaptive => "adaptive",
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn main_entry() -> i32 {
    let invocation = match parse_args(std::env::args_os()) {
        Ok(inv) => inv,
        Err(CliError::Clap(e)) => {
            use clap::error::ErrorKind as ClapKind;
            if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            return 2;
        }
    };

    match invocation {
        Invocation::Single(request) => {
            let report = run(&request);
            match request.output_format {
                OutputFormat::Structured => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("report serializes")
                    );
                }
                OutputFormat::Text => {
                    let rendered = render_text(&report);
                    if report.status == Status::Error {
                        eprint!("{rendered}");
                    } else {
                        print!("{rendered}");
                    }
                }
            }
            report.severity()
        }
        Invocation::Batch { path } => match run_batch(&path) {
            Ok(reports) => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("reports serialize")
                );
                reports.iter().map(RunReport::severity).max().unwrap_or(0)
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
    }
}
