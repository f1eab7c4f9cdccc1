//! The `trigsum` command line: `sum`, `verify` and `table`.
//!
//! Every command writes to caller-supplied streams and returns its exit code,
//! so the whole front end runs inside tests without spawning a process.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::binom::binom_prefix;
use crate::closed::{cos_closed, sin_closed};
use crate::error::Error;
use crate::phase::series_at_phase;
use crate::series::{
    abel_sum, cesaro_sum, classify, partial_sum, Angle, ConvergenceClass, Method, SeriesKind,
    SeriesSpec, SummationResult, DEFAULT_ABEL_RADII, DEFAULT_ABEL_TERMS, DEFAULT_PARTIAL_TERMS,
};
use crate::verify::{run_suite, SuiteName, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_DIVERGENT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

/// Upper bound on the number of rows `table` will produce.
const MAX_TABLE_ROWS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "trigsum",
    version,
    about = "Binomial-weighted cosine and sine series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one series.
    Sum(SumArgs),
    /// Run a verification suite and write a CSV report.
    Verify(VerifyArgs),
    /// Tabulate a series over an angle grid.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cos,
    Sin,
}

impl From<KindArg> for SeriesKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Cos => SeriesKind::Cosine,
            KindArg::Sin => SeriesKind::Sine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Partial,
    Cesaro,
    Abel,
    Phase,
    Closed,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Partial => Method::Partial,
            MethodArg::Cesaro => Method::Cesaro,
            MethodArg::Abel => Method::Abel,
            MethodArg::Phase => Method::Phase,
            MethodArg::Closed => Method::Closed,
        }
    }
}

#[derive(Debug, Args)]
struct SumArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_hyphen_values = true)]
    n: f64,
    /// Angle with unit suffix, e.g. `90deg` or `1.5708rad`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    phi: Angle,
    /// Defaults to a method suited to the convergence class.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Term budget (per radius for `abel`).
    #[arg(long)]
    terms: Option<usize>,
    /// Warn when the residual estimate exceeds this.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: SuiteName,
    #[arg(long)]
    grid_step_deg: Option<f64>,
    /// Replace every case tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_hyphen_values = true)]
    n: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    from: Angle,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    to: Angle,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    step: Angle,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    methods: Vec<MethodArg>,
    #[arg(long)]
    terms: Option<usize>,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `90deg`, `-30deg`, `1.5708rad`.
pub fn parse_angle(s: &str) -> Result<Angle, String> {
    let (number, from_degrees) = if let Some(v) = s.strip_suffix("deg") {
        (v, true)
    } else if let Some(v) = s.strip_suffix("rad") {
        (v, false)
    } else {
        return Err(format!("angle `{s}` needs a `deg` or `rad` suffix"));
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("angle `{s}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("angle `{s}` is not finite"));
    }
    Ok(if from_degrees {
        Angle::from_degrees(value)
    } else {
        Angle::from_radians(value)
    })
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Run the command line with explicit arguments and streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Sum(a) => cmd_sum(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Table(a) => cmd_table(&a, out, err),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } | Error::Pole { .. } => EXIT_DOMAIN,
        Error::Divergent(_) => EXIT_DIVERGENT,
        Error::InvalidRadii(_) | Error::InsufficientTerms(_) | Error::OutOfRange(_) => EXIT_USAGE,
        Error::Inconsistency(_) => EXIT_FAILURES,
    }
}

fn default_method(class: ConvergenceClass) -> Method {
    match class {
        ConvergenceClass::Finite => Method::Partial,
        _ => Method::Abel,
    }
}

/// Whether `method` is expected to produce the sum for this class.
fn method_suits(method: Method, spec: &SeriesSpec, class: ConvergenceClass) -> bool {
    use ConvergenceClass::*;
    match method {
        Method::Closed => true,
        Method::Phase => class == Finite,
        Method::Partial => matches!(
            class,
            Finite | AbsolutelyConvergent | ConditionallyConvergent
        ),
        // (C,1) needs terms of order o(k); that holds for n > -2.
        Method::Cesaro => class != Divergent && spec.n.value() > -2.0,
        Method::Abel => class != Divergent,
    }
}

fn closed(spec: &SeriesSpec) -> crate::Result<f64> {
    let v = match spec.kind {
        SeriesKind::Cosine => cos_closed(spec.n, spec.phi)?,
        SeriesKind::Sine => sin_closed(spec.n, spec.phi)?,
    };
    Ok(v.value)
}

/// One evaluation with `method`; a divergent series never yields a number
/// from the summation methods.
fn evaluate(
    spec: &SeriesSpec,
    method: Method,
    terms: Option<usize>,
) -> crate::Result<SummationResult> {
    let class = classify(spec);
    if class == ConvergenceClass::Divergent && method != Method::Closed {
        return Err(Error::Divergent(format!(
            "exponent {} at phi = {} rad: the terms do not tend to a limit in any mean",
            spec.n.value(),
            spec.phi.radians()
        )));
    }
    let finite_terms = || spec.n.value() as usize + 1;
    match method {
        Method::Partial => {
            let t = terms.unwrap_or(if class == ConvergenceClass::Finite {
                finite_terms()
            } else {
                DEFAULT_PARTIAL_TERMS
            });
            partial_sum(spec, t)
        }
        Method::Cesaro => cesaro_sum(spec, terms.unwrap_or(DEFAULT_PARTIAL_TERMS)),
        Method::Abel => abel_sum(
            spec,
            terms.unwrap_or(DEFAULT_ABEL_TERMS),
            &DEFAULT_ABEL_RADII,
        ),
        Method::Closed => Ok(SummationResult {
            value: closed(spec)?,
            method,
            terms_used: 0,
            residual_estimate: 0.0,
            convergence: class,
        }),
        Method::Phase => {
            if !(spec.n.is_nonneg_integer() && spec.n.value() <= 64.0) {
                return Err(Error::OutOfRange(format!(
                    "phase method needs an integer exponent in 0..=64, got {}",
                    spec.n.value()
                )));
            }
            let coeffs = binom_prefix(spec.n, finite_terms());
            let (c, s) = series_at_phase(&coeffs, spec.phi)?;
            Ok(SummationResult {
                value: match spec.kind {
                    SeriesKind::Cosine => c,
                    SeriesKind::Sine => s,
                },
                method,
                terms_used: coeffs.len(),
                residual_estimate: 0.0,
                convergence: class,
            })
        }
    }
}

fn cmd_sum(a: &SumArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let spec = SeriesSpec::new(a.kind.into(), a.n, a.phi);
    let class = classify(&spec);
    let method = a.method.map(Method::from).unwrap_or(default_method(class));
    if !method_suits(method, &spec, class) {
        let _ = writeln!(
            err,
            "warning: method {method} is not expected to sum a {class} series; proceeding"
        );
    }
    match evaluate(&spec, method, a.terms) {
        Ok(r) => {
            if let Some(tol) = a.tol {
                if r.residual_estimate > tol {
                    let _ = writeln!(
                        err,
                        "warning: residual estimate {:e} exceeds tolerance {tol:e}",
                        r.residual_estimate
                    );
                }
            }
            let written = writeln!(
                out,
                "value={:.16e}\nmethod={}\nterms_used={}\nresidual_estimate={:.3e}\nconvergence={}",
                r.value, r.method, r.terms_used, r.residual_estimate, r.convergence
            );
            if written.is_err() {
                return EXIT_IO;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let options = SuiteOptions {
        grid_step_deg: a.grid_step_deg,
        tolerance: a.tol,
    };
    let report = match run_suite(a.suite, options) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &a.report {
        Some(path) => File::create(path)
            .and_then(|f| {
                let mut w = BufWriter::new(f);
                report.write_to(&mut w)?;
                w.flush()
            })
            .map_err(|e| format!("cannot write report {}: {e}", path.display())),
        None => report
            .write_to(&mut *out)
            .map_err(|e| format!("cannot write report: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_IO;
    }
    if a.report.is_some() && writeln!(out, "{}", report.summary).is_err() {
        return EXIT_IO;
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILURES
    }
}

/// Inclusive grid; the endpoints are finite (`parse_angle` rejects the rest).
fn table_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, String> {
    if step <= 0.0 {
        return Err("--step must be positive".into());
    }
    if from >= to {
        return Err("--from must be below --to".into());
    }
    // Tolerate rounding in (to - from)/step so that the end point is kept.
    let count = ((to - from) / step * (1.0 + 1e-12)).floor();
    if count + 1.0 > MAX_TABLE_ROWS as f64 {
        return Err(format!("grid has more than {MAX_TABLE_ROWS} rows"));
    }
    Ok((0..=count as usize)
        .map(|i| from + i as f64 * step)
        .collect())
}

fn cell(r: crate::Result<f64>) -> String {
    match r {
        Ok(v) => format!("{v:.16e}"),
        Err(Error::Divergent(_)) => "divergent".into(),
        Err(Error::Pole { .. }) => "pole".into(),
        Err(Error::Domain { .. }) => "domain".into(),
        Err(_) => "error".into(),
    }
}

fn write_table(
    a: &TableArgs,
    grid: &[f64],
    methods: &[Method],
    w: &mut dyn Write,
) -> io::Result<()> {
    let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
    writeln!(w, "phi_rad,{}", names.join(","))?;
    for &phi in grid {
        let spec = SeriesSpec::new(a.kind.into(), a.n, phi);
        let cells: Vec<String> = methods
            .iter()
            .map(|&m| cell(evaluate(&spec, m, a.terms).map(|r| r.value)))
            .collect();
        writeln!(w, "{phi:.16e},{}", cells.join(","))?;
    }
    Ok(())
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let grid = match table_grid(a.from.radians(), a.to.radians(), a.step.radians()) {
        Ok(g) => g,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    // Requested methods in order, then the closed form once.
    let mut methods: Vec<Method> = Vec::new();
    for m in a.methods.iter().map(|&m| Method::from(m)) {
        if m != Method::Closed && !methods.contains(&m) {
            methods.push(m);
        }
    }
    methods.push(Method::Closed);

    let result = match &a.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_table(a, &grid, &methods, &mut w)?;
            w.flush()
        }),
        None => write_table(a, &grid, &methods, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write table: {e}");
            EXIT_IO
        }
    }
}
