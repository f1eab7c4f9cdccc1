//! Verification suites: summation oracles against closed forms on angle grids.
//!
//! A suite is a flat list of [`SuiteCase`]s. Cases are evaluated in parallel
//! and the report keeps suite order, so two runs give byte-identical bodies.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::binom::binom_prefix;
use crate::closed::{
    cos_closed, lambda_series_closed, quarter_turn_sum, reduced_neg_int, sin_closed,
    special_value_catalog, CatalogValue,
};
use crate::error::{Error, Result};
use crate::phase::{binomial_phase_power, series_at_phase};
use crate::series::{
    abel_sum_default, cesaro_sum, partial_sum, quarter_turn_partial, SeriesKind, SeriesSpec,
};

pub const REPORT_HEADER: &str = "case,kind,n,phi_rad,method,computed,expected,abs_error,passed";

/// Refuse grids that would make a suite unreasonably large.
const MAX_GRID_POINTS: usize = 100_001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteName {
    FiniteInteger,
    NegativeInteger,
    HalfInteger,
    QuarterTurn,
    Lambda,
    PhaseEquivalence,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::FiniteInteger,
        SuiteName::NegativeInteger,
        SuiteName::HalfInteger,
        SuiteName::QuarterTurn,
        SuiteName::Lambda,
        SuiteName::PhaseEquivalence,
        SuiteName::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::FiniteInteger => "finite_integer",
            SuiteName::NegativeInteger => "negative_integer",
            SuiteName::HalfInteger => "half_integer",
            SuiteName::QuarterTurn => "quarter_turn",
            SuiteName::Lambda => "lambda",
            SuiteName::PhaseEquivalence => "phase_equivalence",
            SuiteName::All => "all",
        }
    }

    /// Grid step used when no override is given.
    pub fn default_grid_step_deg(self) -> f64 {
        match self {
            SuiteName::NegativeInteger => 2.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown suite `{s}`")))
    }
}

/// How the computed column of a case is produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Route {
    Partial(usize),
    Cesaro(usize),
    Abel,
    /// `reduced_neg_int` for a negative integer exponent.
    Reduced,
    Closed,
    /// Alternating even-index sum `1 - (n 2) + (n 4) - ...`.
    QuarterTurnPartial,
    QuarterTurnClosed,
    LambdaClosed,
    /// `(1+p)ⁿ` by repeated squaring.
    PhasePower,
    /// `(Δ(p) ± Δ(q))/2` with Horner's rule.
    PhaseSeries,
}

impl Route {
    pub fn method_name(self) -> &'static str {
        match self {
            Route::Partial(_) | Route::QuarterTurnPartial => "partial",
            Route::Cesaro(_) => "cesaro",
            Route::Abel => "abel",
            Route::Reduced => "reduced",
            Route::Closed | Route::QuarterTurnClosed | Route::LambdaClosed => "closed",
            Route::PhasePower => "phase",
            Route::PhaseSeries => "phase_series",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExpectedSource {
    ClosedForm,
    Catalog(CatalogValue),
    Literal {
        value: f64,
        note: &'static str,
    },
    /// `binomial_phase_power`, for comparing the two phase routes.
    PhasePower,
}

impl ExpectedSource {
    pub fn name(&self) -> &'static str {
        match self {
            ExpectedSource::ClosedForm => "closed_form",
            ExpectedSource::Catalog(_) => "catalog",
            ExpectedSource::Literal { .. } => "literal",
            ExpectedSource::PhasePower => "phase_power",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCase {
    pub spec: SeriesSpec,
    pub route: Route,
    pub expected_source: ExpectedSource,
    /// Pass when `abs_error <= tolerance·(1 + |expected|)`.
    pub tolerance: f64,
}

/// Either a number or the reason there is none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Divergent,
    Pole,
    Domain,
    Failed,
}

impl Cell {
    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) if v.is_finite() => Cell::Value(v),
            Ok(_) => Cell::Failed,
            Err(Error::Divergent(_)) => Cell::Divergent,
            Err(Error::Pole { .. }) => Cell::Pole,
            Err(Error::Domain { .. }) => Cell::Domain,
            Err(_) => Cell::Failed,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => write!(f, "{v:.16e}"),
            Cell::Divergent => f.write_str("divergent"),
            Cell::Pole => f.write_str("pole"),
            Cell::Domain => f.write_str("domain"),
            Cell::Failed => f.write_str("error"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub case: SuiteCase,
    pub computed: Cell,
    pub expected: Cell,
    pub abs_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "# total={} passed={} failed={}",
            self.total, self.passed, self.failed
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub suite: SuiteName,
    pub cases: Vec<CaseOutcome>,
    pub summary: Summary,
    pub wall_time: f64,
}

impl VerificationReport {
    /// CSV body: header, one row per case, `# wall_time_s=` and the summary.
    pub fn write_to(&self, mut out: impl Write) -> io::Result<()> {
        self.write_rows(&mut out)?;
        writeln!(out, "# wall_time_s={:.3}", self.wall_time)?;
        writeln!(out, "{}", self.summary)
    }

    /// Everything except the wall-time line; deterministic across runs.
    pub fn write_rows(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "{REPORT_HEADER}")?;
        for (i, o) in self.cases.iter().enumerate() {
            writeln!(
                out,
                "{},{},{:.16e},{:.16e},{},{},{},{:.16e},{}",
                i,
                o.case.spec.kind.short_name(),
                o.case.spec.n.value(),
                o.case.spec.phi.radians(),
                o.case.route.method_name(),
                o.computed,
                o.expected,
                o.abs_error,
                o.passed
            )?;
        }
        Ok(())
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SuiteOptions {
    pub grid_step_deg: Option<f64>,
    /// Replaces every case tolerance.
    pub tolerance: Option<f64>,
}

/// Symmetric grid `k·step` (degrees) with `|k·step| < bound`, or `<= bound`
/// when `inclusive`.
fn degree_grid(step: f64, bound: f64, inclusive: bool, skip_zero: bool) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::OutOfRange(format!(
            "grid step must be positive, got {step}"
        )));
    }
    let ratio = bound / step;
    let k_max = if inclusive {
        ratio.floor()
    } else {
        ratio.ceil() - 1.0
    };
    if 2.0 * k_max + 1.0 > MAX_GRID_POINTS as f64 {
        return Err(Error::OutOfRange(format!(
            "grid step {step}° gives more than {MAX_GRID_POINTS} points"
        )));
    }
    let k_max = k_max as i64;
    Ok((-k_max..=k_max)
        .filter(|&k| !(skip_zero && k == 0))
        .map(|k| (k as f64 * step).to_radians())
        .collect())
}

fn finite_integer(step: f64) -> Result<Vec<SuiteCase>> {
    let grid = degree_grid(step, 179.0, false, false)?;
    let mut cases = Vec::new();
    for n in 0..=10i32 {
        for kind in [SeriesKind::Cosine, SeriesKind::Sine] {
            for &phi in &grid {
                cases.push(SuiteCase {
                    spec: SeriesSpec::new(kind, n, phi),
                    route: Route::Partial(n as usize + 1),
                    expected_source: ExpectedSource::ClosedForm,
                    tolerance: 1e-10,
                });
            }
        }
    }
    Ok(cases)
}

fn negative_integer(step: f64) -> Result<Vec<SuiteCase>> {
    let grid = degree_grid(step, 170.0, false, true)?;
    let mut cases = Vec::new();
    for m in 1..=6i32 {
        for &phi in &grid {
            let spec = SeriesSpec::cosine(-m, phi);
            cases.push(SuiteCase {
                spec,
                route: Route::Abel,
                expected_source: ExpectedSource::ClosedForm,
                tolerance: 1e-6,
            });
            cases.push(SuiteCase {
                spec,
                route: Route::Reduced,
                expected_source: ExpectedSource::ClosedForm,
                tolerance: 1e-12,
            });
        }
    }
    Ok(cases)
}

/// Tolerance that turns the relative pass rule into the absolute bound `abs`.
fn absolute(abs: f64, expected: f64) -> f64 {
    abs / (1.0 + expected.abs())
}

fn half_integer() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for entry in special_value_catalog() {
        match entry.value {
            CatalogValue::Finite(v) => {
                // n = 1/2 at a half turn converges only conditionally: plain
                // partial sums, loose tolerance.
                let route = if entry.spec.phi.is_half_turn() {
                    Route::Partial(100_000)
                } else {
                    Route::Abel
                };
                let tolerance = match route {
                    Route::Abel => absolute(1e-6, v),
                    _ => 1e-3,
                };
                cases.push(SuiteCase {
                    spec: entry.spec,
                    route,
                    expected_source: ExpectedSource::Catalog(entry.value),
                    tolerance,
                });
                // fl(π) sits 1.2e-16 short of the half turn and the square root
                // magnifies that to ~1e-8 in the closed form.
                let closed_tol = if entry.spec.phi.is_half_turn() {
                    1e-7
                } else {
                    1e-14
                };
                cases.push(SuiteCase {
                    spec: entry.spec,
                    route: Route::Closed,
                    expected_source: ExpectedSource::Catalog(entry.value),
                    tolerance: closed_tol,
                });
            }
            CatalogValue::Divergent => cases.push(SuiteCase {
                spec: entry.spec,
                route: Route::Abel,
                expected_source: ExpectedSource::Catalog(entry.value),
                tolerance: 1e-6,
            }),
        }
    }
    cases
}

const QUARTER_TURN_VALUES: [(i32, f64); 7] = [
    (2, 0.0),
    (3, -2.0),
    (4, -4.0),
    (5, -4.0),
    (6, 0.0),
    (7, 8.0),
    (8, 16.0),
];

fn quarter_turn() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for (n, value) in QUARTER_TURN_VALUES {
        for route in [Route::QuarterTurnPartial, Route::QuarterTurnClosed] {
            cases.push(SuiteCase {
                spec: SeriesSpec::cosine(n, std::f64::consts::FRAC_PI_2),
                route,
                expected_source: ExpectedSource::Literal {
                    value,
                    note: "alternating sum of even-index coefficients",
                },
                // Integer values, compared exactly.
                tolerance: f64::MIN_POSITIVE,
            });
        }
    }
    cases
}

const LAMBDA_VALUES: [f64; 6] = [0.5, 0.0, -0.25, -0.25, -0.125, 0.0];

fn lambda() -> Vec<SuiteCase> {
    let mut cases = Vec::new();
    for (i, &value) in LAMBDA_VALUES.iter().enumerate() {
        let spec = SeriesSpec::cosine(-(i as i32 + 1), std::f64::consts::FRAC_PI_2);
        let expected_source = ExpectedSource::Literal {
            value,
            note: "quarter-turn value cos(45λ°)/2^(λ/2)",
        };
        cases.push(SuiteCase {
            spec,
            route: Route::Abel,
            expected_source: expected_source.clone(),
            tolerance: absolute(1e-6, value),
        });
        cases.push(SuiteCase {
            spec,
            route: Route::LambdaClosed,
            expected_source,
            tolerance: 1e-15,
        });
    }
    cases
}

fn phase_equivalence(step: f64) -> Result<Vec<SuiteCase>> {
    let grid = degree_grid(step, 180.0, true, false)?;
    let mut cases = Vec::new();
    for n in 0..=20i32 {
        let bound = 1e-12 * 2f64.powi(n);
        for kind in [SeriesKind::Cosine, SeriesKind::Sine] {
            for &phi in &grid {
                let spec = SeriesSpec::new(kind, n, phi);
                // The tolerance is made absolute per row once the expected value
                // is known; see `evaluate`.
                for (route, expected_source) in [
                    (Route::PhasePower, ExpectedSource::ClosedForm),
                    (Route::PhaseSeries, ExpectedSource::ClosedForm),
                    (Route::PhaseSeries, ExpectedSource::PhasePower),
                ] {
                    cases.push(SuiteCase {
                        spec,
                        route,
                        expected_source,
                        tolerance: bound,
                    });
                }
            }
        }
    }
    Ok(cases)
}

/// The cases of a suite, in report order.
pub fn build_suite(suite: SuiteName, grid_step_deg: Option<f64>) -> Result<Vec<SuiteCase>> {
    let step = grid_step_deg.unwrap_or(suite.default_grid_step_deg());
    Ok(match suite {
        SuiteName::FiniteInteger => finite_integer(step)?,
        SuiteName::NegativeInteger => negative_integer(step)?,
        SuiteName::HalfInteger => half_integer(),
        SuiteName::QuarterTurn => quarter_turn(),
        SuiteName::Lambda => lambda(),
        SuiteName::PhaseEquivalence => phase_equivalence(step)?,
        SuiteName::All => {
            let mut cases = Vec::new();
            for part in &SuiteName::ALL[..6] {
                cases.extend(build_suite(*part, grid_step_deg)?);
            }
            cases
        }
    })
}

fn closed_value(spec: &SeriesSpec) -> Result<f64> {
    let v = match spec.kind {
        SeriesKind::Cosine => cos_closed(spec.n, spec.phi)?,
        SeriesKind::Sine => sin_closed(spec.n, spec.phi)?,
    };
    Ok(v.value)
}

fn nonneg_exponent(spec: &SeriesSpec) -> Result<u32> {
    let n = spec.n.value();
    if spec.n.is_nonneg_integer() && n <= u32::MAX as f64 {
        Ok(n as u32)
    } else {
        Err(Error::OutOfRange(format!(
            "phase routes need a nonnegative integer exponent, got {n}"
        )))
    }
}

fn pick(spec: &SeriesSpec, (c, s): (f64, f64)) -> f64 {
    match spec.kind {
        SeriesKind::Cosine => c,
        SeriesKind::Sine => s,
    }
}

fn phase_power(spec: &SeriesSpec) -> Result<f64> {
    Ok(pick(
        spec,
        binomial_phase_power(nonneg_exponent(spec)?, spec.phi)?,
    ))
}

fn compute(case: &SuiteCase) -> Result<f64> {
    let spec = &case.spec;
    match case.route {
        Route::Partial(terms) => partial_sum(spec, terms).map(|r| r.value),
        Route::Cesaro(terms) => cesaro_sum(spec, terms).map(|r| r.value),
        Route::Abel => abel_sum_default(spec).map(|r| r.value),
        Route::Reduced => {
            let n = spec.n.value();
            if !(spec.n.is_integer() && n < 0.0) {
                return Err(Error::OutOfRange(format!(
                    "reduced form needs a negative integer, got {n}"
                )));
            }
            reduced_neg_int((-n) as u32, spec.phi).map(|v| v.value)
        }
        Route::Closed => closed_value(spec),
        Route::QuarterTurnPartial => {
            let pairs = (spec.n.value().max(0.0) as usize) / 2 + 1;
            Ok(quarter_turn_partial(spec.n, pairs))
        }
        Route::QuarterTurnClosed => Ok(quarter_turn_sum(spec.n).value),
        Route::LambdaClosed => Ok(lambda_series_closed(-spec.n.value()).value),
        Route::PhasePower => phase_power(spec),
        Route::PhaseSeries => {
            let n = nonneg_exponent(spec)?;
            let coeffs = binom_prefix(spec.n, n as usize + 1);
            Ok(pick(spec, series_at_phase(&coeffs, spec.phi)?))
        }
    }
}

fn expected(case: &SuiteCase) -> Cell {
    match &case.expected_source {
        ExpectedSource::ClosedForm => Cell::from_result(closed_value(&case.spec)),
        ExpectedSource::Catalog(CatalogValue::Finite(v)) => Cell::Value(*v),
        ExpectedSource::Catalog(CatalogValue::Divergent) => Cell::Divergent,
        ExpectedSource::Literal { value, .. } => Cell::Value(*value),
        ExpectedSource::PhasePower => Cell::from_result(phase_power(&case.spec)),
    }
}

/// Evaluate one case. `tolerance` overrides the case's own tolerance.
pub fn evaluate(case: &SuiteCase, tolerance: Option<f64>) -> CaseOutcome {
    let computed = Cell::from_result(compute(case));
    let expected = expected(case);
    let mut tol = tolerance.unwrap_or(case.tolerance);
    let abs_error = match (computed, expected) {
        (Cell::Value(c), Cell::Value(e)) => {
            if case.route == Route::PhasePower || case.route == Route::PhaseSeries {
                // Absolute bound 1e-12·2ⁿ expressed in the relative pass rule.
                tol = absolute(tol, e);
            }
            (c - e).abs()
        }
        // A divergence signal is the expected outcome for a divergent entry.
        (Cell::Divergent, Cell::Divergent) => 0.0,
        _ => f64::INFINITY,
    };
    let scale = match expected {
        Cell::Value(e) => 1.0 + e.abs(),
        _ => 1.0,
    };
    let passed = abs_error <= tol * scale;
    CaseOutcome {
        case: case.clone(),
        computed,
        expected,
        abs_error,
        passed,
    }
}

/// Build and evaluate a suite. Cases run in parallel; order is preserved.
pub fn run_suite(suite: SuiteName, options: SuiteOptions) -> Result<VerificationReport> {
    if let Some(tol) = options.tolerance {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::OutOfRange(format!(
                "tolerance must be a nonnegative number, got {tol}"
            )));
        }
    }
    let cases = build_suite(suite, options.grid_step_deg)?;
    let start = Instant::now();
    let outcomes: Vec<CaseOutcome> = cases
        .par_iter()
        .map(|c| evaluate(c, options.tolerance))
        .collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    Ok(VerificationReport {
        suite,
        summary: Summary {
            total: outcomes.len(),
            passed,
            failed: outcomes.len() - passed,
        },
        cases: outcomes,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
