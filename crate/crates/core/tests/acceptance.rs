//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Every tolerance is pinned below. Criteria listed in `KNOWN_SHORTFALLS`
//! cannot be met as stated; they are still run and reported, but only an
//! unexpected failure makes the target exit non-zero.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use trigsum::closed::{special_value_catalog, CatalogValue};
use trigsum::series::quarter_turn_partial;
use trigsum::{
    abel_sum_default, binom_prefix, binomial_phase_power, classify, cos_closed,
    lambda_series_closed, partial_sum, quarter_turn_sum, reduced_neg_int, series_at_phase,
    sin_closed, ConvergenceClass, Error, SeriesKind, SeriesSpec,
};

const FINITE_TOL: f64 = 1e-10;
const ABEL_NEG_INT_TOL: f64 = 1e-6;
const REDUCED_TOL: f64 = 1e-12;
const LAMBDA_ABS_TOL: f64 = 1e-6;
const HALF_INT_ABEL_ABS_TOL: f64 = 1e-6;
const HALF_INT_PARTIAL_TERMS: usize = 100_000;
const HALF_INT_PARTIAL_TOL: f64 = 1e-3;
const PHASE_TOL_UNIT: f64 = 1e-12;
const PYTHAGORAS_REL_TOL: f64 = 1e-10;
const PYTHAGORAS_DRAWS: usize = 10_000;
const PYTHAGORAS_SEED: u64 = 0x5eed_2024;

/// With N terms the error at n = 1/2, φ = π is the whole tail of a series of
/// negative terms, about 1/√(πN) = 1.8e-3 for N = 1e5, above the 1e-3 bound.
const KNOWN_SHORTFALLS: &[u32] = &[5];

struct Outcome {
    passed: bool,
    detail: String,
}

/// Collects failed sub-checks of one criterion.
#[derive(Default)]
struct Checks {
    count: usize,
    failures: Vec<String>,
    worst: f64,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Record `|got - want|` against `bound`; track the worst ratio.
    fn within(&mut self, got: f64, want: f64, bound: f64, what: impl FnOnce() -> String) {
        let err = (got - want).abs();
        let ratio = if bound > 0.0 {
            err / bound
        } else if err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if ratio.is_nan() || ratio > self.worst {
            self.worst = if ratio.is_nan() { f64::INFINITY } else { ratio };
        }
        self.check(err <= bound, || {
            format!("{}: got {got:e}, want {want:e}", what())
        });
    }

    fn finish(self) -> Outcome {
        let mut detail = format!(
            "{} checks, worst error/bound {:.3e}",
            self.count, self.worst
        );
        if !self.failures.is_empty() {
            detail.push_str(&format!("; {} failed: ", self.failures.len()));
            detail.push_str(
                &self
                    .failures
                    .iter()
                    .take(3)
                    .cloned()
                    .collect::<Vec<_>>()
                    .join("; "),
            );
        }
        Outcome {
            passed: self.failures.is_empty(),
            detail,
        }
    }
}

fn closed(spec: &SeriesSpec) -> f64 {
    match spec.kind {
        SeriesKind::Cosine => cos_closed(spec.n, spec.phi),
        SeriesKind::Sine => sin_closed(spec.n, spec.phi),
    }
    .expect("closed form defined on the grid")
    .value
}

fn degrees(range: impl Iterator<Item = i32>) -> Vec<f64> {
    range.map(|d| f64::from(d).to_radians()).collect()
}

fn finite_integer() -> Outcome {
    let mut c = Checks::default();
    for n in 0..=10i32 {
        for kind in [SeriesKind::Cosine, SeriesKind::Sine] {
            for phi in degrees(-178..=178) {
                let spec = SeriesSpec::new(kind, n, phi);
                let got = partial_sum(&spec, n as usize + 1).unwrap().value;
                let want = closed(&spec);
                c.within(got, want, FINITE_TOL * (1.0 + want.abs()), || {
                    format!("{kind:?} n={n} phi={phi}")
                });
            }
        }
    }
    c.finish()
}

fn quarter_turn() -> Outcome {
    let mut c = Checks::default();
    for (n, want) in [
        (2, 0.0),
        (3, -2.0),
        (4, -4.0),
        (5, -4.0),
        (6, 0.0),
        (7, 8.0),
        (8, 16.0),
    ] {
        let closed = quarter_turn_sum(n).value;
        let partial = quarter_turn_partial(n.into(), n as usize / 2 + 1);
        c.within(closed, want, 0.0, || format!("quarter_turn_sum({n})"));
        c.within(partial, want, 0.0, || format!("even-index sum n={n}"));
    }
    c.finish()
}

fn negative_integer() -> Outcome {
    let grid = degrees((-84..=84).filter(|&k| k != 0).map(|k| 2 * k));
    let cases: Vec<(i32, f64)> = (1..=6)
        .flat_map(|m| grid.iter().map(move |&p| (m, p)))
        .collect();
    let rows: Vec<(i32, f64, f64, f64, f64)> = cases
        .par_iter()
        .map(|&(m, phi)| {
            let spec = SeriesSpec::cosine(-m, phi);
            let abel = abel_sum_default(&spec).map(|r| r.value).unwrap_or(f64::NAN);
            let reduced = reduced_neg_int(m as u32, phi).unwrap().value;
            (m, phi, abel, reduced, closed(&spec))
        })
        .collect();
    let mut c = Checks::default();
    for (m, phi, abel, reduced, want) in rows {
        let scale = 1.0 + want.abs();
        c.within(abel, want, ABEL_NEG_INT_TOL * scale, || {
            format!("abel m={m} phi={phi}")
        });
        c.within(reduced, want, REDUCED_TOL * scale, || {
            format!("reduced m={m} phi={phi}")
        });
    }
    c.finish()
}

fn lambda_series() -> Outcome {
    let mut c = Checks::default();
    for (i, want) in [0.5, 0.0, -0.25, -0.25, -0.125, 0.0]
        .into_iter()
        .enumerate()
    {
        let lambda = i as i32 + 1;
        let abel = abel_sum_default(&SeriesSpec::cosine(-lambda, FRAC_PI_2))
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
        c.within(abel, want, LAMBDA_ABS_TOL, || {
            format!("abel lambda={lambda}")
        });
        let closed = lambda_series_closed(f64::from(lambda)).value;
        c.within(closed, want, 0.0, || {
            format!("lambda_series_closed({lambda})")
        });
    }
    c.finish()
}

fn half_integer() -> Outcome {
    let mut c = Checks::default();
    for entry in special_value_catalog() {
        let (n, phi) = (entry.spec.n.value(), entry.spec.phi.radians());
        match entry.value {
            CatalogValue::Finite(want) if entry.spec.phi.is_half_turn() => {
                let got = partial_sum(&entry.spec, HALF_INT_PARTIAL_TERMS)
                    .unwrap()
                    .value;
                c.within(got, want, HALF_INT_PARTIAL_TOL * (1.0 + want.abs()), || {
                    format!("partial n={n} phi={phi}")
                });
            }
            CatalogValue::Finite(want) => {
                let got = abel_sum_default(&entry.spec)
                    .map(|r| r.value)
                    .unwrap_or(f64::NAN);
                c.within(got, want, HALF_INT_ABEL_ABS_TOL, || {
                    format!("abel n={n} phi={phi} [{}]", entry.description)
                });
            }
            CatalogValue::Divergent => {
                let r = abel_sum_default(&entry.spec);
                c.check(matches!(r, Err(Error::Divergent(_))), || {
                    format!("abel n={n} phi={phi} not flagged divergent: {r:?}")
                });
            }
        }
    }
    c.finish()
}

fn phase_equivalence() -> Outcome {
    let mut c = Checks::default();
    for n in 0..=20u32 {
        let coeffs = binom_prefix((n as i32).into(), n as usize + 1);
        let bound = PHASE_TOL_UNIT * 2f64.powi(n as i32);
        for phi in degrees(-180..=180) {
            let (pc, ps) = binomial_phase_power(n, phi).unwrap();
            let (hc, hs) = series_at_phase(&coeffs, phi).unwrap();
            let cc = cos_closed(n as i32, phi).unwrap().value;
            let cs = sin_closed(n as i32, phi).unwrap().value;
            let at = || format!("n={n} phi={phi}");
            c.within(pc, hc, bound, || format!("cos power vs horner {}", at()));
            c.within(ps, hs, bound, || format!("sin power vs horner {}", at()));
            c.within(pc, cc, bound, || format!("cos power vs closed {}", at()));
            c.within(ps, cs, bound, || format!("sin power vs closed {}", at()));
        }
    }
    c.finish()
}

fn pythagorean() -> Outcome {
    let mut rng = StdRng::seed_from_u64(PYTHAGORAS_SEED);
    let mut c = Checks::default();
    for _ in 0..PYTHAGORAS_DRAWS {
        let n: f64 = rng.gen_range(-3.0..=3.0);
        let phi: f64 = rng.gen_range(-3.0..3.0);
        let cv = cos_closed(n, phi).unwrap().value;
        let sv = sin_closed(n, phi).unwrap().value;
        let want = (2.0 * (phi / 2.0).cos()).powf(2.0 * n);
        c.within(cv * cv + sv * sv, want, PYTHAGORAS_REL_TOL * want, || {
            format!("n={n} phi={phi}")
        });
    }
    c.finish()
}

fn divergence_honesty() -> Outcome {
    let spec = SeriesSpec::cosine(-0.5, PI);
    let mut c = Checks::default();
    let class = classify(&spec);
    c.check(class == ConvergenceClass::Divergent, || {
        format!("classify gave {class}")
    });
    let r = abel_sum_default(&spec);
    c.check(matches!(r, Err(Error::Divergent(_))), || {
        format!("abel_sum gave {r:?}")
    });

    // The command line must not print a value either, whatever the method.
    for method in ["abel", "partial", "cesaro"] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = trigsum::cli::run(
            [
                "trigsum", "sum", "--kind", "cos", "--n", "-0.5", "--phi", "180deg", "--method",
                method,
            ],
            &mut out,
            &mut err,
        );
        let text = String::from_utf8_lossy(&out);
        c.check(code == 3 && !text.contains("value="), || {
            format!("cli --method {method}: exit {code}, stdout {text:?}")
        });
    }
    c.finish()
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            1,
            "finite-integer partial sums match closed forms",
            finite_integer,
        ),
        (
            2,
            "quarter-turn sums equal the integer literals",
            quarter_turn,
        ),
        (
            3,
            "negative-integer Abel sums and reduced forms",
            negative_integer,
        ),
        (4, "lambda-series Abel sums at 90 degrees", lambda_series),
        (5, "half-integer catalog values", half_integer),
        (6, "phase-path equivalence", phase_equivalence),
        (7, "Pythagorean property of the closed forms", pythagorean),
        (
            8,
            "divergence honesty at (n = -1/2, phi = pi)",
            divergence_honesty,
        ),
    ];

    let start = Instant::now();
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        let known = !outcome.passed && KNOWN_SHORTFALLS.contains(&id);
        println!(
            "criterion {id}: {verdict} - {title} ({}; {:.2}s){}",
            outcome.detail,
            t.elapsed().as_secs_f64(),
            if known { " [known shortfall]" } else { "" }
        );
        if !outcome.passed && !known {
            unexpected.push(id);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance: total {elapsed:.2}s");

    if elapsed >= 60.0 {
        println!("acceptance: FAIL - runtime budget of 60s exceeded");
        return ExitCode::FAILURE;
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
