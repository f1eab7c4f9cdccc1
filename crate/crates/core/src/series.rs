//! Direct evaluation of `Σ (n k) cos(kφ)` and `Σ (n k) sin(kφ)`.
//!
//! These routines never touch the closed forms; they are the oracle the
//! closed forms are checked against. Three summation methods are provided:
//! plain partial sums, the first-order Cesàro mean, and an Abel mean that
//! samples `Σ (n k) r^k trig(kφ)` at radii below 1 and extrapolates to
//! `r = 1` with a polynomial in `1 - r`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::binom::{binom_prefix, ExponentN};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

/// Radii sampled by [`abel_sum_default`].
pub const DEFAULT_ABEL_RADII: [f64; 9] =
    [0.96, 0.97, 0.975, 0.98, 0.985, 0.99, 0.992, 0.994, 0.996];

/// Per-radius term budget used by [`abel_sum_default`].
pub const DEFAULT_ABEL_TERMS: usize = 200_000;

/// Term budget for partial sums when the caller has no better estimate.
pub const DEFAULT_PARTIAL_TERMS: usize = 100_000;

/// `|f(r)|` above this is reported as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;

/// A damped sum stops once its tail bound drops below this fraction of the
/// running magnitude.
const ABEL_TAIL_FRACTION: f64 = 1e-20;

/// Minimum power-law exponent of `|F(r)| ~ (1-r)^-a` treated as unbounded growth.
const GROWTH_EXPONENT: f64 = 0.01;

/// Angular distance from `±π` inside which an angle counts as a half turn.
const HALF_TURN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn from_radians(radians: f64) -> Self {
        Self(radians)
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Self(degrees.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `(-π, π]`.
    pub fn reduced(self) -> f64 {
        let r = self.0.rem_euclid(TAU);
        if r > PI {
            r - TAU
        } else {
            r
        }
    }

    /// `φ ≡ ±π (mod 2π)`, where `cos(φ/2)` vanishes.
    pub fn is_half_turn(self) -> bool {
        (self.reduced().abs() - PI).abs() <= HALF_TURN_EPS
    }

    /// Open interval `(-π, π)`, the domain of fractional-exponent closed forms.
    pub fn in_principal_domain(self) -> bool {
        self.0 > -PI && self.0 < PI
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Self(radians)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Cosine,
    Sine,
}

impl SeriesKind {
    pub fn short_name(self) -> &'static str {
        match self {
            SeriesKind::Cosine => "cos",
            SeriesKind::Sine => "sin",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// One series `Σ (n k) trig(kφ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub n: ExponentN,
    pub phi: Angle,
}

impl SeriesSpec {
    pub fn new(kind: SeriesKind, n: impl Into<ExponentN>, phi: impl Into<Angle>) -> Self {
        Self {
            kind,
            n: n.into(),
            phi: phi.into(),
        }
    }

    pub fn cosine(n: impl Into<ExponentN>, phi: impl Into<Angle>) -> Self {
        Self::new(SeriesKind::Cosine, n, phi)
    }

    pub fn sine(n: impl Into<ExponentN>, phi: impl Into<Angle>) -> Self {
        Self::new(SeriesKind::Sine, n, phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Partial,
    Cesaro,
    Abel,
    Closed,
    Phase,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Partial => "partial",
            Method::Cesaro => "cesaro",
            Method::Abel => "abel",
            Method::Closed => "closed",
            Method::Phase => "phase",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    /// Nonnegative integer exponent; the series terminates at `k = n`.
    Finite,
    AbsolutelyConvergent,
    ConditionallyConvergent,
    /// Not convergent, but the Abel and/or Cesàro means exist.
    SummableOnly,
    Divergent,
}

impl ConvergenceClass {
    pub fn name(self) -> &'static str {
        match self {
            ConvergenceClass::Finite => "finite",
            ConvergenceClass::AbsolutelyConvergent => "absolutely_convergent",
            ConvergenceClass::ConditionallyConvergent => "conditionally_convergent",
            ConvergenceClass::SummableOnly => "summable_only",
            ConvergenceClass::Divergent => "divergent",
        }
    }
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationResult {
    pub value: f64,
    pub method: Method,
    pub terms_used: usize,
    pub residual_estimate: f64,
    pub convergence: ConvergenceClass,
}

/// Iterator over `(cos kφ, sin kφ)` for `k = 0, 1, 2, ...`.
///
/// Each step applies the angle-addition formulas to the previous pair, so only
/// one `sin_cos` call is made. The three-term Chebyshev form loses accuracy
/// like `k²ε` near `φ = 0` and `φ = π`; the rotation form stays near `kε`.
#[derive(Debug, Clone)]
pub struct MultipleAngles {
    step: (f64, f64),
    current: (f64, f64),
}

impl MultipleAngles {
    pub fn new(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            step: (c, s),
            current: (1.0, 0.0),
        }
    }
}

impl Iterator for MultipleAngles {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.current;
        let (c, s) = self.current;
        let (c1, s1) = self.step;
        self.current = (c * c1 - s * s1, s * c1 + c * s1);
        Some(out)
    }
}

fn trig_terms(spec: &SeriesSpec, count: usize) -> impl Iterator<Item = f64> {
    let kind = spec.kind;
    binom_prefix(spec.n, count)
        .into_iter()
        .zip(MultipleAngles::new(spec.phi.radians()))
        .map(move |(c, (cos_k, sin_k))| match kind {
            SeriesKind::Cosine => c * cos_k,
            SeriesKind::Sine => c * sin_k,
        })
}

/// Convergence behaviour of the series on the unit circle.
pub fn classify(spec: &SeriesSpec) -> ConvergenceClass {
    let n = spec.n.value();
    if spec.n.is_nonneg_integer() {
        return ConvergenceClass::Finite;
    }
    if n > 0.0 {
        return ConvergenceClass::AbsolutelyConvergent;
    }
    let half_turn = spec.phi.is_half_turn();
    if n > -1.0 {
        // At φ = π every term (n k)(-1)^k is positive: (1-1)^n = ∞.
        if half_turn {
            ConvergenceClass::Divergent
        } else {
            ConvergenceClass::ConditionallyConvergent
        }
    } else if half_turn {
        ConvergenceClass::Divergent
    } else {
        ConvergenceClass::SummableOnly
    }
}

/// Sum of the first `terms` terms.
pub fn partial_sum(spec: &SeriesSpec, terms: usize) -> Result<SummationResult> {
    if terms == 0 {
        return Err(Error::InsufficientTerms(
            "partial sum needs at least one term".into(),
        ));
    }
    let mut sum = 0.0;
    let mut last = 0.0;
    for t in trig_terms(spec, terms) {
        sum += t;
        last = t;
    }
    Ok(SummationResult {
        value: sum,
        method: Method::Partial,
        terms_used: terms,
        residual_estimate: last.abs(),
        convergence: classify(spec),
    })
}

/// First-order Cesàro mean of the first `terms` partial sums.
///
/// The residual compares the average of the running means over the last
/// `⌈terms/4⌉` steps with the average over the window before it.
pub fn cesaro_sum(spec: &SeriesSpec, terms: usize) -> Result<SummationResult> {
    if terms < 2 {
        return Err(Error::InsufficientTerms(
            "Cesàro mean needs at least two terms".into(),
        ));
    }
    let mut partial = 0.0;
    let mut cumulative = 0.0;
    let mut means = Vec::with_capacity(terms);
    for (j, t) in trig_terms(spec, terms).enumerate() {
        partial += t;
        cumulative += partial;
        means.push(cumulative / (j + 1) as f64);
    }
    let window = terms.div_ceil(4);
    let avg = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let last = avg(&means[terms - window..]);
    let previous = avg(&means[terms - 2 * window..terms - window]);
    Ok(SummationResult {
        value: cumulative / terms as f64,
        method: Method::Cesaro,
        terms_used: terms,
        residual_estimate: (last - previous).abs(),
        convergence: classify(spec),
    })
}

/// `Σ (n k) (r e^{iφ})^k` accumulated in double-double precision.
struct DampedSum {
    re: f64,
    im: f64,
    terms: usize,
}

fn damped_sum(n: f64, phi: f64, r: f64, budget: usize) -> DampedSum {
    let (s, c) = phi.sin_cos();
    let z_re = DoubleDouble::from_prod(r, c);
    let z_im = DoubleDouble::from_prod(r, s);

    let mut coeff = DoubleDouble::ONE;
    let mut w_re = DoubleDouble::ONE;
    let mut w_im = DoubleDouble::ZERO;
    let mut sum_re = DoubleDouble::ZERO;
    let mut sum_im = DoubleDouble::ZERO;
    let mut r_pow = 1.0f64;
    let mut used = budget;

    for k in 0..budget {
        sum_re = sum_re + coeff * w_re;
        sum_im = sum_im + coeff * w_im;

        let kf = k as f64;
        if kf > n {
            // For j >= k the ratio |c[j+1]/c[j]| = |n-j|/(j+1) never exceeds
            // max(|n-k|/(k+1), 1), so the tail is dominated by a geometric series.
            let rho = r * ((kf - n) / (kf + 1.0)).max(1.0);
            let mag = coeff.abs().to_f64() * r_pow;
            let scale = sum_re.to_f64().hypot(sum_im.to_f64()).max(1.0);
            if mag == 0.0 || (rho < 1.0 && mag * rho / (1.0 - rho) <= ABEL_TAIL_FRACTION * scale) {
                used = k + 1;
                break;
            }
        }

        coeff = (coeff * DoubleDouble::from_sum(n, -kf)).div_f64(kf + 1.0);
        let next_re = w_re * z_re - w_im * z_im;
        w_im = w_re * z_im + w_im * z_re;
        w_re = next_re;
        r_pow *= r;
    }

    DampedSum {
        re: sum_re.to_f64(),
        im: sum_im.to_f64(),
        terms: used,
    }
}

/// Neville evaluation at `x = 0` of the interpolating polynomial.
///
/// Returns the full-degree value and its difference from the estimate that
/// drops the node farthest from the origin.
fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len();
    let mut table = ys.to_vec();
    let mut without_first = ys[n - 1];
    for m in 1..n {
        for i in 0..n - m {
            table[i] = (-xs[i + m] * table[i] + xs[i] * table[i + 1]) / (xs[i] - xs[i + m]);
        }
        if m == n - 2 {
            without_first = table[1];
        }
    }
    if n == 2 {
        without_first = ys[1];
    }
    (table[0], table[0] - without_first)
}

fn validate_radii(radii: &[f64]) -> Result<()> {
    if radii.len() < 3 {
        return Err(Error::InvalidRadii(format!(
            "need at least 3 radii, got {}",
            radii.len()
        )));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::InvalidRadii(format!("radius {r} outside (0, 1)")));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidRadii(
            "radii must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Log-log growth rate of `|F|` between two radii.
fn growth_exponent(f0: f64, f1: f64, r0: f64, r1: f64) -> f64 {
    (f1 / f0).ln() / ((1.0 - r0) / (1.0 - r1)).ln()
}

/// Abel mean `lim_{r→1⁻} Σ (n k) r^k trig(kφ)`.
///
/// `terms` is the per-radius budget and must satisfy `r_max^terms < 1e-16`.
/// Each damped sum stops early once its geometric tail bound is negligible.
/// Divergence is reported when any sample exceeds [`DIVERGENCE_THRESHOLD`] or
/// when `|F(r)|` grows like a power of `1/(1-r)` across the whole schedule.
pub fn abel_sum(spec: &SeriesSpec, terms: usize, radii: &[f64]) -> Result<SummationResult> {
    validate_radii(radii)?;
    let r_max = radii[radii.len() - 1];
    if (terms as f64) * r_max.ln() >= (1e-16f64).ln() {
        return Err(Error::InsufficientTerms(format!(
            "{terms} terms leave r^terms >= 1e-16 at r = {r_max}"
        )));
    }

    let n = spec.n.value();
    let phi = spec.phi.radians();
    let mut samples = Vec::with_capacity(radii.len());
    let mut moduli = Vec::with_capacity(radii.len());
    let mut terms_used = 0;
    for &r in radii {
        let d = damped_sum(n, phi, r, terms);
        let modulus = d.re.hypot(d.im);
        if !modulus.is_finite() || modulus > DIVERGENCE_THRESHOLD {
            return Err(Error::Divergent(format!(
                "|f(r)| = {modulus:e} at r = {r} exceeds {DIVERGENCE_THRESHOLD:e}"
            )));
        }
        samples.push(match spec.kind {
            SeriesKind::Cosine => d.re,
            SeriesKind::Sine => d.im,
        });
        moduli.push(modulus);
        terms_used = terms_used.max(d.terms);
    }

    let last = radii.len() - 1;
    let increasing = moduli.windows(2).all(|w| w[1] > w[0]);
    if increasing && moduli[0] > 0.0 {
        let first_rate = growth_exponent(moduli[0], moduli[1], radii[0], radii[1]);
        let last_rate =
            growth_exponent(moduli[last - 1], moduli[last], radii[last - 1], radii[last]);
        // Near a pole the rate decays toward 0 as r → 1; true divergence keeps it.
        if last_rate >= GROWTH_EXPONENT && last_rate >= 0.9 * first_rate {
            return Err(Error::Divergent(format!(
                "|f(r)| grows like (1-r)^-{last_rate:.3} as r -> 1"
            )));
        }
    }

    let xs: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    let (value, correction) = extrapolate_to_zero(&xs, &samples);
    Ok(SummationResult {
        value,
        method: Method::Abel,
        terms_used,
        residual_estimate: correction.abs(),
        convergence: classify(spec),
    })
}

/// [`abel_sum`] with [`DEFAULT_ABEL_TERMS`] and [`DEFAULT_ABEL_RADII`].
pub fn abel_sum_default(spec: &SeriesSpec) -> Result<SummationResult> {
    abel_sum(spec, DEFAULT_ABEL_TERMS, &DEFAULT_ABEL_RADII)
}

/// `1 - (n 2) + (n 4) - ...` over the first `pairs` even indices.
///
/// This is the cosine series at `φ = π/2` with the vanishing odd terms
/// dropped, so integer rows are summed without any trigonometric rounding.
pub fn quarter_turn_partial(n: ExponentN, pairs: usize) -> f64 {
    binom_prefix(n, 2 * pairs)
        .iter()
        .step_by(2)
        .enumerate()
        .map(|(j, c)| if j % 2 == 0 { *c } else { -*c })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn partial_sum_examples() {
        let r = partial_sum(&SeriesSpec::cosine(2, 0.0), 3).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.residual_estimate, 1.0);
        assert_eq!(r.convergence, ConvergenceClass::Finite);

        let r = partial_sum(&SeriesSpec::cosine(4, FRAC_PI_2), 5).unwrap();
        assert!((r.value + 4.0).abs() < 1e-14);

        // 3·sin(π/2) + 3·sin(π) + 1·sin(3π/2) = 2
        let r = partial_sum(&SeriesSpec::sine(3, FRAC_PI_2), 4).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(matches!(
            partial_sum(&SeriesSpec::cosine(1, 0.0), 0),
            Err(Error::InsufficientTerms(_))
        ));
        assert!(matches!(
            cesaro_sum(&SeriesSpec::cosine(1, 0.0), 1),
            Err(Error::InsufficientTerms(_))
        ));
    }

    #[test]
    fn cesaro_grandi_at_quarter_turn() {
        let r = cesaro_sum(&SeriesSpec::cosine(-1, FRAC_PI_2), 400).unwrap();
        assert!((r.value - 0.5).abs() < 0.01, "{}", r.value);
        assert!(r.residual_estimate < 0.01);
    }

    #[test]
    fn cesaro_constant_series() {
        let r = cesaro_sum(&SeriesSpec::cosine(0, 1.234), 10).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.residual_estimate, 0.0);
    }

    #[test]
    fn cesaro_first_order_does_not_settle_for_n_minus_two() {
        // At φ = π/2 the series is 1 - 3 + 5 - 7 + ... with partial sums
        // 1, 1, -2, -2, 3, 3, ...; each block of four sums to -2, so the
        // (C,1) mean after 4j terms is exactly -1/2 and after 4j+2 terms
        // is (2j+2)/(4j+2). The limit that Abel assigns (0) is not reached.
        let mut partial = 0i64;
        let mut cumulative = 0i64;
        for k in 0..2000i64 {
            let term = match k % 4 {
                0 => k + 1,
                2 => -(k + 1),
                _ => 0,
            };
            partial += term;
            cumulative += partial;
        }
        let oracle = cumulative as f64 / 2000.0;
        assert_eq!(oracle, -0.5);
        let r = cesaro_sum(&SeriesSpec::cosine(-2, FRAC_PI_2), 2000).unwrap();
        assert!((r.value - oracle).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn abel_examples() {
        let r = abel_sum_default(&SeriesSpec::cosine(-0.5, 0.0)).unwrap();
        assert!((r.value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);

        let err = abel_sum_default(&SeriesSpec::cosine(-0.5, PI)).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)), "{err:?}");

        let r = abel_sum_default(&SeriesSpec::cosine(-3, FRAC_PI_2)).unwrap();
        assert!((r.value + 0.25).abs() < 1e-6, "{}", r.value);
        assert_eq!(r.method, Method::Abel);
        assert!(r.terms_used > 0);
    }

    #[test]
    fn abel_grandi() {
        for (phi, tol) in [(0.0, 1e-12), (1.0, 1e-12), (-2.0, 1e-10), (3.0, 1e-7)] {
            let r = abel_sum_default(&SeriesSpec::cosine(-1, phi)).unwrap();
            assert!((r.value - 0.5).abs() < tol, "phi={phi} value={}", r.value);
            assert!(r.residual_estimate < 1e3 * tol.max(1e-12));
        }
    }

    #[test]
    fn abel_flags_integer_pole_by_magnitude_or_growth() {
        for n in [-1.0, -2.0, -1.5, -0.25, -0.05] {
            let err = abel_sum_default(&SeriesSpec::cosine(n, PI)).unwrap_err();
            assert!(matches!(err, Error::Divergent(_)), "n={n}: {err:?}");
        }
    }

    #[test]
    fn abel_near_pole_is_not_called_divergent() {
        // Finite Abel value, steep but decaying growth rate.
        let phi = 179f64.to_radians();
        let r = abel_sum_default(&SeriesSpec::cosine(-2, phi));
        assert!(r.is_ok(), "{r:?}");
    }

    #[test]
    fn abel_rejects_bad_radii() {
        let spec = SeriesSpec::cosine(-1, 1.0);
        for radii in [
            vec![0.5, 0.6],
            vec![0.5, 0.7, 0.6],
            vec![0.5, 0.6, 1.0],
            vec![0.0, 0.5, 0.6],
            vec![0.5, 0.5, 0.6],
        ] {
            assert!(matches!(
                abel_sum(&spec, 10_000, &radii),
                Err(Error::InvalidRadii(_))
            ));
        }
        assert!(matches!(
            abel_sum(&spec, 100, &[0.5, 0.6, 0.99]),
            Err(Error::InsufficientTerms(_))
        ));
    }

    #[test]
    fn abel_sine_series() {
        // Σ (-1 k) sin kφ = Im (1+p)^-1 = -tan(φ/2)/2
        let phi = 1.1;
        let r = abel_sum_default(&SeriesSpec::sine(-1, phi)).unwrap();
        assert!(
            (r.value + (phi / 2.0).tan() / 2.0).abs() < 1e-9,
            "{}",
            r.value
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&SeriesSpec::cosine(5, 1.0)),
            ConvergenceClass::Finite
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-0.5, PI)),
            ConvergenceClass::Divergent
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(0.5, PI)),
            ConvergenceClass::AbsolutelyConvergent
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-0.5, 1.0)),
            ConvergenceClass::ConditionallyConvergent
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-1, 0.0)),
            ConvergenceClass::SummableOnly
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-2.5, 0.0)),
            ConvergenceClass::SummableOnly
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-3, 2.0)),
            ConvergenceClass::SummableOnly
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-3, -PI)),
            ConvergenceClass::Divergent
        );
        assert_eq!(
            classify(&SeriesSpec::cosine(-1.5, 3.0 * PI)),
            ConvergenceClass::Divergent
        );
        assert_eq!(
            classify(&SeriesSpec::sine(2.5, FRAC_PI_3)),
            ConvergenceClass::AbsolutelyConvergent
        );
    }

    #[test]
    fn half_turn_detection() {
        assert!(Angle::from_radians(PI).is_half_turn());
        assert!(Angle::from_radians(-PI).is_half_turn());
        assert!(Angle::from_degrees(180.0).is_half_turn());
        assert!(Angle::from_degrees(540.0).is_half_turn());
        assert!(!Angle::from_degrees(179.0).is_half_turn());
        assert!(!Angle::from_radians(0.0).is_half_turn());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn recurrence_fidelity() {
        for &phi in &[1e-3, 0.01, 0.1, 1.0, 2.0, 3.0, 3.1, 3.14159, PI, -PI, -1.7] {
            for (k, (c, s)) in MultipleAngles::new(phi).take(10_001).enumerate() {
                let (ds, dc) = (k as f64 * phi).sin_cos();
                assert!((c - dc).abs() <= 1e-11, "phi={phi} k={k}");
                assert!((s - ds).abs() <= 1e-11, "phi={phi} k={k}");
            }
        }
    }

    #[test]
    fn neville_reproduces_polynomials() {
        let xs = [0.1, 0.2, 0.4, 0.5];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x + x * x * x).collect();
        let (v, _) = extrapolate_to_zero(&xs, &ys);
        assert!((v - 3.0).abs() < 1e-13);
    }

    #[test]
    fn quarter_turn_partial_rows() {
        let literal = [
            (2, 0.0),
            (3, -2.0),
            (4, -4.0),
            (5, -4.0),
            (6, 0.0),
            (7, 8.0),
            (8, 16.0),
        ];
        for (n, v) in literal {
            assert_eq!(
                quarter_turn_partial(n.into(), n as usize / 2 + 1),
                v,
                "n={n}"
            );
        }
    }

    proptest! {
        #[test]
        fn termination(n in 0i32..=30, extra in 1usize..50, phi in -PI..PI) {
            let spec = SeriesSpec::cosine(n, phi);
            let a = partial_sum(&spec, n as usize + 1).unwrap().value;
            let b = partial_sum(&spec, n as usize + 1 + extra).unwrap().value;
            prop_assert_eq!(a, b);
            let spec = SeriesSpec::sine(n, phi);
            let a = partial_sum(&spec, n as usize + 1).unwrap().value;
            let b = partial_sum(&spec, n as usize + 1 + extra).unwrap().value;
            prop_assert_eq!(a, b);
        }

        #[test]
        fn parity(n in -6.0f64..6.0, phi in -PI..PI, terms in 1usize..200) {
            let c = partial_sum(&SeriesSpec::cosine(n, phi), terms).unwrap().value;
            let c_neg = partial_sum(&SeriesSpec::cosine(n, -phi), terms).unwrap().value;
            prop_assert_eq!(c, c_neg);
            let s = partial_sum(&SeriesSpec::sine(n, phi), terms).unwrap().value;
            let s_neg = partial_sum(&SeriesSpec::sine(n, -phi), terms).unwrap().value;
            prop_assert_eq!(s, -s_neg);
        }
    }
}
