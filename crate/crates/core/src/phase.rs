//! Conjugate phase-pair evaluation.
//!
//! With `p = cosφ + i·sinφ` and `q = cosφ - i·sinφ`, a power series
//! `Δ(x) = Σ a_k x^k` gives
//!
//! ```text
//! Σ a_k cos(kφ) = (Δ(p) + Δ(q)) / 2
//! Σ a_k sin(kφ) = (Δ(p) - Δ(q)) / 2i
//! ```
//!
//! Only finite coefficient sequences are handled here; infinite series go
//! through [`crate::series`].

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::series::Angle;

/// Largest exponent accepted by [`binomial_phase_power`].
pub const MAX_PHASE_EXPONENT: u32 = 64;

/// Bound on the imaginary residue of `(Δ(p) + Δ(q)) / 2`, relative to `Σ|a_k|`.
const RESIDUE_BOUND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ONE: Complex = Complex { re: 1.0, im: 0.0 };
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// `cos θ + i·sin θ`.
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { re: c, im: s }
    }

    pub fn conj(self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn scale(self, s: f64) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    /// `self^e` by binary exponentiation.
    pub fn powu(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Complex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// The conjugate unit-circle points `p`, `q` with `pq = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePair {
    pub p: Complex,
    pub q: Complex,
    pub phi: Angle,
}

impl PhasePair {
    /// Principal square root of `p`: `cos(φ/2) + i·sin(φ/2)`.
    ///
    /// With this branch `√p + √q = 2cos(φ/2)`, positive on `(-π, π)`.
    pub fn sqrt_p(&self) -> Complex {
        Complex::unit(0.5 * self.phi.radians())
    }

    pub fn sqrt_q(&self) -> Complex {
        self.sqrt_p().conj()
    }

    /// `(p^α, q^α)` for `α = half_steps / 2`, built from powers of `√p`.
    pub fn half_integer_powers(&self, half_steps: u32) -> (Complex, Complex) {
        (
            self.sqrt_p().powu(half_steps),
            self.sqrt_q().powu(half_steps),
        )
    }
}

pub fn make_phase_pair(phi: impl Into<Angle>) -> PhasePair {
    let phi = phi.into();
    let p = Complex::unit(phi.radians());
    PhasePair {
        p,
        q: p.conj(),
        phi,
    }
}

fn horner(coeffs: &[f64], z: Complex) -> Complex {
    coeffs
        .iter()
        .rev()
        .fold(Complex::ZERO, |acc, &a| acc * z + Complex::new(a, 0.0))
}

/// `(Σ a_k cos kφ, Σ a_k sin kφ)` from `Δ(p)` and `Δ(q)`.
///
/// The imaginary residues of `(Δ(p) + Δ(q))/2` and of `(Δ(p) - Δ(q))/2i` are
/// checked against `1e-12·Σ|a_k|`.
pub fn series_at_phase(coeffs: &[f64], phi: impl Into<Angle>) -> Result<(f64, f64)> {
    if coeffs.is_empty() {
        return Err(Error::OutOfRange("coefficient sequence is empty".into()));
    }
    if let Some(a) = coeffs.iter().find(|a| !a.is_finite()) {
        return Err(Error::OutOfRange(format!("non-finite coefficient {a}")));
    }
    let pair = make_phase_pair(phi);
    let at_p = horner(coeffs, pair.p);
    let at_q = horner(coeffs, pair.q);

    let cos_part = (at_p + at_q).scale(0.5);
    // (a + ib) / 2i = (b - ia) / 2
    let diff = (at_p - at_q).scale(0.5);
    let sin_part = Complex::new(diff.im, -diff.re);

    let bound = RESIDUE_BOUND * coeffs.iter().map(|a| a.abs()).sum::<f64>();
    for (name, residue) in [("cosine", cos_part.im), ("sine", sin_part.im)] {
        if residue.abs() > bound {
            return Err(Error::Inconsistency(format!(
                "{name} sum keeps imaginary residue {residue:e} > {bound:e}"
            )));
        }
    }
    Ok((cos_part.re, sin_part.re))
}

/// `(1+p)ⁿ` as `(Σ (n k) cos kφ, Σ (n k) sin kφ)` for `0 <= n <= 64`.
///
/// `(1+q)ⁿ` is the conjugate of `(1+p)ⁿ`, so the real and imaginary parts are
/// the two series sums.
pub fn binomial_phase_power(n: u32, phi: impl Into<Angle>) -> Result<(f64, f64)> {
    if n > MAX_PHASE_EXPONENT {
        return Err(Error::OutOfRange(format!(
            "phase power needs n <= {MAX_PHASE_EXPONENT}, got {n}"
        )));
    }
    let pair = make_phase_pair(phi);
    let z = (Complex::ONE + pair.p).powu(n);
    Ok((z.re, z.im))
}
