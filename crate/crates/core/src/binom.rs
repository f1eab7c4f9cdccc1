//! Generalized binomial coefficients `(n k) = n(n-1)...(n-k+1) / k!`.
//!
//! Integer exponents with `|n| <= 64` go through exact big-integer arithmetic;
//! everything else uses the multiplicative recurrence
//! `c[k+1] = c[k] * (n - k) / (k + 1)` in `f64`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

/// Largest `|n|` for which integer exponents use the exact path.
pub const EXACT_INTEGER_LIMIT: i64 = 64;

/// Exponent of the binomial `(1 + x)^n`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExponentN(f64);

impl ExponentN {
    pub fn new(value: f64) -> Self {
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Exact test: `2.9999999` is not an integer.
    pub fn is_integer(self) -> bool {
        self.0.is_finite() && self.0.fract() == 0.0
    }

    pub fn is_nonneg_integer(self) -> bool {
        self.is_integer() && self.0 >= 0.0
    }

    /// The exponent as `i64` when it is an integer that fits the exact path.
    fn exact_integer(self) -> Option<i64> {
        if self.is_integer() && self.0.abs() <= EXACT_INTEGER_LIMIT as f64 {
            Some(self.0 as i64)
        } else {
            None
        }
    }
}

impl From<f64> for ExponentN {
    fn from(value: f64) -> Self {
        Self(value)
    }
}

impl From<i32> for ExponentN {
    fn from(value: i32) -> Self {
        Self(f64::from(value))
    }
}

/// A single coefficient together with its indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomCoeff {
    pub n: ExponentN,
    pub k: i64,
    pub value: f64,
}

impl BinomCoeff {
    pub fn new(n: ExponentN, k: i64) -> Self {
        Self {
            n,
            k,
            value: gen_binom(n, k),
        }
    }
}

/// `C(top, j)` for a nonnegative top index, exact.
fn big_choose(top: &BigUint, j: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= top - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

fn exact_binom(n: i64, k: i64) -> f64 {
    debug_assert!(k >= 0);
    let k = k as u64;
    if n >= 0 {
        let n = n as u64;
        if k > n {
            return 0.0;
        }
        let j = k.min(n - k);
        return big_choose(&BigUint::from(n), j)
            .to_f64()
            .unwrap_or(f64::INFINITY);
    }
    // (-m k) = (-1)^k (m+k-1 k) = (-1)^k (m+k-1 m-1)
    let m = n.unsigned_abs();
    let top = BigUint::from(m - 1) + BigUint::from(k);
    let magnitude = big_choose(&top, k.min(m - 1))
        .to_f64()
        .unwrap_or(f64::INFINITY);
    if k.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    }
}

fn recurrence_binom(n: f64, k: i64) -> f64 {
    let mut c = 1.0;
    for j in 0..k {
        let j = j as f64;
        c = c * (n - j) / (j + 1.0);
    }
    c
}

/// Generalized binomial coefficient `(n k)`; `0` for `k < 0`.
pub fn gen_binom(n: ExponentN, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    if k == 0 {
        return 1.0;
    }
    match n.exact_integer() {
        Some(ni) => exact_binom(ni, k),
        None => recurrence_binom(n.value(), k),
    }
}

/// The first `count` coefficients `(n 0), ..., (n count-1)` in one pass.
pub fn binom_prefix(n: ExponentN, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    match n.exact_integer() {
        Some(ni) if ni >= 0 => {
            let mut c = BigUint::one();
            let top = ni as u64;
            for k in 0..count as u64 {
                if k > top {
                    out.resize(count, 0.0);
                    break;
                }
                out.push(c.to_f64().unwrap_or(f64::INFINITY));
                c = c * BigUint::from(top - k) / BigUint::from(k + 1);
            }
        }
        Some(ni) => {
            let mut c = BigInt::one();
            for k in 0..count as i64 {
                out.push(c.to_f64().unwrap_or(f64::NAN));
                c = c * BigInt::from(ni - k) / BigInt::from(k + 1);
            }
        }
        None => {
            let nv = n.value();
            let mut c = 1.0;
            for k in 0..count {
                out.push(c);
                let kf = k as f64;
                c = c * (nv - kf) / (kf + 1.0);
            }
        }
    }
    out
}
