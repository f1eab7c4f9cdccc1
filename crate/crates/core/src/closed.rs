//! Closed forms of the binomial multiple-angle series.
//!
//! ```text
//! Σ (n k) cos(kφ) = 2ⁿ cosⁿ(φ/2) cos(nφ/2)
//! Σ (n k) sin(kφ) = 2ⁿ cosⁿ(φ/2) sin(nφ/2)
//! ```
//!
//! Integer exponents are valid for every angle (the power is a plain product,
//! so its sign follows `cos(φ/2)`). Fractional exponents use the principal
//! branch and need `2cos(φ/2) > 0`, i.e. `φ` in `(-π, π)`. Negative exponents
//! have poles where `cos(φ/2) = 0`.

use std::f64::consts::FRAC_PI_4;
use std::fmt;

use crate::binom::ExponentN;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::series::{Angle, SeriesSpec};

/// `|cos(φ/2)|` at or below this counts as zero. `cos(π/2)` in `f64` is 6e-17.
const POLE_EPS: f64 = 8.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormId {
    GeneralCos,
    GeneralSin,
    ReducedNegInt,
    QuarterTurn,
    LambdaSeries,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormValue {
    pub value: f64,
    /// `false` marks a placeholder (e.g. a divergent catalog entry) whose
    /// value must not be compared.
    pub domain_ok: bool,
    pub form: FormId,
}

impl ClosedFormValue {
    fn ok(value: f64, form: FormId) -> Self {
        Self {
            value,
            domain_ok: true,
            form,
        }
    }
}

/// `(2cos(φ/2))ⁿ` with the domain and pole checks shared by both forms.
fn half_angle_power(n: ExponentN, phi: Angle) -> Result<f64> {
    let nv = n.value();
    let half = 0.5 * phi.radians();
    let c = half.cos();
    if nv < 0.0 && c.abs() <= POLE_EPS {
        return Err(Error::Pole {
            n: nv,
            phi: phi.radians(),
        });
    }
    let base = 2.0 * c;
    if n.is_integer() {
        if nv.abs() <= f64::from(i32::MAX) {
            Ok(base.powi(nv as i32))
        } else {
            Ok(base.powf(nv))
        }
    } else {
        let in_domain = phi.radians().abs() <= std::f64::consts::PI && c > 0.0;
        if !in_domain {
            return Err(Error::Domain {
                n: nv,
                phi: phi.radians(),
            });
        }
        Ok((nv * base.ln()).exp())
    }
}

/// `2ⁿ cosⁿ(φ/2) cos(nφ/2)`.
pub fn cos_closed(n: impl Into<ExponentN>, phi: impl Into<Angle>) -> Result<ClosedFormValue> {
    let (n, phi) = (n.into(), phi.into());
    let power = half_angle_power(n, phi)?;
    let value = power * (0.5 * n.value() * phi.radians()).cos();
    Ok(ClosedFormValue::ok(value, FormId::GeneralCos))
}

/// `2ⁿ cosⁿ(φ/2) sin(nφ/2)`.
pub fn sin_closed(n: impl Into<ExponentN>, phi: impl Into<Angle>) -> Result<ClosedFormValue> {
    let (n, phi) = (n.into(), phi.into());
    let power = half_angle_power(n, phi)?;
    let value = power * (0.5 * n.value() * phi.radians()).sin();
    Ok(ClosedFormValue::ok(value, FormId::GeneralSin))
}

fn check_pole(m: u32, phi: Angle) -> Result<f64> {
    let c = (0.5 * phi.radians()).cos();
    if c.abs() <= POLE_EPS {
        return Err(Error::Pole {
            n: -f64::from(m),
            phi: phi.radians(),
        });
    }
    Ok(c)
}

/// Reduced cosine sum for `n = -m`, `m` in `1..=7`.
///
/// `m = 1` is the constant `1/2`, `m = 2` is `cosφ / (4cos²(φ/2))`, and
/// `m >= 3` is `cos(mφ/2) / (2^m cos^m(φ/2))`.
pub fn reduced_neg_int(m: u32, phi: impl Into<Angle>) -> Result<ClosedFormValue> {
    let phi = phi.into();
    if !(1..=7).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "reduced form needs m in 1..=7, got {m}"
        )));
    }
    let c = check_pole(m, phi)?;
    let value = match m {
        1 => 0.5,
        2 => phi.radians().cos() / (4.0 * c * c),
        _ => {
            let mi = m as i32;
            (0.5 * f64::from(m) * phi.radians()).cos() / ((2.0 * c).powi(mi))
        }
    };
    Ok(ClosedFormValue::ok(value, FormId::ReducedNegInt))
}

/// Rational forms in `cosφ` for the first negative exponents:
/// `1/2`, `cosφ / (2(1+cosφ))`, `(2cosφ - 1) / (4(1+cosφ))`.
pub fn algebraic_neg_int(m: u32, phi: impl Into<Angle>) -> Result<f64> {
    let phi = phi.into();
    if !(1..=3).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "algebraic form needs m in 1..=3, got {m}"
        )));
    }
    check_pole(m, phi)?;
    let c = phi.radians().cos();
    Ok(match m {
        1 => 0.5,
        2 => c / (2.0 * (1.0 + c)),
        _ => (2.0 * c - 1.0) / (4.0 * (1.0 + c)),
    })
}

/// `2^(n/2) cos(n·45°)`, the value of `1 - (n 2) + (n 4) - ...`.
///
/// Integer `n` is evaluated exactly from `n mod 8`.
pub fn quarter_turn_sum(n: impl Into<ExponentN>) -> ClosedFormValue {
    let n = n.into();
    let nv = n.value();
    let value = if n.is_integer() && nv.abs() <= 2048.0 {
        let ni = nv as i32;
        let even = |e: i32| 2f64.powi(e / 2);
        let odd = |e: i32| 2f64.powi((e - 1) / 2);
        match ni.rem_euclid(8) {
            0 => even(ni),
            1 | 7 => odd(ni),
            2 | 6 => 0.0,
            3 | 5 => -odd(ni),
            _ => -even(ni),
        }
    } else {
        (0.5 * nv).exp2() * (nv * FRAC_PI_4).cos()
    };
    ClosedFormValue::ok(value, FormId::QuarterTurn)
}

/// `cos(λ·45°) / 2^(λ/2)`, the sum of
/// `1 - λ(λ+1)/2! + λ(λ+1)(λ+2)(λ+3)/4! - ...`.
///
/// This is the quarter-turn sum at exponent `-λ`.
pub fn lambda_series_closed(lambda: f64) -> ClosedFormValue {
    ClosedFormValue {
        form: FormId::LambdaSeries,
        ..quarter_turn_sum(-lambda)
    }
}

/// Nested square roots over rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Radical {
    Rational(i64, u64),
    Sqrt(Box<Radical>),
    Sum(Box<Radical>, Box<Radical>),
    Product(Box<Radical>, Box<Radical>),
    Quotient(Box<Radical>, Box<Radical>),
}

impl Radical {
    pub fn int(v: i64) -> Self {
        Radical::Rational(v, 1)
    }

    pub fn ratio(num: i64, den: u64) -> Self {
        Radical::Rational(num, den)
    }

    pub fn sqrt(self) -> Self {
        Radical::Sqrt(Box::new(self))
    }

    pub fn plus(self, rhs: Radical) -> Self {
        Radical::Sum(Box::new(self), Box::new(rhs))
    }

    pub fn times(self, rhs: Radical) -> Self {
        Radical::Product(Box::new(self), Box::new(rhs))
    }

    pub fn over(self, rhs: Radical) -> Self {
        Radical::Quotient(Box::new(self), Box::new(rhs))
    }

    fn eval_dd(&self) -> DoubleDouble {
        match self {
            Radical::Rational(n, d) => {
                DoubleDouble::from_f64(*n as f64) / DoubleDouble::from_f64(*d as f64)
            }
            Radical::Sqrt(x) => x.eval_dd().sqrt(),
            Radical::Sum(a, b) => a.eval_dd() + b.eval_dd(),
            Radical::Product(a, b) => a.eval_dd() * b.eval_dd(),
            Radical::Quotient(a, b) => a.eval_dd() / b.eval_dd(),
        }
    }

    /// Evaluated in double-double, rounded once to `f64`.
    pub fn value(&self) -> f64 {
        self.eval_dd().to_f64()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radical::Rational(n, 1) => write!(f, "{n}"),
            Radical::Rational(n, d) => write!(f, "{n}/{d}"),
            Radical::Sqrt(x) => write!(f, "sqrt({x})"),
            Radical::Sum(a, b) => write!(f, "({a} + {b})"),
            Radical::Product(a, b) => write!(f, "{a}*{b}"),
            Radical::Quotient(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogValue {
    Finite(f64),
    Divergent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub spec: SeriesSpec,
    /// `None` for the divergent entry.
    pub recipe: Option<Radical>,
    pub description: String,
    pub value: CatalogValue,
}

impl CatalogEntry {
    fn finite(n: f64, phi: f64, recipe: Radical) -> Self {
        let value = CatalogValue::Finite(recipe.value());
        Self {
            spec: SeriesSpec::cosine(n, phi),
            description: recipe.to_string(),
            recipe: Some(recipe),
            value,
        }
    }

    pub fn closed_form_value(&self) -> ClosedFormValue {
        match self.value {
            CatalogValue::Finite(v) => ClosedFormValue::ok(v, FormId::GeneralCos),
            CatalogValue::Divergent => ClosedFormValue {
                value: f64::NAN,
                domain_ok: false,
                form: FormId::GeneralCos,
            },
        }
    }
}

/// Special values of the half-integer cosine series.
pub fn special_value_catalog() -> Vec<CatalogEntry> {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
    let sqrt2 = || Radical::int(2).sqrt();
    let sqrt3 = || Radical::int(3).sqrt();
    let half = || Radical::ratio(1, 2);
    vec![
        CatalogEntry::finite(0.5, 0.0, sqrt2()),
        CatalogEntry::finite(0.5, PI, Radical::int(0)),
        CatalogEntry::finite(
            0.5,
            FRAC_PI_2,
            Radical::int(1).plus(sqrt2()).over(Radical::int(2)).sqrt(),
        ),
        CatalogEntry::finite(
            0.5,
            FRAC_PI_3,
            half().times(Radical::int(3).plus(Radical::int(2).times(sqrt3())).sqrt()),
        ),
        CatalogEntry::finite(-0.5, 0.0, Radical::int(1).over(sqrt2())),
        CatalogEntry::finite(
            -0.5,
            FRAC_PI_2,
            half().times(Radical::int(1).plus(sqrt2()).sqrt()),
        ),
        CatalogEntry {
            spec: SeriesSpec::cosine(-0.5, PI),
            recipe: None,
            description: "divergent: (1-1)^(-1/2)".into(),
            value: CatalogValue::Divergent,
        },
    ]
}
