//! Number backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: [`Rational`] (arbitrary precision, exact comparisons) for order
//! decisions and regression values, and `f64` for sampling-heavy routines.
//! Float comparisons go through an absolute tolerance, see
//! [`set_float_tolerance`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

static FLOAT_TOLERANCE: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Absolute tolerance used by every float comparison.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE.load(AtomicOrdering::Relaxed))
}

pub fn set_float_tolerance(tol: f64) {
    assert!(tol >= 0.0 && tol.is_finite(), "tolerance must be finite and non-negative");
    FLOAT_TOLERANCE.store(tol.to_bits(), AtomicOrdering::Relaxed);
}

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self;

    /// Exact for rationals (binary expansion of the float); `None` for NaN/inf.
    fn from_f64(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Total comparison; equal within the float tolerance for `f64`.
    fn cmp_tol(&self, other: &Self) -> Ordering;

    fn power(&self, k: u32) -> Self {
        num_traits::pow(self.clone(), k as usize)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.cmp_tol(other) == Ordering::Equal
    }

    fn is_zero_tol(&self) -> bool {
        self.approx_eq(&Self::zero())
    }

    fn is_positive_tol(&self) -> bool {
        self.cmp_tol(&Self::zero()) == Ordering::Greater
    }

    fn is_negative_tol(&self) -> bool {
        self.cmp_tol(&Self::zero()) == Ordering::Less
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn cmp_tol(&self, other: &Self) -> Ordering {
        let d = self - other;
        if d.abs() <= float_tolerance() {
            Ordering::Equal
        } else if d < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn power(&self, k: u32) -> Self {
        self.powi(k as i32)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Option<Self> {
        <Rational as FromPrimitive>::from_f64(v)
    }

    fn power(&self, k: u32) -> Self {
        Rational::new_raw(num_traits::pow(self.numer().clone(), k as usize), num_traits::pow(self.denom().clone(), k as usize))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Huge numerators/denominators: fall back to a ratio of logs.
            let n = self.numer();
            let d = self.denom();
            let sign = if n.is_negative() { -1.0 } else { 1.0 };
            let bits = |x: &BigInt| x.bits() as i64;
            let shift = bits(n).max(bits(d)) - 1000;
            if shift <= 0 {
                return f64::NAN;
            }
            let n2 = (n.abs() >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
            let d2 = (d >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
            sign * n2 / d2
        })
    }

    fn cmp_tol(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Parse `"p/q"`, an integer, or a decimal literal (`"-0.125"`, `"1e-3"`) as an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Render a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v:.16e}")
}

/// `log10 |r|`, finite for values far outside the `f64` range; `-inf` for
/// zero.
pub fn log10_abs(r: &Rational) -> f64 {
    fn log10_int(x: &BigInt) -> f64 {
        let shift = x.bits().saturating_sub(64);
        let top = (x.abs() >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    }
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_int(r.numer()) - log10_int(r.denom())
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}

pub fn int(v: i64) -> Rational {
    <Rational as Scalar>::from_i64(v)
}

pub(crate) fn sum<T: Scalar>(items: impl IntoIterator<Item = T>) -> T {
    items.into_iter().fold(T::zero(), |acc, v| acc + v)
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Largest element under `cmp_tol`, first index on ties.
pub(crate) fn max_tol<T: Scalar>(values: &[T]) -> Option<&T> {
    let mut best: Option<&T> = None;
    for v in values {
        match best {
            Some(b) if v.cmp_tol(b) != Ordering::Greater => {}
            _ => best = Some(v),
        }
    }
    best
}

pub(crate) fn check_probability_vector<T: Scalar>(v: &[T], name: &'static str) -> Result<()> {
    if v.is_empty() || v.iter().any(|p| p.is_negative_tol()) {
        return Err(Error::NotProbabilityVector(name));
    }
    let total = sum(v.iter().cloned());
    let ok = if T::EXACT {
        total == T::one()
    } else {
        (total.to_f64() - 1.0).abs() <= 1e-12_f64.max(float_tolerance())
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotProbabilityVector(name))
    }
}
