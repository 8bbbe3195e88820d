//! Precision contexts, error-carrying values and decimal rendering.
//!
//! Every number produced by this crate is an [`ApproxReal`] (or a pair of
//! them): a multiprecision midpoint plus an upper bound on its distance from
//! the true value. Radii are kept at [`RADIUS_BITS`] bits and every operation
//! on them rounds toward +∞, so a radius never understates an error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::{Complex, Float};

use crate::error::{Error, Result};

/// Precision used for error radii.
pub const RADIUS_BITS: u32 = 64;

pub const DEFAULT_BITS: u32 = 256;
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Working precision for a computation.
///
/// Arithmetic runs at `bits + guard_bits`; series tails are cut once they
/// fall below `2^-(bits + 4)`. The guard bits absorb rounding accumulated
/// along the way, so results are good to at least `bits - guard_bits` bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32, guard_bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::InvalidContext(format!("bits = {bits} < 64")));
        }
        if guard_bits < 16 {
            return Err(Error::InvalidContext(format!(
                "guard_bits = {guard_bits} < 16"
            )));
        }
        Ok(Self { bits, guard_bits })
    }

    /// Context with the default guard bits.
    pub fn with_bits(bits: u32) -> Result<Self> {
        Self::new(bits, DEFAULT_GUARD_BITS)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn working_bits(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// log2 of the absolute truncation target for series tails.
    pub fn tail_target_log2(&self) -> f64 {
        -(f64::from(self.bits) + 4.0)
    }

    /// Decimal digits the context can certify with its guard bits spent.
    pub fn certified_digits(&self) -> u32 {
        (f64::from(self.bits - self.guard_bits) * std::f64::consts::LOG10_2).floor() as u32
    }

    pub fn doubled(&self) -> Self {
        Self {
            bits: self.bits * 2,
            guard_bits: self.guard_bits,
        }
    }

    pub fn zero(&self) -> Float {
        Float::new(self.working_bits())
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits(), val)
    }

    pub fn pi(&self) -> ApproxReal {
        ApproxReal::rounded(self.float(Constant::Pi))
    }

    pub fn ln2(&self) -> ApproxReal {
        ApproxReal::rounded(self.float(Constant::Log2))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            bits: DEFAULT_BITS,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}

// ---------------------------------------------------------------------------
// radius arithmetic, always rounded up

pub(crate) fn rad_zero() -> Float {
    Float::new(RADIUS_BITS)
}

pub(crate) fn rad_up<T>(val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RADIUS_BITS, val, Round::Up).0
}

pub(crate) fn rad_down<T>(val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RADIUS_BITS, val, Round::Down).0
}

pub(crate) fn abs_up(x: &Float) -> Float {
    rad_up(x.abs_ref())
}

pub(crate) fn abs_down(x: &Float) -> Float {
    rad_down(x.abs_ref())
}

pub(crate) fn cabs_up(z: &Complex) -> Float {
    let mut r = abs_up(z.real());
    r = rad_add(&r, &abs_up(z.imag()));
    r
}

pub(crate) fn rad_add(a: &Float, b: &Float) -> Float {
    rad_up(a + b)
}

pub(crate) fn rad_mul(a: &Float, b: &Float) -> Float {
    rad_up(a * b)
}

pub(crate) fn rad_div(a: &Float, b: &Float) -> Float {
    rad_up(a / b)
}

/// `2^e`, exact for any exponent MPFR can represent.
pub(crate) fn rad_pow2(e: i64) -> Float {
    let one = Float::with_val(RADIUS_BITS, 1);
    let e = e.clamp(i64::from(i32::MIN / 2), i64::from(i32::MAX / 2)) as i32;
    one << e
}

/// Upper bound for `2^x` with real `x`; the exponent is taken from an f64
/// estimate, so one extra bit is added.
pub(crate) fn rad_pow2_f64(x: f64) -> Float {
    if x == f64::NEG_INFINITY {
        return rad_zero();
    }
    let whole = x.ceil() as i64 + 1;
    rad_pow2(whole)
}

/// Bound on the rounding error of a correctly rounded result `x` at `prec` bits.
pub(crate) fn ulp_slack(x: &Float, prec: u32) -> Float {
    let a = abs_up(x);
    a >> (prec as i32 - 1)
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rigor {
    Rigorous,
    Heuristic,
}

impl Rigor {
    pub fn combine(self, other: Rigor) -> Rigor {
        if self == Rigor::Heuristic || other == Rigor::Heuristic {
            Rigor::Heuristic
        } else {
            Rigor::Rigorous
        }
    }
}

impl fmt::Display for Rigor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rigor::Rigorous => f.write_str("rigorous"),
            Rigor::Heuristic => f.write_str("heuristic"),
        }
    }
}

/// A real number known to lie within `radius` of `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReal {
    value: Float,
    radius: Float,
    rigor: Rigor,
}

impl ApproxReal {
    pub fn new(value: Float, radius: Float, rigor: Rigor) -> Self {
        assert!(
            radius.is_finite() && !radius.is_sign_negative(),
            "error radius must be finite and non-negative"
        );
        Self {
            value,
            radius: rad_up(&radius),
            rigor,
        }
    }

    /// An exactly known value.
    pub fn exact(value: Float) -> Self {
        Self::new(value, rad_zero(), Rigor::Rigorous)
    }

    /// A correctly rounded value: radius is one ulp of its precision.
    pub fn rounded(value: Float) -> Self {
        let r = ulp_slack(&value, value.prec());
        Self::new(value, r, Rigor::Rigorous)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::exact(Float::with_val(prec.max(64), n))
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        let q = Float::with_val(prec, num) / den;
        Self::rounded(q)
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn radius(&self) -> &Float {
        &self.radius
    }

    pub fn rigor(&self) -> Rigor {
        self.rigor
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64_round(Round::Up)
    }

    pub fn into_parts(self) -> (Float, Float, Rigor) {
        (self.value, self.radius, self.rigor)
    }

    /// Widens the radius by `extra`.
    pub fn inflate(mut self, extra: &Float) -> Self {
        self.radius = rad_add(&self.radius, extra);
        self
    }

    pub fn into_heuristic(mut self) -> Self {
        self.rigor = Rigor::Heuristic;
        self
    }

    pub fn with_rigor(mut self, rigor: Rigor) -> Self {
        self.rigor = self.rigor.combine(rigor);
        self
    }

    /// Lower bound of |value| − radius, clamped at zero.
    pub fn mag_lower(&self) -> Float {
        let lo = rad_down(abs_down(&self.value) - &self.radius);
        if lo.is_sign_negative() {
            rad_zero()
        } else {
            lo
        }
    }

    pub fn mag_upper(&self) -> Float {
        rad_add(&abs_up(&self.value), &self.radius)
    }

    pub fn is_positive(&self) -> bool {
        self.value > 0 && self.mag_lower() > 0
    }

    fn finish(value: Float, radius: Float, rigor: Rigor) -> Self {
        let slack = ulp_slack(&value, value.prec());
        Self::new(value, rad_add(&radius, &slack), rigor)
    }

    fn result_prec(&self, other: &Self) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let v = Float::with_val(self.prec(), &self.value * k);
        let r = rad_mul(&self.radius, &rad_up(k.unsigned_abs()));
        Self::finish(v, r, self.rigor)
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let v = Float::with_val(self.prec(), &self.value / k);
        let r = rad_div(&self.radius, &rad_down(k.unsigned_abs()));
        Self::finish(v, r, self.rigor)
    }

    /// Multiplication by `2^k`, exact on the midpoint.
    pub fn mul_pow2(&self, k: i32) -> Self {
        Self::new(
            self.value.clone() << k,
            self.radius.clone() << k,
            self.rigor,
        )
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let b_lo = other.mag_lower();
        if b_lo.is_zero() {
            return Err(Error::Domain("division by a value containing zero".into()));
        }
        let prec = self.result_prec(other);
        let v = Float::with_val(prec, &self.value / &other.value);
        // |a/b - a'/b'| <= (|a| rb + |b| ra) / (|b| (|b| - rb))
        let num = rad_add(
            &rad_mul(&abs_up(&self.value), &other.radius),
            &rad_mul(&abs_up(&other.value), &self.radius),
        );
        let den = rad_down(abs_down(&other.value) * &b_lo);
        let r = rad_div(&num, &den);
        Ok(Self::finish(v, r, self.rigor.combine(other.rigor)))
    }

    pub fn exp(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.exp_ref());
        // exp(x ± r) - exp(x) <= exp(x) (e^r - 1)
        let growth = rad_up(self.radius.exp_m1_ref());
        let r = rad_mul(&abs_up(&v), &growth);
        Self::finish(v, r, self.rigor)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive value".into()));
        }
        let v = Float::with_val(self.prec(), self.value.ln_ref());
        // |ln(x ± r) - ln x| <= r / (x - r)
        let r = rad_div(&self.radius, &self.mag_lower());
        Ok(Self::finish(v, r, self.rigor))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.value.is_sign_negative() && !self.value.is_zero() {
            return Err(Error::Domain("square root of a negative value".into()));
        }
        let v = Float::with_val(self.prec(), self.value.sqrt_ref());
        let lo = self.mag_lower();
        let r = if self.radius.is_zero() {
            rad_zero()
        } else if lo.is_zero() {
            rad_up(self.radius.sqrt_ref())
        } else {
            rad_div(&self.radius, &rad_down(lo.sqrt_ref()))
        };
        Ok(Self::finish(v, r, self.rigor))
    }

    /// `self^p` for a positive base, via `exp(p ln self)`.
    pub fn pow(&self, p: &Self) -> Result<Self> {
        let l = self.ln()?;
        Ok((&l * p).exp())
    }

    pub fn abs(&self) -> Self {
        Self::new(self.value.clone().abs(), self.radius.clone(), self.rigor)
    }

    pub fn cosh(&self) -> Self {
        let e = self.exp();
        let inv = Self::from_int(1, self.prec()).checked_div(&e).expect("exp is positive");
        (&e + &inv).mul_pow2(-1)
    }

    pub fn sinh(&self) -> Self {
        let e = self.exp();
        let inv = Self::from_int(1, self.prec()).checked_div(&e).expect("exp is positive");
        (&e - &inv).mul_pow2(-1)
    }

    /// cos is 1-Lipschitz.
    pub fn cos(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.cos_ref());
        Self::finish(v, self.radius.clone(), self.rigor)
    }

    pub fn sin(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.sin_ref());
        Self::finish(v, self.radius.clone(), self.rigor)
    }

    /// Same value at a different working precision.
    pub fn set_prec(&self, prec: u32) -> Self {
        let v = Float::with_val(prec, &self.value);
        let err = rad_up(Float::with_val(prec.max(self.prec()) + 64, &v - &self.value).abs());
        Self::new(v, rad_add(&self.radius, &err), self.rigor)
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}",
            render_value(&self.value, 20),
            render_bound(&self.radius)
        )
    }
}

impl Neg for &ApproxReal {
    type Output = ApproxReal;
    fn neg(self) -> ApproxReal {
        ApproxReal::new(-self.value.clone(), self.radius.clone(), self.rigor)
    }
}

impl Neg for ApproxReal {
    type Output = ApproxReal;
    fn neg(self) -> ApproxReal {
        -&self
    }
}

impl Add for &ApproxReal {
    type Output = ApproxReal;
    fn add(self, other: &ApproxReal) -> ApproxReal {
        let v = Float::with_val(self.result_prec(other), &self.value + &other.value);
        let r = rad_add(&self.radius, &other.radius);
        ApproxReal::finish(v, r, self.rigor.combine(other.rigor))
    }
}

impl Sub for &ApproxReal {
    type Output = ApproxReal;
    fn sub(self, other: &ApproxReal) -> ApproxReal {
        let v = Float::with_val(self.result_prec(other), &self.value - &other.value);
        let r = rad_add(&self.radius, &other.radius);
        ApproxReal::finish(v, r, self.rigor.combine(other.rigor))
    }
}

impl Mul for &ApproxReal {
    type Output = ApproxReal;
    fn mul(self, other: &ApproxReal) -> ApproxReal {
        let v = Float::with_val(self.result_prec(other), &self.value * &other.value);
        let r = rad_add(
            &rad_add(
                &rad_mul(&abs_up(&self.value), &other.radius),
                &rad_mul(&abs_up(&other.value), &self.radius),
            ),
            &rad_mul(&self.radius, &other.radius),
        );
        ApproxReal::finish(v, r, self.rigor.combine(other.rigor))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ApproxReal {
            type Output = ApproxReal;
            fn $m(self, other: ApproxReal) -> ApproxReal {
                (&self).$m(&other)
            }
        }
        impl $tr<&ApproxReal> for ApproxReal {
            type Output = ApproxReal;
            fn $m(self, other: &ApproxReal) -> ApproxReal {
                (&self).$m(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A complex number as a pair of real balls.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxComplex {
    pub re: ApproxReal,
    pub im: ApproxReal,
}

impl ApproxComplex {
    pub fn new(re: ApproxReal, im: ApproxReal) -> Self {
        Self { re, im }
    }

    pub fn exact(z: Complex) -> Self {
        let (re, im) = z.into_real_imag();
        Self {
            re: ApproxReal::exact(re),
            im: ApproxReal::exact(im),
        }
    }

    pub fn real(x: ApproxReal) -> Self {
        let prec = x.prec();
        Self {
            re: x,
            im: ApproxReal::exact(Float::new(prec)),
        }
    }

    /// Disc of radius `r` around `z`, stored as a square enclosing it.
    pub fn from_disc(z: Complex, r: Float, rigor: Rigor) -> Self {
        let (re, im) = z.into_real_imag();
        Self {
            re: ApproxReal::new(re, r.clone(), rigor),
            im: ApproxReal::new(im, r, rigor),
        }
    }

    pub fn midpoint(&self) -> Complex {
        let prec = self.re.prec().max(self.im.prec());
        Complex::with_val(prec, (self.re.value(), self.im.value()))
    }

    /// Radius of a disc containing the square.
    pub fn disc_radius(&self) -> Float {
        rad_add(self.re.radius(), self.im.radius())
    }

    pub fn rigor(&self) -> Rigor {
        self.re.rigor().combine(self.im.rigor())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.value().is_zero() && self.im.radius().is_zero()
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

// ---------------------------------------------------------------------------
// decimal rendering

fn ten_pow_neg(d: i64, prec: u32) -> Float {
    use rug::ops::Pow;
    let ten = Float::with_val(prec, 10);
    ten.pow(-d)
}

/// Largest digit count `d` satisfying the `to_decimal` precondition.
pub fn max_safe_digits(x: &ApproxReal) -> u32 {
    if x.radius.is_zero() {
        return u32::MAX;
    }
    let scale = abs_up(&x.value).max(&Float::with_val(RADIUS_BITS, 1));
    let rel = rad_div(&x.radius, &scale);
    let d = -rel.log10().to_f64() - 2.0;
    let mut d = if d.is_finite() && d > 0.0 { d.floor() as i64 } else { 0 };
    // the floor of an f64 log may be off by one near integers
    while d > 0 && !meets_digit_contract(x, d as u32) {
        d -= 1;
    }
    d.clamp(0, i64::from(u32::MAX)) as u32
}

fn meets_digit_contract(x: &ApproxReal, digits: u32) -> bool {
    let scale = abs_down(&x.value).max(&Float::with_val(RADIUS_BITS, 1));
    let bound = ten_pow_neg(i64::from(digits) + 2, RADIUS_BITS) * scale;
    x.radius < bound
}

/// Correctly rounded decimal rendering with `digits` significant digits.
///
/// Refuses when the radius is not at least two orders of magnitude below the
/// last rendered digit.
pub fn to_decimal(x: &ApproxReal, digits: u32) -> Result<String> {
    assert!(digits >= 1, "digits must be positive");
    if !meets_digit_contract(x, digits) {
        return Err(Error::InsufficientAccuracy {
            max_digits: max_safe_digits(x),
        });
    }
    Ok(render_value(&x.value, digits))
}

/// Renders a float with `digits` significant digits, positional unless the
/// decimal exponent is extreme.
pub fn render_value(v: &Float, digits: u32) -> String {
    let (neg, mantissa, exp) = v.to_sign_string_exp(10, Some(digits as usize));
    format_mantissa(neg && !v.is_zero(), &mantissa, exp, digits)
}

/// Leading `digits` significant digits of `x`, dropping the rest.
///
/// The value is first rounded at its certified precision, so an exact `-1`
/// carried with a tiny radius prints as `-1.000` and not `-0.999`. Same
/// accuracy precondition as [`to_decimal`].
pub fn to_decimal_truncated(x: &ApproxReal, digits: u32) -> Result<String> {
    assert!(digits >= 1, "digits must be positive");
    if !meets_digit_contract(x, digits) {
        return Err(Error::InsufficientAccuracy {
            max_digits: max_safe_digits(x),
        });
    }
    let certified = max_safe_digits(x).min(digits.saturating_add(64)).max(digits);
    let (neg, mut mantissa, exp) = x.value.to_sign_string_exp(10, Some(certified as usize));
    mantissa.truncate(digits as usize);
    Ok(format_mantissa(neg && !x.value.is_zero(), &mantissa, exp, digits))
}

fn format_mantissa(neg: bool, mantissa: &str, exp: Option<i32>, digits: u32) -> String {
    let sign = if neg { "-" } else { "" };
    let Some(exp) = exp else {
        return if digits <= 1 {
            "0".to_string()
        } else {
            format!("0.{}", "0".repeat(digits as usize - 1))
        };
    };
    let d = mantissa.len() as i32;
    let body = if !(-20..=40).contains(&exp) {
        let (head, tail) = mantissa.split_at(1);
        if tail.is_empty() {
            format!("{head}e{}", exp - 1)
        } else {
            format!("{head}.{tail}e{}", exp - 1)
        }
    } else if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp >= d {
        format!("{}{}", mantissa, "0".repeat((exp - d) as usize))
    } else {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// Two significant digits, rounded up, scientific notation.
pub fn render_bound(r: &Float) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let (_, mantissa, exp) = r.to_sign_string_exp_round(10, Some(2), Round::Up);
    let exp = exp.unwrap_or(0);
    let (head, tail) = mantissa.split_at(1);
    format!("{head}.{tail}e{}", exp - 1)
}

/// True iff `|x - y| <= 10^-digits · max(1, |x|, |y|) + rx + ry`.
pub fn agree_to(x: &ApproxReal, y: &ApproxReal, digits: u32) -> bool {
    let prec = x.prec().max(y.prec()) + 64;
    let diff = Float::with_val(prec, &x.value - &y.value).abs();
    let scale = Float::with_val(prec, x.value.abs_ref())
        .max(&Float::with_val(prec, y.value.abs_ref()))
        .max(&Float::with_val(prec, 1));
    let tol = ten_pow_neg(i64::from(digits), prec) * scale + &x.radius + &y.radius;
    diff.partial_cmp(&tol) != Some(Ordering::Greater)
}

/// Number of decimal digits to which `x` and `y` provably agree:
/// `-log10((|x - y| + rx + ry) / max(1, |x|, |y|))`, capped by the precision.
pub fn agreement_digits(x: &ApproxReal, y: &ApproxReal) -> f64 {
    let prec = x.prec().max(y.prec()) + 64;
    let cap = f64::from(prec) * std::f64::consts::LOG10_2;
    let diff = Float::with_val(prec, &x.value - &y.value).abs();
    let spread = rad_up(diff + &x.radius + &y.radius);
    if spread.is_zero() {
        return cap;
    }
    let scale = abs_down(&x.value)
        .max(&abs_down(&y.value))
        .max(&Float::with_val(RADIUS_BITS, 1));
    let rel = rad_up(spread / scale);
    (-rel.log10().to_f64()).min(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(63, 32).is_err());
        assert!(PrecisionContext::new(64, 15).is_err());
        let c = PrecisionContext::new(64, 16).unwrap();
        assert_eq!(c.working_bits(), 80);
        assert_eq!(PrecisionContext::default().bits(), 256);
        assert_eq!(PrecisionContext::default().guard_bits(), 32);
    }

    #[test]
    fn decimal_exact_one() {
        let x = ApproxReal::exact(Float::with_val(256, 1));
        assert_eq!(to_decimal(&x, 3).unwrap(), "1.00");
    }

    #[test]
    fn truncated_keeps_leading_digits() {
        let x = ApproxReal::rounded(Float::with_val(256, 0.7735162909));
        assert_eq!(to_decimal(&x, 5).unwrap(), "0.77352");
        assert_eq!(to_decimal_truncated(&x, 5).unwrap(), "0.77351");
        let y = ApproxReal::rounded(Float::with_val(256, 2).sqrt());
        assert_eq!(to_decimal_truncated(&y, 4).unwrap(), "1.414");
        assert_eq!(to_decimal_truncated(&-y, 4).unwrap(), "-1.414");
    }

    #[test]
    fn truncated_absorbs_sub_certified_noise() {
        // -1 + 2^-250 with a radius of 2^-240
        let v = Float::with_val(256, -1) + Float::with_val(256, Float::i_exp(1, -250));
        let x = ApproxReal::new(v, Float::with_val(64, Float::i_exp(1, -240)), Rigor::Rigorous);
        assert_eq!(to_decimal_truncated(&x, 5).unwrap(), "-1.0000");
        let wide = ApproxReal::new(Float::with_val(256, 1), Float::with_val(64, 0.01), Rigor::Rigorous);
        assert!(to_decimal_truncated(&wide, 5).is_err());
    }

    #[test]
    fn decimal_sqrt2() {
        // 1.41421356237309504880... by Newton's iteration on rationals
        let mut q = (3i128, 2i128);
        for _ in 0..5 {
            let (p, r) = q;
            q = (p * p + 2 * r * r, 2 * p * r);
            let g = gcd(q.0, q.1);
            q = (q.0 / g, q.1 / g);
            if q.0 > 1 << 60 {
                break;
            }
        }
        let newton = q.0 as f64 / q.1 as f64;
        let x = ApproxReal::rounded(Float::with_val(256, 2).sqrt());
        assert!((x.to_f64() - newton).abs() < 1e-15);
        assert_eq!(to_decimal(&x, 10).unwrap(), "1.414213562");
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn decimal_refuses_wide_radius() {
        let x = ApproxReal::new(
            Float::with_val(64, 0.5),
            Float::with_val(64, 0.1),
            Rigor::Rigorous,
        );
        match to_decimal(&x, 6) {
            Err(Error::InsufficientAccuracy { max_digits }) => assert_eq!(max_digits, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn max_safe_digits_is_tight() {
        let x = ApproxReal::new(
            Float::with_val(128, 3.25),
            Float::with_val(64, 1e-30),
            Rigor::Rigorous,
        );
        let d = max_safe_digits(&x);
        assert!(to_decimal(&x, d).is_ok());
        assert!(to_decimal(&x, d + 1).is_err());
    }

    #[test]
    fn rendering_shapes() {
        let f = |v: f64, d| render_value(&Float::with_val(128, v), d);
        assert_eq!(f(0.0, 4), "0.000");
        assert_eq!(f(0.0, 1), "0");
        assert_eq!(f(-1.0, 3), "-1.00");
        assert_eq!(f(123456.0, 3), "123000");
        assert_eq!(f(0.0012345, 3), "0.00123");
        assert_eq!(f(1.5e-30, 2), "1.5e-30");
        assert_eq!(render_bound(&Float::with_val(64, 1.234e-70)), "1.3e-70");
        assert_eq!(render_bound(&rad_zero()), "0");
    }

    #[test]
    fn agree_examples() {
        let one = ApproxReal::exact(Float::with_val(128, 1));
        let a = ApproxReal::exact(Float::with_val(128, 1) + Float::with_val(128, 1e-3));
        let b = ApproxReal::exact(Float::with_val(128, 1) + Float::with_val(128, 1e-7));
        assert!(agree_to(&one, &one, 70));
        assert!(!agree_to(&one, &a, 5));
        assert!(agree_to(&one, &b, 5));
    }

    #[test]
    fn arithmetic_propagates_radii() {
        let c = ctx();
        let a = ApproxReal::new(c.float(2), Float::with_val(64, 1e-10), Rigor::Rigorous);
        let b = ApproxReal::new(c.float(3), Float::with_val(64, 1e-12), Rigor::Heuristic);
        let s = &a + &b;
        assert!(s.radius_f64() >= 1e-10 + 1e-12);
        assert_eq!(s.rigor(), Rigor::Heuristic);
        let p = &a * &b;
        assert!(p.radius_f64() >= 3e-10 + 2e-12);
        let q = a.checked_div(&b).unwrap();
        assert!((q.to_f64() - 2.0 / 3.0).abs() < 1e-15);
        let e = a.exp();
        assert!(e.radius_f64() >= 7.38e-10);
        let l = b.ln().unwrap();
        assert!((l.to_f64() - 3f64.ln()).abs() < 1e-15);
        assert!(ApproxReal::from_int(-1, 128).ln().is_err());
        let z = ApproxReal::new(c.float(0), Float::with_val(64, 1e-5), Rigor::Rigorous);
        assert!(a.checked_div(&z).is_err());
    }

    #[test]
    fn rounding_slack_is_counted() {
        let c = ctx();
        let third = ApproxReal::from_ratio(1, 3, c.working_bits());
        assert!(!third.radius().is_zero());
        let exact = rug::Rational::from((1, 3));
        let err = Float::with_val(1024, third.value() - &exact).abs();
        assert!(err <= *third.radius());
    }

    proptest! {
        #[test]
        fn agree_is_symmetric(a in -1e6f64..1e6, b in -1e6f64..1e6, d in 1u32..20, ra in 0f64..1e-3) {
            let x = ApproxReal::new(Float::with_val(128, a), Float::with_val(64, ra), Rigor::Rigorous);
            let y = ApproxReal::exact(Float::with_val(128, b));
            prop_assert_eq!(agree_to(&x, &y, d), agree_to(&y, &x, d));
        }

        #[test]
        fn rendering_round_trips(v in -1e12f64..1e12, d in 1u32..16) {
            let x = ApproxReal::exact(Float::with_val(128, v));
            let s = to_decimal(&x, d).unwrap();
            prop_assert_eq!(&s, &to_decimal(&x, d).unwrap());
            let back: f64 = s.parse().unwrap();
            let tol = 10f64.powi(1 - d as i32) * v.abs().max(1.0);
            prop_assert!((back - v).abs() <= tol, "{} -> {}", v, s);
        }
    }
}
