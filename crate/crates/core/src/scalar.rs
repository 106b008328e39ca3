//! Number types shared by every geometric routine.
//!
//! Two numeric modes exist. `Exact` computations run over arbitrary precision
//! rationals and never round. `Approx` computations run over a binary
//! floating point type whose significand width is read once from the
//! `NOK_PRECISION` environment variable (default 128 bits, never below 64).
//! A plain `f64` implementation is also provided for inner solver loops where
//! speed matters more than digits; it reports itself as `Approx` as well.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use dashu_base::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Default significand width of [`Real`] in bits.
pub const DEFAULT_PRECISION_BITS: usize = 128;
/// Smallest accepted significand width.
pub const MIN_PRECISION_BITS: usize = 64;
/// Default tolerance used by approximate geometric predicates.
pub const DEFAULT_APPROX_TOLERANCE: f64 = 1e-9;

const F64_TOLERANCE: f64 = 1e-10;

/// Significand width used for every [`Real`] value, from `NOK_PRECISION`.
pub fn precision_bits() -> usize {
    static BITS: OnceLock<usize> = OnceLock::new();
    *BITS.get_or_init(|| {
        std::env::var("NOK_PRECISION")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .map(|b| b.max(MIN_PRECISION_BITS))
            .unwrap_or(DEFAULT_PRECISION_BITS)
    })
}

thread_local! {
    static TOLERANCE_OVERRIDE: std::cell::Cell<Option<f64>> = const { std::cell::Cell::new(None) };
}

/// Restores the previous predicate tolerance of this thread when dropped.
pub struct ToleranceGuard(Option<f64>);

impl Drop for ToleranceGuard {
    fn drop(&mut self) {
        TOLERANCE_OVERRIDE.with(|c| c.set(self.0));
    }
}

/// Tightens (or loosens) the [`Real`] predicate tolerance on the current thread
/// until the guard is dropped.
pub fn scoped_tolerance(tol: f64) -> ToleranceGuard {
    ToleranceGuard(TOLERANCE_OVERRIDE.with(|c| c.replace(Some(tol))))
}

/// Relative tolerance of approximate predicates, from `NOK_TOLERANCE`.
pub fn approx_tolerance() -> f64 {
    if let Some(t) = TOLERANCE_OVERRIDE.with(std::cell::Cell::get) {
        return t;
    }
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("NOK_TOLERANCE")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| *t > 0.0 && t.is_finite())
            .unwrap_or(DEFAULT_APPROX_TOLERANCE)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Exact,
    Approx,
}

impl NumericMode {
    /// Mode of a value computed from operands in `self` and `other` modes.
    pub fn combine(self, other: NumericMode) -> NumericMode {
        if self == NumericMode::Exact && other == NumericMode::Exact {
            NumericMode::Exact
        } else {
            NumericMode::Approx
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Exact => "exact",
            NumericMode::Approx => "approx",
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NumericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(NumericMode::Exact),
            "approx" => Ok(NumericMode::Approx),
            other => Err(Error::Parse(format!("unknown numeric mode '{other}'"))),
        }
    }
}

/// Ordered field used by the polytope engine.
///
/// `sign_tol` is the only predicate algorithms may use to decide whether a
/// computed quantity vanishes: exact types ignore `scale`, approximate types
/// treat `|x| <= eps * scale` as zero.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Floating type that receives square roots and other radicals of `Self`.
    type Approx: RealScalar;

    const MODE: NumericMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Exact binary value of `v` for rationals, rounded otherwise.
    fn from_real(r: &Real) -> Self;
    fn to_f64(&self) -> f64;
    fn to_real(&self) -> Real;
    fn to_exact(&self) -> Option<Rational>;
    fn to_approx(&self) -> Self::Approx;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn sign_tol(&self, scale: &Self) -> Ordering;
    /// Rescales a non-zero direction by a positive factor into a canonical
    /// representative (primitive integer vector or unit max-norm).
    fn normalize_direction(v: &mut [Self]);

    fn from_f64(v: f64) -> Self {
        Self::from_real(&Real::from_f64(v))
    }

    fn cast<T: Scalar>(&self) -> T {
        match self.to_exact() {
            Some(q) => T::from_rational(&q),
            None => T::from_real(&self.to_real()),
        }
    }

    fn is_positive_tol(&self, scale: &Self) -> bool {
        self.sign_tol(scale) == Ordering::Greater
    }

    fn is_negative_tol(&self, scale: &Self) -> bool {
        self.sign_tol(scale) == Ordering::Less
    }

    fn is_zero_tol(&self, scale: &Self) -> bool {
        self.sign_tol(scale) == Ordering::Equal
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

/// A scalar closed under radicals (approximately).
pub trait RealScalar: Scalar<Approx = Self> {
    fn sqrt(&self) -> Self;
    /// Real positive `n`-th root of a non-negative value.
    fn nth_root(&self, n: u32) -> Self;

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }

    fn hypot_of(v: &[Self]) -> Self {
        v.iter().fold(Self::zero(), |acc, x| acc + &(x.clone() * x)).sqrt()
    }
}

// ---------------------------------------------------------------------------
// Rational

impl Scalar for Rational {
    type Approx = Real;
    const MODE: NumericMode = NumericMode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_real(r: &Real) -> Self {
        r.to_rational()
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite f64")
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_real(&self) -> Real {
        Real::from_rational(self)
    }

    fn to_exact(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_approx(&self) -> Real {
        Real::from_rational(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sign_tol(&self, _scale: &Self) -> Ordering {
        self.cmp(&Zero::zero())
    }

    fn normalize_direction(v: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in v.iter() {
            lcm = lcm.lcm(x.denom());
        }
        let mut gcd = BigInt::zero();
        for x in v.iter() {
            let scaled = x.numer() * (&lcm / x.denom());
            gcd = gcd.gcd(&scaled);
        }
        if gcd.is_zero() {
            return;
        }
        let factor = Rational::new(lcm, gcd);
        for x in v.iter_mut() {
            *x = &*x * &factor;
        }
    }
}

/// Nearest `f64` to a rational, robust to huge numerators and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    Real::from_rational(q).to_f64()
}

/// Parses `"p/q"`, integers and decimal notation (`"-1.25"`, `"3e-2"`) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
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
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// ---------------------------------------------------------------------------
// f64

impl Scalar for f64 {
    type Approx = f64;
    const MODE: NumericMode = NumericMode::Approx;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn from_real(r: &Real) -> Self {
        r.to_f64()
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_real(&self) -> Real {
        Real::from_f64(*self)
    }

    fn to_exact(&self) -> Option<Rational> {
        None
    }

    fn to_approx(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign_tol(&self, scale: &Self) -> Ordering {
        let eps = F64_TOLERANCE * f64::abs(*scale).max(f64::MIN_POSITIVE);
        if *self > eps {
            Ordering::Greater
        } else if *self < -eps {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn normalize_direction(v: &mut [Self]) {
        let m = v.iter().fold(0.0f64, |m, x| m.max(f64::abs(*x)));
        if m > 0.0 {
            v.iter_mut().for_each(|x| *x /= m);
        }
    }
}

impl RealScalar for f64 {
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn nth_root(&self, n: u32) -> Self {
        match n {
            1 => *self,
            2 => f64::sqrt(*self),
            3 => f64::cbrt(*self),
            _ => self.powf(1.0 / n as f64),
        }
    }
}

// ---------------------------------------------------------------------------
// Real

type Big = FBig<HalfEven, 2>;

/// Multiprecision binary float with the process-wide significand width.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Big);

impl Real {
    fn wrap(b: Big) -> Real {
        Real(b.with_precision(precision_bits()).value())
    }

    pub fn from_f64(v: f64) -> Real {
        assert!(v.is_finite(), "non-finite value {v}");
        Real::wrap(Big::try_from(v).expect("finite f64 converts"))
    }

    pub fn from_int(v: &BigInt) -> Real {
        Real::wrap(Big::from(bigint_to_ibig(v)))
    }

    pub fn from_rational(q: &Rational) -> Real {
        let n = Real::from_int(q.numer());
        if q.denom().is_one() {
            return n;
        }
        n / Real::from_int(q.denom())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    /// Exact value of this binary float as a rational.
    pub fn to_rational(&self) -> Rational {
        let repr = self.0.repr();
        let sig = ibig_to_bigint(repr.significand());
        let exp = repr.exponent();
        if exp >= 0 {
            Rational::from_integer(sig << exp as usize)
        } else {
            Rational::new(sig, BigInt::one() << (-exp) as usize)
        }
    }

    /// Decimal rendering with enough digits for the working precision.
    pub fn to_decimal_string(&self) -> String {
        if self.0.repr().is_zero() {
            return "0".to_string();
        }
        let digits = (precision_bits() as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        let dec = self.0.clone().with_base_and_precision::<10>(digits).value();
        dec.to_string()
    }
}

fn bigint_to_ibig(v: &BigInt) -> IBig {
    let (sign, mag) = v.to_bytes_le();
    let m = IBig::from(UBig::from_le_bytes(&mag));
    if sign == Sign::Minus {
        -m
    } else {
        m
    }
}

fn ibig_to_bigint(v: &IBig) -> BigInt {
    let negative = *v < IBig::ZERO;
    let mag = if negative { -v.clone() } else { v.clone() };
    let mag: UBig = mag.try_into().expect("non-negative");
    let b = BigInt::from_bytes_le(Sign::Plus, &mag.to_le_bytes());
    if negative {
        -b
    } else {
        b
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_f64())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real(self.0 $op &rhs.0)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Scalar for Real {
    type Approx = Real;
    const MODE: NumericMode = NumericMode::Approx;

    fn zero() -> Self {
        Real::wrap(Big::ZERO)
    }

    fn one() -> Self {
        Real::wrap(Big::ONE)
    }

    fn from_i64(v: i64) -> Self {
        Real::wrap(Big::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        Real::from_rational(q)
    }

    fn from_real(r: &Real) -> Self {
        r.clone()
    }

    fn from_f64(v: f64) -> Self {
        Real::from_f64(v)
    }

    fn to_f64(&self) -> f64 {
        Real::to_f64(self)
    }

    fn to_real(&self) -> Real {
        self.clone()
    }

    fn to_exact(&self) -> Option<Rational> {
        None
    }

    fn to_approx(&self) -> Real {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.repr().is_zero()
    }

    fn abs(&self) -> Self {
        if self.0 < Big::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn sign_tol(&self, scale: &Self) -> Ordering {
        let s = self.to_f64();
        let eps = approx_tolerance() * scale.to_f64().abs().max(f64::MIN_POSITIVE);
        if s > eps {
            Ordering::Greater
        } else if s < -eps {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn normalize_direction(v: &mut [Self]) {
        let m = v.iter().map(Scalar::abs).fold(Real::zero(), Scalar::max_of);
        if !Scalar::is_zero(&m) {
            v.iter_mut().for_each(|x| *x = x.clone() / &m);
        }
    }
}

impl RealScalar for Real {
    fn sqrt(&self) -> Self {
        if Scalar::is_zero(self) {
            return Real::zero();
        }
        Real::wrap(SquareRoot::sqrt(&self.0))
    }

    fn nth_root(&self, n: u32) -> Self {
        if Scalar::is_zero(self) || n == 1 {
            return self.clone();
        }
        if n == 2 {
            return RealScalar::sqrt(self);
        }
        Real::wrap(self.0.nth_root(n as usize))
    }
}

// ---------------------------------------------------------------------------
// Number

/// A scalar whose numeric mode is decided at run time.
///
/// Arithmetic is contagious: any approximate operand makes the result approximate.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Approx(Real),
}

impl Number {
    pub fn from_int(v: i64) -> Number {
        Number::Exact(Rational::from_i64(v))
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            Number::Exact(_) => NumericMode::Exact,
            Number::Approx(_) => NumericMode::Approx,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact(q) => Some(q),
            Number::Approx(_) => None,
        }
    }

    pub fn to_real(&self) -> Real {
        match self {
            Number::Exact(q) => Real::from_rational(q),
            Number::Approx(r) => r.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => rational_to_f64(q),
            Number::Approx(r) => r.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Exact(q) => Zero::is_zero(q),
            Number::Approx(r) => Scalar::is_zero(r),
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Number::Exact(q) => q.cmp(&<Rational as Zero>::zero()),
            Number::Approx(r) => r.partial_cmp(&Real::zero()).unwrap_or(Ordering::Equal),
        }
    }

    /// Parses decimal, integer or `"p/q"` text as an exact number.
    pub fn parse(s: &str) -> Result<Number> {
        parse_rational(s).map(Number::Exact)
    }

    pub fn to_json_string(&self) -> String {
        match self {
            Number::Exact(q) => format_rational(q),
            Number::Approx(r) => r.to_decimal_string(),
        }
    }

    /// Positive real `n`-th root; stays exact when the root is rational.
    pub fn nth_root(&self, n: u32) -> Number {
        if let Number::Exact(q) = self {
            if let Some(root) = exact_nth_root(q, n) {
                return Number::Exact(root);
            }
        }
        Number::Approx(self.to_real().nth_root(n))
    }

    pub fn powi(&self, n: u32) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(num_traits::pow(q.clone(), n as usize)),
            Number::Approx(r) => Number::Approx(r.powi(n)),
        }
    }
}

/// Rational `n`-th root of a non-negative rational when it exists.
pub fn exact_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    Some(Rational::new(root_int(q.numer())?, root_int(q.denom())?))
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_string())
    }
}

impl From<Rational> for Number {
    fn from(q: Rational) -> Self {
        Number::Exact(q)
    }
}

impl From<Real> for Number {
    fn from(r: Real) -> Self {
        Number::Approx(r)
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Number::Exact(a), Number::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_real().partial_cmp(&other.to_real()),
        }
    }
}

macro_rules! number_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Number {
            type Output = Number;
            fn $method(self, rhs: Number) -> Number {
                match (self, rhs) {
                    (Number::Exact(a), Number::Exact(b)) => Number::Exact(a $op b),
                    (a, b) => Number::Approx(a.to_real() $op b.to_real()),
                }
            }
        }
        impl<'a> $trait<&'a Number> for &'a Number {
            type Output = Number;
            fn $method(self, rhs: &'a Number) -> Number {
                self.clone() $op rhs.clone()
            }
        }
    };
}

number_binop!(Add, add, +);
number_binop!(Sub, sub, -);
number_binop!(Mul, mul, *);
number_binop!(Div, div, /);

impl Neg for Number {
    type Output = Number;
    fn neg(self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Approx(r) => Number::Approx(-r),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_json_string())
    }
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        number_from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Reads a JSON number or string as an exact [`Number`].
pub fn number_from_json(v: &serde_json::Value) -> Result<Number> {
    match v {
        serde_json::Value::String(s) => Number::parse(s),
        serde_json::Value::Number(n) => Number::parse(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number, found {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("3e-2").unwrap(), q(3, 100));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&q(6, 3)), "2");
        assert_eq!(format_rational(&q(-3, 6)), "-1/2");
    }

    #[test]
    fn real_roundtrips_through_rational() {
        let r = Real::from_rational(&q(1, 3));
        let back = r.to_rational();
        assert!((rational_to_f64(&back) - 1.0 / 3.0).abs() < 1e-16);
        let two = Real::from_f64(2.0);
        let s = RealScalar::sqrt(&two);
        let err = (s.clone() * &s - two).to_f64().abs();
        assert!(err < 1e-30, "sqrt error {err}");
    }

    #[test]
    fn real_has_configured_precision() {
        // 1 + 2^-100 is distinguishable at >= 128 bits, invisible in f64.
        let tiny = Real::from_rational(&Rational::new(BigInt::one(), BigInt::one() << 100usize));
        let x = Real::one() + &tiny;
        assert!(x > Real::one());
        assert_eq!(x.to_f64(), 1.0);
    }

    #[test]
    fn nth_root_of_real() {
        let eight = Real::from_f64(8.0);
        let c = eight.nth_root(3);
        assert!((c.to_f64() - 2.0).abs() < 1e-15);
        assert!((Real::from_f64(2.0).nth_root(5).powi(5).to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn normalizes_rational_directions() {
        let mut v = vec![q(1, 2), q(-3, 4), Rational::from_i64(0)];
        Rational::normalize_direction(&mut v);
        assert_eq!(v, vec![q(2, 1), q(-3, 1), Rational::from_i64(0)]);
    }

    #[test]
    fn number_arithmetic_is_contagious() {
        let a = Number::Exact(q(1, 2));
        let b = Number::Approx(Real::from_f64(0.25));
        assert_eq!((a.clone() + a.clone()).mode(), NumericMode::Exact);
        assert_eq!((a + b).mode(), NumericMode::Approx);
    }

    #[test]
    fn exact_roots_stay_exact() {
        assert_eq!(Number::Exact(q(9, 4)).nth_root(2), Number::Exact(q(3, 2)));
        assert_eq!(Number::Exact(q(2, 1)).nth_root(2).mode(), NumericMode::Approx);
    }

    #[test]
    fn decimal_rendering() {
        let s = Real::from_rational(&q(1, 8)).to_decimal_string();
        assert!(s.starts_with("0.125"), "{s}");
    }
}
