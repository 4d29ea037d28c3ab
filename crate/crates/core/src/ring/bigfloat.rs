use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfAway;
use dashu_float::{DBig, FBig};
use num_rational::BigRational;

use super::{Analytic, Ring, RingTag};
use crate::error::{Error, Result};

type Repr = FBig<HalfAway, 2>;

/// Smallest precision accepted for the BigFloat ring.
pub const MIN_DIGITS: u32 = 30;
const DEFAULT_DIGITS: u32 = 50;

thread_local! {
    static DIGITS: Cell<u32> = const { Cell::new(DEFAULT_DIGITS) };
}

/// Working precision (decimal digits) for BigFloat values created on this thread.
pub fn precision_digits() -> u32 {
    DIGITS.with(|d| d.get())
}

pub fn set_precision_digits(digits: u32) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::InvalidArgument(format!(
            "BigFloat precision must be at least {MIN_DIGITS} digits, got {digits}"
        )));
    }
    DIGITS.with(|d| d.set(digits));
    Ok(())
}

/// Runs `f` with a temporary working precision, restoring the previous one.
pub fn with_precision<T>(digits: u32, f: impl FnOnce() -> T) -> Result<T> {
    let old = precision_digits();
    set_precision_digits(digits)?;
    let out = f();
    DIGITS.with(|d| d.set(old));
    Ok(out)
}

fn bits() -> usize {
    (precision_digits() as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16
}

/// Binary floating point number with the thread's configured precision.
#[derive(Clone, PartialEq)]
pub struct BigFloat(Repr);

impl BigFloat {
    fn wrap(v: Repr) -> Self {
        BigFloat(v.with_precision(bits()).value())
    }

    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let d = DBig::from_str(s.trim())
            .map_err(|e| Error::Format(format!("bad decimal {s:?}: {e}")))?;
        Ok(BigFloat(d.with_base_and_precision::<2>(bits()).value()))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let d: DBig = self.0.clone().with_base_and_precision::<10>(digits).value();
        d.to_string()
    }

    /// Fixed-point rendering with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let v = self.value_f64();
        if v.abs() < 1e15 {
            let scaled = self.clone() * BigFloat::from_i64(10).pow_u(decimals as u64);
            let r = round_to_integer_string(&scaled);
            insert_point(&r, decimals)
        } else {
            self.to_decimal_string(decimals + 16)
        }
    }

    pub fn abs(&self) -> Self {
        if self.0 < Repr::ZERO {
            BigFloat(-self.0.clone())
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Repr::ZERO
    }

    pub fn precision_bits(&self) -> usize {
        self.0.precision()
    }

    /// pi from Machin's formula.
    pub fn pi() -> Self {
        let a = arctan_inv(5);
        let b = arctan_inv(239);
        a.mul_int(16) - b.mul_int(4)
    }
}

fn arctan_inv(n: i64) -> BigFloat {
    let x = BigFloat::one().div_int(n);
    let x2 = x.clone() * &x;
    let eps = BigFloat::epsilon() * 1e-3;
    let mut power = x.clone();
    let mut sum = x;
    let mut k = 1i64;
    loop {
        power = -(power * &x2);
        let term = power.div_int(2 * k + 1);
        if term.value_f64().abs() < eps {
            break;
        }
        sum = sum + term;
        k += 1;
    }
    sum
}

fn round_to_integer_string(v: &BigFloat) -> String {
    let half = BigFloat::from_rational(&BigRational::new(1.into(), 2.into()));
    let shifted = if v.is_negative() { v.clone() - half } else { v.clone() + half };
    let d: DBig = shifted.0.with_base_and_precision::<10>(80).value();
    let s = d.to_string();
    let s = match s.find('.') {
        Some(p) => s[..p].to_string(),
        None => s,
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn insert_point(int_str: &str, decimals: usize) -> String {
    if decimals == 0 {
        return int_str.to_string();
    }
    let (neg, digits) = match int_str.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, int_str),
    };
    let padded = format!("{digits:0>width$}", width = decimals + 1);
    let (a, b) = padded.split_at(padded.len() - decimals);
    format!("{}{a}.{b}", if neg { "-" } else { "" })
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(precision_digits() as usize))
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: BigFloat) -> BigFloat {
        BigFloat(self.0 + rhs.0)
    }
}
impl<'a> Add<&'a BigFloat> for BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &'a BigFloat) -> BigFloat {
        BigFloat(self.0 + &rhs.0)
    }
}
impl Sub for BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: BigFloat) -> BigFloat {
        BigFloat(self.0 - rhs.0)
    }
}
impl<'a> Sub<&'a BigFloat> for BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &'a BigFloat) -> BigFloat {
        BigFloat(self.0 - &rhs.0)
    }
}
impl Mul for BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: BigFloat) -> BigFloat {
        BigFloat(self.0 * rhs.0)
    }
}
impl<'a> Mul<&'a BigFloat> for BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &'a BigFloat) -> BigFloat {
        BigFloat(self.0 * &rhs.0)
    }
}
impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Ring for BigFloat {
    fn zero() -> Self {
        BigFloat::wrap(Repr::ZERO)
    }
    fn one() -> Self {
        BigFloat::wrap(Repr::ONE)
    }
    fn from_i64(n: i64) -> Self {
        BigFloat::wrap(Repr::from(n))
    }
    fn from_rational(q: &BigRational) -> Self {
        let num = int_to_float(q.numer());
        let den = int_to_float(q.denom());
        BigFloat(num.0 / den.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == Repr::ZERO
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(BigFloat(BigFloat::one().0 / &self.0))
        }
    }
    fn ring_tag() -> RingTag {
        RingTag::BigFloat {
            digits: precision_digits(),
        }
    }
    fn div_int(&self, n: i64) -> Self {
        BigFloat(self.0.clone() / Repr::from(n))
    }
    fn mul_int(&self, n: i64) -> Self {
        BigFloat(self.0.clone() * Repr::from(n))
    }
}

fn int_to_float(n: &num_bigint::BigInt) -> BigFloat {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => BigFloat::from_i64(v),
        None => {
            let d = DBig::from_str(&n.to_string()).expect("integer literal");
            BigFloat(d.with_base_and_precision::<2>(bits().max(n.bits() as usize + 8)).value())
        }
    }
}

impl Analytic for BigFloat {
    fn exp(&self) -> Self {
        BigFloat(self.0.exp())
    }
    fn ln(&self) -> Self {
        assert!(
            self.0 > Repr::ZERO,
            "logarithm of non-positive BigFloat {self:?}"
        );
        BigFloat(self.0.ln())
    }
    fn sqrt(&self) -> Self {
        assert!(
            self.0 >= Repr::ZERO,
            "square root of negative BigFloat {self:?}"
        );
        BigFloat(self.0.sqrt())
    }
    fn from_f64(v: f64) -> Self {
        BigFloat::wrap(Repr::try_from(v).expect("finite f64"))
    }
    fn value_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn magnitude(&self) -> f64 {
        self.value_f64().abs()
    }
    fn epsilon() -> f64 {
        10f64.powi(-(precision_digits() as i32))
    }
}

/// Serialized as a decimal string carrying the working precision.
impl serde::Serialize for BigFloat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal_string(precision_digits() as usize))
    }
}

impl<'de> serde::Deserialize<'de> for BigFloat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        BigFloat::from_decimal_str(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_e() {
        let pi = BigFloat::pi();
        assert_eq!(
            pi.to_decimal_string(40),
            "3.141592653589793238462643383279502884197"
        );
        let e = BigFloat::one().exp();
        assert!(e.to_decimal_string(30).starts_with("2.71828182845904523536028747"));
    }

    #[test]
    fn rational_conversion_and_formatting() {
        let q = BigRational::new(1.into(), 3.into());
        let v = BigFloat::from_rational(&q);
        assert_eq!(v.to_fixed(5), "0.33333");
        assert_eq!(BigFloat::from_f64(-2.5).to_fixed(2), "-2.50");
        assert_eq!(BigFloat::from_f64(0.000152).to_fixed(5), "0.00015");
        let back = BigFloat::from_decimal_str("0.125").unwrap();
        assert_eq!(back.value_f64(), 0.125);
    }

    #[test]
    fn serde_round_trip() {
        let v = BigFloat::one().div_int(7);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("\"0.142857142857"));
        let back: BigFloat = serde_json::from_str(&text).unwrap();
        assert!((back - v).abs().value_f64() < 1e-45);
    }

    #[test]
    fn precision_is_scoped() {
        assert!(set_precision_digits(10).is_err());
        let tag = with_precision(80, BigFloat::ring_tag).unwrap();
        assert_eq!(tag, RingTag::BigFloat { digits: 80 });
        assert_eq!(precision_digits(), DEFAULT_DIGITS);
    }
}
