//! Coefficient rings.
//!
//! Every series and every numeric solver in the crate is generic over [`Ring`].
//! Exact rationals give bit-exact low-order coefficients; [`BigFloat`] gives
//! configurable-precision floats; [`Jet`] and [`MultiDual`] layer truncated
//! Taylor arithmetic on top of either, which is how implicit derivatives are
//! obtained without hand-derived formulas.

mod bigfloat;
mod dual;
mod float;
mod jet;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

pub use bigfloat::{precision_digits, set_precision_digits, with_precision, BigFloat};
pub use dual::MultiDual;
pub use jet::{Jet, UJet2, XJet3};

/// Identifies a coefficient ring at runtime; two series can only be combined
/// when their tags agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingTag {
    Rational,
    BigFloat { digits: u32 },
    F64,
    Jet { len: usize, inner: Box<RingTag> },
    Dual(Box<RingTag>),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Rational => write!(f, "rational"),
            RingTag::BigFloat { digits } => write!(f, "bigfloat:{digits}"),
            RingTag::F64 => write!(f, "f64"),
            RingTag::Jet { len, inner } => write!(f, "jet{}<{inner}>", len - 1),
            RingTag::Dual(inner) => write!(f, "dual<{inner}>"),
        }
    }
}

/// Commutative ring with the handful of extras the series kernel needs.
pub trait Ring:
    Sized
    + Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` when `self` is not a unit.
    fn inv(&self) -> Option<Self>;
    fn ring_tag() -> RingTag;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self / n` for a nonzero integer `n`.
    fn div_int(&self, n: i64) -> Self {
        self.clone() * Self::from_rational(&BigRational::new(1.into(), n.into()))
    }

    fn mul_int(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }

    fn pow_u(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Numeric rings: floats and Taylor towers over floats.
pub trait Analytic: Ring {
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn from_f64(v: f64) -> Self;
    /// The real number in the innermost value slot.
    fn value_f64(&self) -> f64;
    /// Largest absolute value over all slots (value and derivatives).
    fn magnitude(&self) -> f64;
    /// Relative working precision of the underlying float.
    fn epsilon() -> f64;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}
