use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, RingTag};

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn ring_tag() -> RingTag {
        RingTag::Rational
    }
    fn div_int(&self, n: i64) -> Self {
        self / BigRational::from_integer(n.into())
    }
}
