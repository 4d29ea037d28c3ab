use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{Analytic, Ring, RingTag};

/// First-order forward-mode dual number with a runtime number of directions.
///
/// An empty gradient stands for the zero gradient, so constants cost nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiDual<T> {
    pub value: T,
    pub grad: Vec<T>,
}

impl<T: Ring> MultiDual<T> {
    pub fn constant(value: T) -> Self {
        MultiDual {
            value,
            grad: Vec::new(),
        }
    }

    /// The `index`-th of `dims` independent variables, at `value`.
    pub fn variable(value: T, index: usize, dims: usize) -> Self {
        let mut grad = vec![T::zero(); dims];
        grad[index] = T::one();
        MultiDual { value, grad }
    }

    pub fn partial(&self, index: usize) -> T {
        self.grad.get(index).cloned().unwrap_or_else(T::zero)
    }

    fn zip_grad(&self, rhs: &Self, f: impl Fn(Option<&T>, Option<&T>) -> T) -> Vec<T> {
        let n = self.grad.len().max(rhs.grad.len());
        (0..n).map(|i| f(self.grad.get(i), rhs.grad.get(i))).collect()
    }

    fn scale_grad(grad: &[T], by: &T) -> Vec<T> {
        grad.iter().map(|g| g.clone() * by).collect()
    }
}

impl<T: Ring> Add for MultiDual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}
impl<'a, T: Ring> Add<&'a MultiDual<T>> for MultiDual<T> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        let grad = self.zip_grad(rhs, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.clone() + b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => T::zero(),
        });
        MultiDual {
            value: self.value + &rhs.value,
            grad,
        }
    }
}
impl<T: Ring> Sub for MultiDual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}
impl<'a, T: Ring> Sub<&'a MultiDual<T>> for MultiDual<T> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        let grad = self.zip_grad(rhs, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.clone() - b,
            (Some(a), None) => a.clone(),
            (None, Some(b)) => -b.clone(),
            (None, None) => T::zero(),
        });
        MultiDual {
            value: self.value - &rhs.value,
            grad,
        }
    }
}
impl<T: Ring> Mul for MultiDual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self * &rhs
    }
}
impl<'a, T: Ring> Mul<&'a MultiDual<T>> for MultiDual<T> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        let grad = if rhs.grad.is_empty() {
            Self::scale_grad(&self.grad, &rhs.value)
        } else if self.grad.is_empty() {
            Self::scale_grad(&rhs.grad, &self.value)
        } else {
            self.zip_grad(rhs, |a, b| match (a, b) {
                (Some(a), Some(b)) => a.clone() * &rhs.value + b.clone() * &self.value,
                (Some(a), None) => a.clone() * &rhs.value,
                (None, Some(b)) => b.clone() * &self.value,
                (None, None) => T::zero(),
            })
        };
        MultiDual {
            value: self.value * &rhs.value,
            grad,
        }
    }
}
impl<T: Ring> Neg for MultiDual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiDual {
            value: -self.value,
            grad: self.grad.into_iter().map(|g| -g).collect(),
        }
    }
}

impl<T: Ring> Ring for MultiDual<T> {
    fn zero() -> Self {
        Self::constant(T::zero())
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(T::from_i64(n))
    }
    fn from_rational(q: &BigRational) -> Self {
        Self::constant(T::from_rational(q))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(T::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        let v = self.value.inv()?;
        let minus_v2 = -(v.clone() * &v);
        Some(MultiDual {
            grad: Self::scale_grad(&self.grad, &minus_v2),
            value: v,
        })
    }
    fn ring_tag() -> RingTag {
        RingTag::Dual(Box::new(T::ring_tag()))
    }
    fn div_int(&self, n: i64) -> Self {
        MultiDual {
            value: self.value.div_int(n),
            grad: self.grad.iter().map(|g| g.div_int(n)).collect(),
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        MultiDual {
            value: self.value.mul_int(n),
            grad: self.grad.iter().map(|g| g.mul_int(n)).collect(),
        }
    }
}

impl<T: Analytic> Analytic for MultiDual<T> {
    fn exp(&self) -> Self {
        let e = self.value.exp();
        MultiDual {
            grad: Self::scale_grad(&self.grad, &e),
            value: e,
        }
    }
    fn ln(&self) -> Self {
        let inv = self.value.inv().expect("logarithm at zero");
        MultiDual {
            value: self.value.ln(),
            grad: Self::scale_grad(&self.grad, &inv),
        }
    }
    fn sqrt(&self) -> Self {
        let s = self.value.sqrt();
        let half_inv = s.mul_int(2).inv().expect("square root at zero");
        MultiDual {
            grad: Self::scale_grad(&self.grad, &half_inv),
            value: s,
        }
    }
    fn from_f64(v: f64) -> Self {
        Self::constant(T::from_f64(v))
    }
    fn value_f64(&self) -> f64 {
        self.value.value_f64()
    }
    fn magnitude(&self) -> f64 {
        self.grad
            .iter()
            .map(T::magnitude)
            .fold(self.value.magnitude(), f64::max)
    }
    fn epsilon() -> f64 {
        T::epsilon()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_of_product_and_exp() {
        // f(a, b) = a * exp(b) at (2, 0.5)
        let a = MultiDual::variable(2.0, 0, 2);
        let b = MultiDual::variable(0.5, 1, 2);
        let f = a * &b.exp();
        let e = 0.5f64.exp();
        assert!((f.value - 2.0 * e).abs() < 1e-14);
        assert!((f.partial(0) - e).abs() < 1e-14);
        assert!((f.partial(1) - 2.0 * e).abs() < 1e-14);
    }

    #[test]
    fn constants_have_empty_gradient() {
        let c = MultiDual::<f64>::from_i64(3);
        let x = MultiDual::variable(1.5, 1, 3);
        let p = c * &x;
        assert_eq!(p.grad, vec![0.0, 3.0, 0.0]);
        assert_eq!(p.partial(7), 0.0);
    }
}
