use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{Analytic, Ring, RingTag};

/// Truncated univariate Taylor polynomial: `c[0] + c[1] e + ... + c[N-1] e^(N-1)`.
///
/// Coefficients are stored in Taylor form (`f^(k)/k!`); [`Jet::derivative`]
/// converts back. Jets nest, so `Jet<Jet<BigFloat, 3>, 4>` carries three
/// x-derivatives of quantities that themselves carry two u-derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T, const N: usize> {
    c: [T; N],
}

/// Value plus first and second derivative with respect to u at u = 1.
pub type UJet2<T> = Jet<T, 3>;
/// Value plus three x-derivatives.
pub type XJet3<T> = Jet<T, 4>;

impl<T: Ring, const N: usize> Jet<T, N> {
    pub fn constant(v: T) -> Self {
        let mut c: [T; N] = std::array::from_fn(|_| T::zero());
        c[0] = v;
        Jet { c }
    }

    /// The independent variable at `v`: `v + e`.
    pub fn variable(v: T) -> Self {
        let mut j = Self::constant(v);
        if N > 1 {
            j.c[1] = T::one();
        }
        j
    }

    pub fn from_coeffs(c: [T; N]) -> Self {
        Jet { c }
    }

    /// Builds a jet from derivative values `f, f', f'', ...`.
    pub fn from_derivatives(d: [T; N]) -> Self {
        let mut fact = 1i64;
        let c = std::array::from_fn(|k| {
            if k > 0 {
                fact *= k as i64;
            }
            d[k].div_int(fact)
        });
        Jet { c }
    }

    pub fn value(&self) -> &T {
        &self.c[0]
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[T; N] {
        &self.c
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> T {
        let fact: i64 = (1..=k as i64).product();
        self.c[k].mul_int(fact)
    }

    fn map2(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Jet {
            c: std::array::from_fn(|k| f(&self.c[k], &rhs.c[k])),
        }
    }

    fn convolve(&self, rhs: &Self) -> Self {
        Jet {
            c: std::array::from_fn(|n| {
                let mut acc = T::zero();
                for k in 0..=n {
                    if self.c[k].is_zero() || rhs.c[n - k].is_zero() {
                        continue;
                    }
                    acc = acc + self.c[k].clone() * &rhs.c[n - k];
                }
                acc
            }),
        }
    }
}

impl<T: Ring, const N: usize> Add for Jet<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.map2(&rhs, |a, b| a.clone() + b)
    }
}
impl<'a, T: Ring, const N: usize> Add<&'a Jet<T, N>> for Jet<T, N> {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        self.map2(rhs, |a, b| a.clone() + b)
    }
}
impl<T: Ring, const N: usize> Sub for Jet<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.map2(&rhs, |a, b| a.clone() - b)
    }
}
impl<'a, T: Ring, const N: usize> Sub<&'a Jet<T, N>> for Jet<T, N> {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        self.map2(rhs, |a, b| a.clone() - b)
    }
}
impl<T: Ring, const N: usize> Mul for Jet<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.convolve(&rhs)
    }
}
impl<'a, T: Ring, const N: usize> Mul<&'a Jet<T, N>> for Jet<T, N> {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        self.convolve(rhs)
    }
}
impl<T: Ring, const N: usize> Neg for Jet<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet {
            c: self.c.map(|v| -v),
        }
    }
}

impl<T: Ring, const N: usize> Ring for Jet<T, N> {
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
        self.c.iter().all(T::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        let a0 = self.c[0].inv()?;
        let mut b: Vec<T> = Vec::with_capacity(N);
        b.push(a0.clone());
        for n in 1..N {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.c[k].clone() * &b[n - k];
            }
            b.push(-(acc * &a0));
        }
        Some(Jet {
            c: std::array::from_fn(|k| b[k].clone()),
        })
    }
    fn ring_tag() -> RingTag {
        RingTag::Jet {
            len: N,
            inner: Box::new(T::ring_tag()),
        }
    }
    fn div_int(&self, n: i64) -> Self {
        Jet {
            c: std::array::from_fn(|k| self.c[k].div_int(n)),
        }
    }
    fn mul_int(&self, n: i64) -> Self {
        Jet {
            c: std::array::from_fn(|k| self.c[k].mul_int(n)),
        }
    }
}

impl<T: Analytic, const N: usize> Analytic for Jet<T, N> {
    fn exp(&self) -> Self {
        let mut e: Vec<T> = Vec::with_capacity(N);
        e.push(self.c[0].exp());
        for n in 1..N {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.c[k].mul_int(k as i64) * &e[n - k];
            }
            e.push(acc.div_int(n as i64));
        }
        Jet {
            c: std::array::from_fn(|k| e[k].clone()),
        }
    }

    fn ln(&self) -> Self {
        let inv0 = self.c[0].inv().expect("logarithm of a jet with zero value");
        let mut l: Vec<T> = Vec::with_capacity(N);
        l.push(self.c[0].ln());
        for n in 1..N {
            let mut acc = T::zero();
            for k in 1..n {
                acc = acc + l[k].mul_int(k as i64) * &self.c[n - k];
            }
            l.push((self.c[n].clone() - acc.div_int(n as i64)) * &inv0);
        }
        Jet {
            c: std::array::from_fn(|k| l[k].clone()),
        }
    }

    fn sqrt(&self) -> Self {
        let s0 = self.c[0].sqrt();
        let inv2 = s0.mul_int(2).inv().expect("square root of a jet with zero value");
        let mut s: Vec<T> = Vec::with_capacity(N);
        s.push(s0);
        for n in 1..N {
            let mut acc = T::zero();
            for k in 1..n {
                acc = acc + s[k].clone() * &s[n - k];
            }
            s.push((self.c[n].clone() - acc) * &inv2);
        }
        Jet {
            c: std::array::from_fn(|k| s[k].clone()),
        }
    }

    fn from_f64(v: f64) -> Self {
        Self::constant(T::from_f64(v))
    }
    fn value_f64(&self) -> f64 {
        self.c[0].value_f64()
    }
    fn magnitude(&self) -> f64 {
        self.c.iter().map(T::magnitude).fold(0.0, f64::max)
    }
    fn epsilon() -> f64 {
        T::epsilon()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn derivatives_of_composite() {
        // f(t) = exp(t^2) * ln(1 + t) / sqrt(2 + t) at t = 0.3
        let t = Jet::<f64, 4>::variable(0.3);
        let f = (t.clone() * &t).exp() * (Jet::one() + &t).ln() * (Jet::from_i64(2) + &t).sqrt().inv().unwrap();
        let g = |t: f64| (t * t).exp() * (1.0 + t).ln() / (2.0 + t).sqrt();
        let h = 1e-3;
        let fd1 = (g(0.3 + h) - g(0.3 - h)) / (2.0 * h);
        let fd2 = (g(0.3 + h) - 2.0 * g(0.3) + g(0.3 - h)) / (h * h);
        assert!(close(*f.value(), g(0.3)));
        assert!((f.derivative(1) - fd1).abs() < 1e-6);
        assert!((f.derivative(2) - fd2).abs() < 1e-5);
    }

    #[test]
    fn nested_jets_commute() {
        // d/dx d/du of exp(x*u) at x=0.5, u=1 is exp(0.5)*(1+0.5)
        type U = Jet<f64, 3>;
        let u = U::variable(1.0);
        let x = Jet::<U, 2>::variable(U::constant(0.5));
        let f = (x * &Jet::constant(u)).exp();
        let dxdu = f.coeff(1).derivative(1);
        assert!(close(dxdu, 0.5f64.exp() * 1.5));
    }
}
