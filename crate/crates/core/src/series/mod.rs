//! Truncated power series in `x` (exponential, vertices) with polynomial
//! coefficients in `y` (edges) and `u` (subgraph marks).

mod eval;
mod json;
mod ops;
mod poly;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingTag};

pub use eval::{TailPolicy, TailReport};
pub use json::{CoeffText, SeriesDoc};
pub use poly::Poly;

/// What happens to a term whose y- or u-exponent exceeds its cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CapMode {
    /// Exceeding a cap is an error.
    #[default]
    Strict,
    /// Terms above a cap are silently dropped.
    Project,
}

/// Optional degree caps for the ordinary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Truncation {
    pub y_cap: Option<u32>,
    pub u_cap: Option<u32>,
    pub mode: CapMode,
}

/// The three series variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    U,
}

/// A series known through `x^order_x`.
///
/// `coeffs[i]` is the (y, u)-polynomial multiplying `x^i`; the coefficient of
/// a labeled class with `a_n` objects of size n is `a_n / n!`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    ring: RingTag,
    trunc: Truncation,
    coeffs: Vec<Poly<R>>,
}

impl<R: fmt::Debug> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}; O(x^{})]", self.ring, self.coeffs.len())?;
        let mut list = f.debug_list();
        for (i, p) in self.coeffs.iter().enumerate() {
            for ((j, k), c) in &p.terms {
                list.entry(&((i, j, k), c));
            }
        }
        list.finish()
    }
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(order_x: usize) -> Self {
        TruncatedSeries {
            ring: R::ring_tag(),
            trunc: Truncation::default(),
            coeffs: vec![Poly::default(); order_x + 1],
        }
    }

    pub fn with_truncation(mut self, trunc: Truncation) -> Result<Self> {
        self.trunc = trunc;
        let polys = std::mem::take(&mut self.coeffs);
        self.coeffs = polys
            .into_iter()
            .map(|p| {
                let mut out = Poly::default();
                for (&(j, k), v) in p.iter() {
                    if trunc.admits(j, k)? {
                        out.insert_add((j, k), v.clone());
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(self)
    }

    pub fn monomial(c: R, i: usize, j: u32, k: u32, order_x: usize) -> Self {
        let mut s = Self::zero(order_x);
        if i <= order_x {
            s.coeffs[i] = Poly::monomial(c, j, k);
        }
        s
    }

    pub fn constant(c: R, order_x: usize) -> Self {
        Self::monomial(c, 0, 0, 0, order_x)
    }

    pub fn one(order_x: usize) -> Self {
        Self::constant(R::one(), order_x)
    }

    pub fn var(v: Var, order_x: usize) -> Self {
        match v {
            Var::X => Self::monomial(R::one(), 1, 0, 0, order_x),
            Var::Y => Self::monomial(R::one(), 0, 1, 0, order_x),
            Var::U => Self::monomial(R::one(), 0, 0, 1, order_x),
        }
    }

    /// Builds a series from `(i, j, k, c)` terms, dropping those above `order_x`.
    pub fn from_terms(order_x: usize, terms: impl IntoIterator<Item = (usize, u32, u32, R)>) -> Self {
        let mut s = Self::zero(order_x);
        for (i, j, k, c) in terms {
            if i <= order_x {
                s.coeffs[i].insert_add((j, k), c);
            }
        }
        s
    }

    /// Builds a series from its x-coefficient polynomials; missing orders are zero.
    pub fn from_polys(order_x: usize, polys: Vec<Poly<R>>) -> Self {
        let mut s = Self::zero(order_x);
        for (i, p) in polys.into_iter().enumerate().take(order_x + 1) {
            s.coeffs[i] = p;
        }
        s
    }

    pub fn ring(&self) -> &RingTag {
        &self.ring
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn order_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Smallest x-exponent with a nonzero term; `None` for the zero series.
    pub fn valuation_x(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation_x().is_none()
    }

    pub fn x_coeff(&self, i: usize) -> &Poly<R> {
        &self.coeffs[i]
    }

    pub fn x_coeffs(&self) -> &[Poly<R>] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j u^k` (zero when absent or beyond the order).
    pub fn coeff(&self, i: usize, j: u32, k: u32) -> R {
        self.coeffs
            .get(i)
            .and_then(|p| p.get(j, k))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// All nonzero terms sorted by `(i, j, k)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, u32, u32), &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.iter().map(move |(&(j, k), c)| ((i, j, k), c)))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().map(|p| p.terms.len()).sum()
    }

    fn compatible(&self, rhs: &Self) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: rhs.ring.to_string(),
            });
        }
        if self.order_x() != rhs.order_x() {
            return Err(Error::OrderMismatch {
                left: self.order_x(),
                right: rhs.order_x(),
            });
        }
        Ok(())
    }

    fn same_shape(&self, coeffs: Vec<Poly<R>>) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            trunc: self.trunc,
            coeffs,
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
        Ok(self.same_shape(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
        Ok(self.same_shape(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.same_shape(self.coeffs.iter().map(Poly::neg).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.same_shape(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.compatible(rhs)?;
        let n = self.order_x();
        let mut out = vec![Poly::default(); n + 1];
        for (a, pa) in self.coeffs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in rhs.coeffs[..=n - a].iter().enumerate() {
                if !pb.is_zero() {
                    pa.mul_into(pb, &self.trunc, &mut out[a + b])?;
                }
            }
        }
        Ok(self.same_shape(out))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeExponent(n));
        }
        let mut n = n as u64;
        let mut base = self.clone();
        let mut acc = Self::one(self.order_x());
        acc.ring = self.ring.clone();
        acc.trunc = self.trunc;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by `x`; the order grows by one.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Poly::default());
        coeffs.extend(self.coeffs.iter().cloned());
        self.same_shape(coeffs)
    }

    /// Drops every term above `x^order_x` (or pads with zeros when raising).
    pub fn truncate(&self, order_x: usize) -> Self {
        let mut coeffs: Vec<Poly<R>> = self.coeffs.iter().take(order_x + 1).cloned().collect();
        coeffs.resize(order_x + 1, Poly::default());
        self.same_shape(coeffs)
    }

    /// Maps every coefficient into another ring.
    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| {
                let mut out = Poly::default();
                for (k, v) in p.iter() {
                    out.insert_add(*k, f(v));
                }
                out
            })
            .collect();
        TruncatedSeries {
            ring: S::ring_tag(),
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Substitutes a ring value for `y` or `u`; `x` is rejected.
    pub fn specialize(&self, var: Var, value: &R) -> Result<Self> {
        if var == Var::X {
            return Err(Error::InvalidArgument(
                "use eval_numeric or subs_x to substitute x".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| {
                let mut out = Poly::default();
                for (&(j, k), v) in p.iter() {
                    let (key, e) = match var {
                        Var::Y => ((0, k), j),
                        _ => ((j, 0), k),
                    };
                    out.insert_add(key, v.clone() * value.pow_u(e as u64));
                }
                out
            })
            .collect();
        Ok(self.same_shape(coeffs))
    }

    /// n! times the coefficient of `x^n`, as a (y, u)-polynomial.
    pub fn egf_count(&self, n: usize) -> Poly<R> {
        let fact = (1..=n as i64).fold(R::one(), |acc, k| acc.mul_int(k));
        self.coeffs
            .get(n)
            .map(|p| p.scale(&fact))
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    type Q = BigRational;
    type S = TruncatedSeries<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn monomial_products() {
        let x = S::var(Var::X, 4);
        let y = S::var(Var::Y, 4);
        assert_eq!(x.mul(&x).unwrap(), S::monomial(q(1, 1), 2, 0, 0, 4));
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.mul(&xy).unwrap(), S::monomial(q(1, 1), 2, 2, 0, 4));
    }

    #[test]
    fn pow_truncates() {
        let one_plus_x = S::one(1).add(&S::var(Var::X, 1)).unwrap();
        let sq = one_plus_x.pow(2).unwrap();
        assert_eq!(sq, S::from_terms(1, [(0, 0, 0, q(1, 1)), (1, 0, 0, q(2, 1))]));
        assert_eq!(one_plus_x.pow(-1), Err(Error::NegativeExponent(-1)));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = S::var(Var::X, 3);
        let b = S::var(Var::X, 4);
        assert!(matches!(a.add(&b), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn no_zero_terms_and_valuation() {
        let x = S::var(Var::X, 3);
        let z = x.sub(&x).unwrap();
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z.valuation_x(), None);
        assert_eq!(x.mul(&x).unwrap().valuation_x(), Some(2));
    }

    #[test]
    fn caps_strict_and_project() {
        let y = S::var(Var::Y, 2);
        let strict = Truncation {
            y_cap: Some(2),
            ..Default::default()
        };
        let ys = y.clone().with_truncation(strict).unwrap();
        assert!(ys.pow(2).is_ok());
        assert!(matches!(ys.pow(3), Err(Error::CapExceeded { var: "y", .. })));
        let proj = Truncation {
            mode: CapMode::Project,
            ..strict
        };
        let yp = y.with_truncation(proj).unwrap();
        assert!(yp.pow(3).unwrap().is_zero());
    }

    #[test]
    fn specialize_u() {
        let s = S::from_terms(2, [(1, 1, 2, q(3, 1)), (1, 1, 0, q(1, 1))]);
        let at1 = s.specialize(Var::U, &q(1, 1)).unwrap();
        assert_eq!(at1.coeff(1, 1, 0), q(4, 1));
        let at0 = s.specialize(Var::U, &q(0, 1)).unwrap();
        assert_eq!(at0.coeff(1, 1, 0), q(1, 1));
    }
}
