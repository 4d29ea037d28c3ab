use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::Ring;

use super::{CapMode, Truncation};

/// Polynomial in the ordinary variables (y, u), keyed by `(j, k)` for `y^j u^k`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R> {
    pub(crate) terms: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> Default for Poly<R> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<R: Ring> Poly<R> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: R, j: u32, k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((j, k), c);
        }
        Poly { terms }
    }

    pub fn get(&self, j: u32, k: u32) -> Option<&R> {
        self.terms.get(&(j, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }

    pub(crate) fn insert_add(&mut self, key: (u32, u32), c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let sum = v.clone() + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_add(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_add(*k, -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Poly::default();
        for (k, v) in &self.terms {
            out.insert_add(*k, v.clone() * c);
        }
        out
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        let mut out = Poly::default();
        for (k, v) in &self.terms {
            out.insert_add(*k, f(v));
        }
        out
    }

    /// Multiplies by `u^e`, respecting the caps.
    pub fn shift_u(&self, e: u32, trunc: &Truncation) -> Result<Self> {
        let mut out = Poly::default();
        for (&(j, k), v) in &self.terms {
            if trunc.admits(j, k + e)? {
                out.insert_add((j, k + e), v.clone());
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self, trunc: &Truncation) -> Result<Self> {
        let mut out = Poly::default();
        for (&(ja, ka), va) in &self.terms {
            for (&(jb, kb), vb) in &rhs.terms {
                let key = (ja + jb, ka + kb);
                if trunc.admits(key.0, key.1)? {
                    out.insert_add(key, va.clone() * vb);
                }
            }
        }
        Ok(out)
    }

    /// Accumulates `self * rhs` into `acc`.
    pub(crate) fn mul_into(&self, rhs: &Self, trunc: &Truncation, acc: &mut Self) -> Result<()> {
        for (&(ja, ka), va) in &self.terms {
            for (&(jb, kb), vb) in &rhs.terms {
                let key = (ja + jb, ka + kb);
                if trunc.admits(key.0, key.1)? {
                    acc.insert_add(key, va.clone() * vb);
                }
            }
        }
        Ok(())
    }

    /// Evaluates at numeric `y`, `u`.
    pub fn eval(&self, y: &R, u: &R) -> R {
        let mut acc = R::zero();
        for (&(j, k), v) in &self.terms {
            acc = acc + v.clone() * y.pow_u(j as u64) * u.pow_u(k as u64);
        }
        acc
    }
}

impl Truncation {
    /// Whether a term `y^j u^k` is kept; errors on a strict-cap violation.
    pub(crate) fn admits(&self, j: u32, k: u32) -> Result<bool> {
        if let Some(cap) = self.y_cap {
            if j > cap {
                return match self.mode {
                    CapMode::Strict => Err(Error::CapExceeded {
                        var: "y",
                        exponent: j,
                        cap,
                    }),
                    CapMode::Project => Ok(false),
                };
            }
        }
        if let Some(cap) = self.u_cap {
            if k > cap {
                return match self.mode {
                    CapMode::Strict => Err(Error::CapExceeded {
                        var: "u",
                        exponent: k,
                        cap,
                    }),
                    CapMode::Project => Ok(false),
                };
            }
        }
        Ok(true)
    }
}
