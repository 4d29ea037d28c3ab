use crate::error::{Error, Result};
use crate::ring::Ring;

use super::{Poly, TruncatedSeries, Var};

impl<R: Ring> TruncatedSeries<R> {
    fn require_no_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    fn require_positive_valuation(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::ZeroValuation)
        }
    }

    /// `exp(s)` for `s` without constant term, by the recurrence
    /// `n e_n = sum_k k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_no_constant()?;
        let n = self.order_x();
        let mut e: Vec<Poly<R>> = Vec::with_capacity(n + 1);
        e.push(Poly::constant(R::one()));
        for m in 1..=n {
            let mut acc = Poly::default();
            for k in 1..=m {
                let sk = &self.coeffs[k];
                if sk.is_zero() || e[m - k].is_zero() {
                    continue;
                }
                sk.scale(&R::from_i64(k as i64))
                    .mul_into(&e[m - k], &self.trunc, &mut acc)?;
            }
            e.push(acc.map(|c| c.div_int(m as i64)));
        }
        Ok(self.same_shape(e))
    }

    /// `sum_{i >= k} s^i / i!`; `k = 0` is plain `exp`.
    pub fn exp_geq(&self, k: usize) -> Result<Self> {
        let mut out = self.exp()?;
        let mut power = Self::one(self.order_x()).same_shape_of(self);
        let mut fact = R::one();
        for i in 0..k {
            if i > 0 {
                power = power.mul(self)?;
                fact = fact.mul_int(i as i64);
            }
            if power.is_zero() {
                break;
            }
            let inv = fact.inv().ok_or(Error::NotInvertible)?;
            out = out.sub(&power.scale(&inv))?;
        }
        Ok(out)
    }

    /// `log(1 + s)` for `s` without constant term, from `(1 + s) L' = s'`.
    pub fn ln_1p(&self) -> Result<Self> {
        self.require_no_constant()?;
        let n = self.order_x();
        let mut l: Vec<Poly<R>> = Vec::with_capacity(n + 1);
        l.push(Poly::default());
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&R::from_i64(m as i64));
            for k in 1..m {
                if l[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                let mut prod = Poly::default();
                l[k].scale(&R::from_i64(k as i64))
                    .mul_into(&self.coeffs[m - k], &self.trunc, &mut prod)?;
                acc = acc.sub(&prod);
            }
            l.push(acc.map(|c| c.div_int(m as i64)));
        }
        Ok(self.same_shape(l))
    }

    /// Undirected cycles of length at least 3: `-log(1 - s)/2 - s/2 - s^2/4`.
    pub fn cyc(&self) -> Result<Self> {
        let log = self.neg().ln_1p()?;
        let half = R::from_i64(2).inv().ok_or(Error::NotInvertible)?;
        let quarter = R::from_i64(4).inv().ok_or(Error::NotInvertible)?;
        let s2 = self.mul(self)?;
        log.scale(&(-half.clone()))
            .sub(&self.scale(&half))?
            .sub(&s2.scale(&quarter))
    }

    /// `sum_{k >= kmin} u^C(k+shift, 2) s^k / k!` with `u` symbolic.
    pub fn qbinom_sum(&self, shift: u32, kmin: usize) -> Result<Self> {
        self.qbinom_generic(shift, kmin, |p, e| p.shift_u(e, &self.trunc))
    }

    /// As [`Self::qbinom_sum`] with `u` replaced by the ring value `u`.
    pub fn qbinom_sum_at(&self, shift: u32, kmin: usize, u: &R) -> Result<Self> {
        self.qbinom_generic(shift, kmin, |p, e| Ok(p.scale(&u.pow_u(e as u64))))
    }

    fn qbinom_generic(
        &self,
        shift: u32,
        kmin: usize,
        mark: impl Fn(&Poly<R>, u32) -> Result<Poly<R>>,
    ) -> Result<Self> {
        self.require_positive_valuation()?;
        let n = self.order_x();
        let mut out = Self::zero(n).same_shape_of(self);
        let mut power = Self::one(n).same_shape_of(self);
        let mut fact = R::one();
        for k in 0..=n {
            if k > 0 {
                power = power.mul(self)?;
                fact = fact.mul_int(k as i64);
            }
            if power.is_zero() {
                break;
            }
            if k < kmin {
                continue;
            }
            let kk = k as u32 + shift;
            let e = kk * kk.saturating_sub(1) / 2;
            let inv = fact.inv().ok_or(Error::NotInvertible)?;
            let coeffs = power
                .coeffs
                .iter()
                .map(|p| mark(&p.scale(&inv), e))
                .collect::<Result<Vec<_>>>()?;
            out = out.add(&self.same_shape(coeffs))?;
        }
        Ok(out)
    }

    /// Partial derivative; differentiating in `x` lowers the order by one.
    pub fn diff(&self, var: Var) -> Result<Self> {
        match var {
            Var::X => {
                let n = self.order_x();
                if n == 0 {
                    return Err(Error::InsufficientOrder { needed: 1, have: 0 });
                }
                let coeffs = (1..=n)
                    .map(|i| self.coeffs[i].scale(&R::from_i64(i as i64)))
                    .collect();
                Ok(self.same_shape(coeffs))
            }
            Var::Y | Var::U => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|p| {
                        let mut out = Poly::default();
                        for (&(j, k), v) in p.iter() {
                            let (e, key) = if var == Var::Y {
                                (j, (j.wrapping_sub(1), k))
                            } else {
                                (k, (j, k.wrapping_sub(1)))
                            };
                            if e > 0 {
                                out.insert_add(key, v.mul_int(e as i64));
                            }
                        }
                        out
                    })
                    .collect();
                Ok(self.same_shape(coeffs))
            }
        }
    }

    /// The antiderivative of `s/x` with zero constant term (inverse of `x d/dx`).
    ///
    /// The order is kept: `s` known through `x^N` determines the result
    /// through `x^N` only.
    pub fn integrate_div_x(&self) -> Result<Self> {
        self.require_positive_valuation()?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, p)| if i == 0 { Poly::default() } else { p.map(|c| c.div_int(i as i64)) })
            .collect();
        Ok(self.same_shape(coeffs))
    }

    /// Composition `outer(inner(x), y, u)` in the x slot.
    pub fn subs_x(&self, inner: &Self) -> Result<Self> {
        self.compatible(inner)?;
        inner.require_positive_valuation()?;
        let n = self.order_x();
        let mut acc = self.same_shape(vec![Poly::default(); n + 1]);
        for i in (0..=n).rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[i]);
        }
        Ok(acc)
    }

    fn same_shape_of(mut self, other: &Self) -> Self {
        self.ring = other.ring.clone();
        self.trunc = other.trunc;
        self
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

    fn x(n: usize) -> S {
        S::var(Var::X, n)
    }

    #[test]
    fn exp_geq_examples() {
        let e = x(2).exp_geq(0).unwrap();
        assert_eq!(e, S::from_terms(2, [(0, 0, 0, q(1, 1)), (1, 0, 0, q(1, 1)), (2, 0, 0, q(1, 2))]));
        let e2 = x(3).exp_geq(2).unwrap();
        assert_eq!(e2, S::from_terms(3, [(2, 0, 0, q(1, 2)), (3, 0, 0, q(1, 6))]));
        assert!(S::zero(3).exp_geq(1).unwrap().is_zero());
        assert_eq!(S::one(3).exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn cyc_examples() {
        let c = x(4).cyc().unwrap();
        assert_eq!(c, S::from_terms(4, [(3, 0, 0, q(1, 6)), (4, 0, 0, q(1, 8))]));
        assert!(S::zero(4).cyc().unwrap().is_zero());
        let xy = x(3).mul(&S::var(Var::Y, 3)).unwrap();
        assert_eq!(xy.cyc().unwrap(), S::monomial(q(1, 6), 3, 3, 0, 3));
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(S::zero(3).qbinom_sum(0, 0).unwrap(), S::one(3));
        let a = x(3).qbinom_sum(0, 2).unwrap();
        assert_eq!(a, S::from_terms(3, [(2, 0, 1, q(1, 2)), (3, 0, 3, q(1, 6))]));
        let b = x(2).qbinom_sum(1, 0).unwrap();
        assert_eq!(b, S::from_terms(2, [(0, 0, 0, q(1, 1)), (1, 0, 1, q(1, 1)), (2, 0, 3, q(1, 2))]));
        assert_eq!(S::one(2).qbinom_sum(0, 0), Err(Error::ZeroValuation));
        let at = x(3).qbinom_sum_at(0, 2, &q(2, 1)).unwrap();
        assert_eq!(at, S::from_terms(3, [(2, 0, 0, q(1, 1)), (3, 0, 0, q(8, 6))]));
    }

    #[test]
    fn diff_and_integrate() {
        let s = S::monomial(q(1, 1), 2, 1, 0, 3);
        assert_eq!(s.diff(Var::X).unwrap(), S::monomial(q(2, 1), 1, 1, 0, 2));
        assert_eq!(x(3).integrate_div_x().unwrap(), x(3));
        let t = x(4).add(&x(4).mul(&x(4)).unwrap()).unwrap();
        let back = t.integrate_div_x().unwrap().diff(Var::X).unwrap().mul_x();
        assert_eq!(back, t);
        let ys = S::monomial(q(3, 1), 1, 2, 1, 2);
        assert_eq!(ys.diff(Var::Y).unwrap(), S::monomial(q(6, 1), 1, 1, 1, 2));
        assert_eq!(ys.diff(Var::U).unwrap(), S::monomial(q(3, 1), 1, 2, 0, 2));
    }

    #[test]
    fn subs_examples() {
        let outer = x(4).exp_geq(1).unwrap();
        let x2 = x(4).mul(&x(4)).unwrap();
        assert_eq!(
            outer.subs_x(&x2).unwrap(),
            S::from_terms(4, [(2, 0, 0, q(1, 1)), (4, 0, 0, q(1, 2))])
        );
        let s = S::from_terms(4, [(1, 1, 0, q(2, 3)), (3, 0, 2, q(-1, 5))]);
        assert_eq!(x(4).subs_x(&s).unwrap(), s);
        assert_eq!(s.subs_x(&x(4)).unwrap(), s);
    }

    #[test]
    fn log_inverts_exp() {
        let s = S::from_terms(6, [(1, 1, 0, q(1, 1)), (2, 0, 1, q(-3, 2)), (4, 2, 2, q(5, 7))]);
        let e = s.exp().unwrap();
        let back = e.sub(&S::one(6)).unwrap().ln_1p().unwrap();
        assert_eq!(back, s);
    }
}
