use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Analytic;

use super::TruncatedSeries;

/// Controls the divergence test of [`TruncatedSeries::eval_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPolicy {
    /// Number of trailing nonzero terms inspected; if their magnitudes never
    /// decrease the evaluation is reported as divergent.
    pub window: usize,
}

impl Default for TailPolicy {
    fn default() -> Self {
        TailPolicy { window: 4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub last_term_magnitude: f64,
    /// Geometric extrapolation of the omitted tail; infinite when the last
    /// ratio is not below one.
    pub estimated_tail_bound: f64,
    pub order_used: usize,
}

impl<R: Analytic> TruncatedSeries<R> {
    /// Sums the series at a numeric point and estimates the truncation error.
    pub fn eval_numeric(&self, x0: &R, y0: &R, u0: &R, policy: TailPolicy) -> Result<(R, TailReport)> {
        let mut sum = R::zero();
        let mut xpow = R::one();
        let mut mags: Vec<f64> = Vec::new();
        for (i, p) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xpow = xpow * x0;
            }
            if p.is_zero() {
                continue;
            }
            let term = p.eval(y0, u0) * &xpow;
            let m = term.magnitude();
            if m > 0.0 {
                mags.push(m);
            }
            sum = sum + term;
        }
        let last = mags.last().copied().unwrap_or(0.0);
        let w = policy.window.max(2);
        if mags.len() >= w {
            let tail = &mags[mags.len() - w..];
            if tail.windows(2).all(|p| p[1] >= p[0]) {
                return Err(Error::Divergent);
            }
        }
        let bound = match mags.len() {
            0 => 0.0,
            1 => last,
            n => {
                let r = last / mags[n - 2];
                if r < 1.0 {
                    last * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            }
        };
        Ok((
            sum,
            TailReport {
                last_term_magnitude: last,
                estimated_tail_bound: bound,
                order_used: self.order_x(),
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Var;

    #[test]
    fn exponential_at_one() {
        let s = TruncatedSeries::<f64>::var(Var::X, 50).exp().unwrap();
        let (v, rep) = s.eval_numeric(&1.0, &1.0, &1.0, TailPolicy::default()).unwrap();
        assert!((v - std::f64::consts::E).abs() < 1e-15);
        assert!(rep.estimated_tail_bound >= 0.0 && rep.estimated_tail_bound < 1e-60);
    }

    #[test]
    fn geometric_outside_disk_diverges() {
        let x = TruncatedSeries::<f64>::var(Var::X, 30);
        // 1/(1-x) - 1 = exp(-log(1-x)) - 1
        let geo = x.neg().ln_1p().unwrap().neg().exp().unwrap();
        let r = geo.eval_numeric(&2.0, &1.0, &1.0, TailPolicy::default());
        assert_eq!(r.unwrap_err(), Error::Divergent);
        let (v, _) = geo.eval_numeric(&0.1, &1.0, &1.0, TailPolicy::default()).unwrap();
        assert!((v - 1.0 / 0.9).abs() < 1e-15);
    }
}
