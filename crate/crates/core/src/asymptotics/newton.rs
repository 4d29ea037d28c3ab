use crate::error::{Error, Result};
use crate::ring::{Analytic, MultiDual};

use super::linalg::Lu;

#[derive(Debug, Clone)]
pub struct NewtonOptions {
    /// Convergence threshold on the largest residual magnitude, relative to
    /// the largest magnitude among the unknowns (or 1 if that is smaller).
    pub tol: f64,
    pub max_iter: usize,
}

impl NewtonOptions {
    /// `epsilon^0.8` of the ring: 1e-40 at 50 digits, about 3e-13 for f64.
    pub fn for_ring<T: Analytic>() -> Self {
        NewtonOptions {
            tol: T::epsilon().powf(0.8),
            max_iter: 60,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonResult<T> {
    pub x: Vec<T>,
    pub residual: f64,
    pub iterations: usize,
    /// Determinant of the Jacobian at the returned point.
    pub jacobian_det: T,
}

fn norm<T: Analytic>(r: &[MultiDual<T>]) -> f64 {
    r.iter().map(|v| v.value.magnitude()).fold(0.0, f64::max)
}

/// Newton's method for `f(x) = 0` with the Jacobian from forward-mode duals.
///
/// `f` receives `x` as independent dual variables. A step whose evaluation
/// fails or whose residual blows up is halved, up to 12 times.
pub fn newton<T, F>(f: F, x0: Vec<T>, opts: &NewtonOptions) -> Result<NewtonResult<T>>
where
    T: Analytic,
    F: Fn(&[MultiDual<T>]) -> Result<Vec<MultiDual<T>>>,
{
    let n = x0.len();
    let lift = |x: &[T]| -> Vec<MultiDual<T>> {
        x.iter()
            .enumerate()
            .map(|(i, v)| MultiDual::variable(v.clone(), i, n))
            .collect()
    };
    let mut x = x0;
    let mut r = f(&lift(&x))?;
    if r.len() != n {
        return Err(Error::Newton(format!("{} residuals for {n} unknowns", r.len())));
    }
    let mut res = norm(&r);
    for it in 0..=opts.max_iter {
        let jac: Vec<Vec<T>> = r
            .iter()
            .map(|ri| (0..n).map(|j| ri.partial(j)).collect())
            .collect();
        let lu = Lu::new(jac)?;
        let scale = x.iter().map(T::magnitude).fold(1.0, f64::max);
        if res < opts.tol * scale {
            return Ok(NewtonResult {
                x,
                residual: res,
                iterations: it,
                jacobian_det: lu.det(),
            });
        }
        if !res.is_finite() {
            return Err(Error::Newton("residual is not finite".into()));
        }
        let rhs: Vec<T> = r.iter().map(|ri| -ri.value.clone()).collect();
        let step = lu.solve(&rhs)?;
        let mut scale = T::one();
        let mut accepted = None;
        for _ in 0..12 {
            let trial: Vec<T> = x
                .iter()
                .zip(&step)
                .map(|(xi, si)| xi.clone() + si.clone() * &scale)
                .collect();
            if let Ok(rt) = f(&lift(&trial)) {
                let rn = norm(&rt);
                if rn.is_finite() && rn <= 4.0 * res + opts.tol {
                    accepted = Some((trial, rt, rn));
                    break;
                }
            }
            scale = scale.div_int(2);
        }
        let Some((xn, rn_vec, rn)) = accepted else {
            return Err(Error::Newton(format!(
                "no acceptable step at iteration {it} (residual {res:e})"
            )));
        };
        x = xn;
        r = rn_vec;
        res = rn;
    }
    Err(Error::Newton(format!(
        "no convergence in {} iterations (residual {res:e})",
        opts.max_iter
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BigFloat, Ring};

    #[test]
    fn solves_circle_line() {
        // x^2 + y^2 = 2, x = y  ->  (1, 1)
        let out = newton(
            |v: &[MultiDual<f64>]| {
                Ok(vec![
                    v[0].clone() * &v[0] + v[1].clone() * &v[1] - MultiDual::from_i64(2),
                    v[0].clone() - &v[1],
                ])
            },
            vec![2.0, 0.5],
            &NewtonOptions::for_ring::<f64>(),
        )
        .unwrap();
        assert!((out.x[0] - 1.0).abs() < 1e-12 && (out.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bigfloat_sqrt_two() {
        let out = newton(
            |v: &[MultiDual<BigFloat>]| Ok(vec![v[0].clone() * &v[0] - MultiDual::from_i64(2)]),
            vec![BigFloat::one()],
            &NewtonOptions::for_ring::<BigFloat>(),
        )
        .unwrap();
        assert_eq!(
            out.x[0].to_decimal_string(40),
            BigFloat::from_i64(2).sqrt().to_decimal_string(40)
        );
    }
}
