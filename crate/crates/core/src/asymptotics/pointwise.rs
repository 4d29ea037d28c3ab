use crate::error::{Error, Result};
use crate::ring::{Analytic, MultiDual};
use crate::systems::{evaluate, evaluate_rhs, PointDomain, SystemSpec};

use super::newton::{newton, NewtonOptions};

/// Values of all unknowns at one point, with `det(I - F_v)` there.
#[derive(Debug, Clone)]
pub struct PointSolution<T> {
    pub values: Vec<T>,
    pub det: T,
    pub residual: f64,
}

fn lift_domain<T: Analytic>(x: &T, y: &T, u: &T) -> PointDomain<MultiDual<T>> {
    PointDomain {
        x: MultiDual::constant(x.clone()),
        y: MultiDual::constant(y.clone()),
        u: MultiDual::constant(u.clone()),
    }
}

/// `F(v) - v` with gradients.
pub fn network_residual<T: Analytic>(
    spec: &SystemSpec,
    dom: &PointDomain<MultiDual<T>>,
    v: &[MultiDual<T>],
) -> Result<Vec<MultiDual<T>>> {
    let rhs = evaluate_rhs(spec, dom, v)?;
    Ok(rhs.into_iter().zip(v).map(|(f, vi)| f - vi).collect())
}

/// Fixed point at `x = 0`, reached by plain iteration (every unknown is a
/// polynomial in the others there).
pub fn values_at_origin<T: Analytic>(spec: &SystemSpec, y: &T, u: &T) -> Result<Vec<T>> {
    let dom = PointDomain {
        x: T::zero(),
        y: y.clone(),
        u: u.clone(),
    };
    let mut v = vec![T::zero(); spec.len()];
    for _ in 0..spec.len() + 2 {
        v = evaluate_rhs(spec, &dom, &v)?;
    }
    Ok(v)
}

pub(crate) fn newton_at<T: Analytic>(
    spec: &SystemSpec,
    x: &T,
    y: &T,
    u: &T,
    init: Vec<T>,
    opts: &NewtonOptions,
) -> Result<PointSolution<T>> {
    let dom = lift_domain(x, y, u);
    let out = newton(|v| network_residual(spec, &dom, v), init, opts)?;
    // The Jacobian is F_v - I.
    let det = if spec.len() % 2 == 0 {
        out.jacobian_det
    } else {
        -out.jacobian_det
    };
    if det.value_f64() <= 0.0 {
        return Err(Error::Newton(
            "converged to a point beyond the dominant singularity".into(),
        ));
    }
    Ok(PointSolution {
        values: out.x,
        det,
        residual: out.residual,
    })
}

/// Solves `v = F(x, y, u, v)` at a point.
///
/// With `init` the Newton iteration starts there; otherwise (or if that
/// fails) the solution is continued from `x = 0` along `t x`, halving the
/// step on failure. Points at or past the singularity fail because the
/// Jacobian degenerates or the iteration leaves the branch through the
/// origin.
pub fn pointwise_solve<T: Analytic>(
    spec: &SystemSpec,
    x: &T,
    y: &T,
    u: &T,
    init: Option<&[T]>,
    opts: &NewtonOptions,
) -> Result<PointSolution<T>> {
    if let Some(init) = init {
        if let Ok(sol) = newton_at(spec, x, y, u, init.to_vec(), opts) {
            return Ok(sol);
        }
    }
    let step_opts = NewtonOptions {
        max_iter: opts.max_iter.min(30),
        ..opts.clone()
    };
    let mut prev = values_at_origin(spec, y, u)?;
    let mut t = 0.0f64;
    let mut h = 1.0f64;
    loop {
        let target = (t + h).min(1.0);
        let xt = if target == 1.0 {
            x.clone()
        } else {
            x.clone() * T::from_f64(target)
        };
        let o = if target == 1.0 { opts } else { &step_opts };
        match newton_at(spec, &xt, y, u, prev.clone(), o) {
            Ok(sol) if target == 1.0 => return Ok(sol),
            Ok(sol) => {
                prev = sol.values;
                t = target;
                h *= 2.0;
            }
            Err(e) => {
                h /= 2.0;
                if h < 1e-9 {
                    return Err(Error::Newton(format!(
                        "continuation stalled at t = {t} towards x = {}: {e}",
                        x.value_f64()
                    )));
                }
            }
        }
    }
}

/// Evaluates named outputs of the system at a solved point.
pub fn outputs_at<T: Analytic>(
    spec: &SystemSpec,
    x: &T,
    y: &T,
    u: &T,
    values: &[T],
    names: &[&str],
) -> Result<Vec<T>> {
    let dom = PointDomain {
        x: x.clone(),
        y: y.clone(),
        u: u.clone(),
    };
    let ids = names
        .iter()
        .map(|n| spec.output(n))
        .collect::<Result<Vec<_>>>()?;
    evaluate(spec, &dom, values, &ids)
}
