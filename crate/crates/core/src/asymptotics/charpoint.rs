use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Analytic, BigFloat, Jet, MultiDual, Ring, UJet2};
use crate::series::TruncatedSeries;
use crate::systems::{evaluate_rhs, solve_fixed_point, PointDomain, SeriesDomain, SystemSpec};

use super::linalg::determinant;
use super::newton::{newton, NewtonOptions};
use super::pointwise::newton_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CharMethod {
    Single,
    Pair,
    MultiDet,
    BranchPoint,
}

/// Which parameter, if any, carries the second-order jet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetParam {
    None,
    U,
    Y,
}

/// A point where the implicit system stops being solvable for `v` as an
/// analytic function of `x`.
#[derive(Debug, Clone)]
pub struct CharPoint<T> {
    /// Singular `x` (for the branch-point method, `rho`).
    pub r: T,
    /// Critical values of the unknowns (for the branch-point method, `[tau]`).
    pub y_star: Vec<T>,
    pub residual_norm: f64,
    pub method: CharMethod,
}

/// Residuals of `{v = F(x, v), det(I - F_v) = 0}` in `z = (x, v)`.
///
/// `F_v` comes from an outer layer of duals over the unknowns, so the
/// determinant still carries its gradient in `z`.
pub fn augmented_residual<T: Analytic>(
    spec: &SystemSpec,
    y: &T,
    u: &T,
    z: &[MultiDual<T>],
) -> Result<Vec<MultiDual<T>>> {
    type Outer<T> = MultiDual<MultiDual<T>>;
    let m = spec.len();
    let lift = |t: &T| Outer::constant(MultiDual::constant(t.clone()));
    let dom = PointDomain {
        x: Outer::constant(z[0].clone()),
        y: lift(y),
        u: lift(u),
    };
    let v: Vec<Outer<T>> = (0..m)
        .map(|i| {
            let mut grad = vec![MultiDual::zero(); m];
            grad[i] = MultiDual::one();
            MultiDual {
                value: z[i + 1].clone(),
                grad,
            }
        })
        .collect();
    let rhs = evaluate_rhs(spec, &dom, &v)?;
    let mut out: Vec<MultiDual<T>> = rhs
        .iter()
        .zip(&z[1..])
        .map(|(f, vi)| f.value.clone() - vi)
        .collect();
    let a: Vec<Vec<MultiDual<T>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let d = rhs[i].partial(j);
                    if i == j {
                        MultiDual::one() - d
                    } else {
                        -d
                    }
                })
                .collect()
        })
        .collect();
    out.push(determinant(a)?);
    Ok(out)
}

/// Newton on the augmented system from an initial `(x, v)`.
pub fn char_point<T: Analytic>(
    spec: &SystemSpec,
    y: &T,
    u: &T,
    x0: T,
    v0: Vec<T>,
    method: CharMethod,
    opts: &NewtonOptions,
) -> Result<CharPoint<T>> {
    let mut z0 = vec![x0];
    z0.extend(v0);
    let out = newton(|z| augmented_residual(spec, y, u, z), z0, opts)?;
    let mut z = out.x;
    let r = z.remove(0);
    if r.value_f64() <= 0.0 {
        return Err(Error::Newton("characteristic point at non-positive x".into()));
    }
    Ok(CharPoint {
        r,
        y_star: z,
        residual_norm: out.residual,
        method,
    })
}

/// Singularity estimate from the last coefficient ratio of the first
/// unknown, corrected for a square-root singularity: `c_n/c_(n-1) ~
/// (1 - 3/(2n))/R`.
pub fn ratio_estimate(spec: &SystemSpec, y: f64, u: f64, order: usize) -> Result<f64> {
    let dom = SeriesDomain::<f64>::new(order).with_y(y).with_u(u);
    let nets = solve_fixed_point(spec, &dom)?;
    let s: &TruncatedSeries<f64> = &nets.series[0];
    let c = |n: usize| s.coeff(n, 0, 0);
    let n = order;
    if c(n) <= 0.0 || c(n - 1) <= 0.0 {
        return Err(Error::Numeric("ratio test needs positive coefficients".into()));
    }
    Ok(c(n - 1) / c(n) * (1.0 - 1.5 / n as f64))
}

/// Marches `x` upward from `start` in f64 until the solution branch can no
/// longer be continued, returning the last point reached.
pub fn approach_singularity(spec: &SystemSpec, y: f64, u: f64, start: f64) -> Result<(f64, Vec<f64>)> {
    let opts = NewtonOptions {
        tol: 1e-13,
        max_iter: 40,
    };
    let first = super::pointwise::pointwise_solve(spec, &start, &y, &u, None, &opts)?;
    let mut x = start;
    let mut v = first.values;
    let mut h = start / 2.0;
    while h > 1e-8 * x {
        match newton_at(spec, &(x + h), &y, &u, v.clone(), &opts) {
            Ok(sol) => {
                x += h;
                v = sol.values;
                h *= 1.5;
            }
            Err(_) => h /= 3.0,
        }
    }
    Ok((x, v))
}

fn lift_param(v: f64, jet: bool) -> UJet2<BigFloat> {
    let b = BigFloat::from_f64(v);
    if jet {
        Jet::variable(b)
    } else {
        Jet::constant(b)
    }
}

/// Characteristic point with the requested second-order jet, refined through
/// f64, then the working precision, then the jet ring.
pub fn solve_char_point(
    spec: &SystemSpec,
    y: f64,
    u: f64,
    jet: JetParam,
    method: CharMethod,
) -> Result<CharPoint<UJet2<BigFloat>>> {
    let start = match ratio_estimate(spec, y, u, 40) {
        Ok(r) if r.is_finite() && r > 0.0 => 0.5 * r,
        _ => 0.01,
    };
    let (x, v) = approach_singularity(spec, y, u, start)?;
    let f = char_point(
        spec,
        &y,
        &u,
        x,
        v,
        method,
        &NewtonOptions {
            tol: 1e-12,
            max_iter: 60,
        },
    )?;
    let big = char_point(
        spec,
        &BigFloat::from_f64(y),
        &BigFloat::from_f64(u),
        BigFloat::from_f64(f.r),
        f.y_star.iter().map(|&t| BigFloat::from_f64(t)).collect(),
        method,
        &NewtonOptions::for_ring::<BigFloat>(),
    )?;
    let yj = lift_param(y, jet == JetParam::Y);
    let uj = lift_param(u, jet == JetParam::U);
    char_point(
        spec,
        &yj,
        &uj,
        Jet::constant(big.r),
        big.y_star.into_iter().map(Jet::constant).collect(),
        method,
        &NewtonOptions::for_ring::<UJet2<BigFloat>>(),
    )
}

/// Single implicit equation (the triangle-free `S3` equation, for instance).
pub fn char_single(spec: &SystemSpec, y: f64, u: f64, jet: JetParam) -> Result<CharPoint<UJet2<BigFloat>>> {
    if spec.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "single-equation method needs 1 unknown, system has {}",
            spec.len()
        )));
    }
    solve_char_point(spec, y, u, jet, CharMethod::Single)
}

/// Two-equation reduced system.
pub fn char_pair(spec: &SystemSpec, y: f64, u: f64, jet: JetParam) -> Result<CharPoint<UJet2<BigFloat>>> {
    if spec.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "pair method needs 2 unknowns, system has {}",
            spec.len()
        )));
    }
    solve_char_point(spec, y, u, jet, CharMethod::Pair)
}

/// Any finite system, through `det(I - F_v) = 0`.
pub fn char_multi_det(spec: &SystemSpec, y: f64, u: f64, jet: JetParam) -> Result<CharPoint<UJet2<BigFloat>>> {
    solve_char_point(spec, y, u, jet, CharMethod::MultiDet)
}
