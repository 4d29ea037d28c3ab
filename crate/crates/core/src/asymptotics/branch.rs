use crate::error::{Error, Result};
use crate::ring::{Analytic, BigFloat, Jet, Ring, UJet2, XJet3};
use crate::systems::SystemSpec;

use super::charpoint::{CharMethod, CharPoint};
use super::newton::NewtonOptions;
use super::pointwise::{outputs_at, pointwise_solve};
use super::report::{moments_from_radius, Level, MomentMethod, MomentReport};

/// Taylor jet of the block series `B` in `x` at a point inside the network
/// radius, from a pointwise solve lifted to a jet ring. Returns the jet and
/// the plain network values (for warm starts).
pub fn block_jet<T: Analytic, const N: usize>(
    spec: &SystemSpec,
    x: &T,
    y: &T,
    u: &T,
    init: Option<&[T]>,
) -> Result<(Jet<T, N>, Vec<T>)> {
    let plain = pointwise_solve(spec, x, y, u, init, &NewtonOptions::for_ring::<T>())?;
    let xj = Jet::<T, N>::variable(x.clone());
    let yj = Jet::constant(y.clone());
    let uj = Jet::constant(u.clone());
    let lifted: Vec<Jet<T, N>> = plain.values.iter().cloned().map(Jet::constant).collect();
    let sol = pointwise_solve(spec, &xj, &yj, &uj, Some(&lifted), &NewtonOptions::for_ring::<Jet<T, N>>())?;
    let b = outputs_at(spec, &xj, &yj, &uj, &sol.values, &["B"])?.remove(0);
    Ok((b, plain.values))
}

/// Branch point of `C = x exp(B'(C))`: `tau B''(tau) = 1`, `rho = tau
/// exp(-B'(tau))`, with the first three `x`-derivatives of `B` at `tau`.
#[derive(Debug, Clone)]
pub struct BranchPoint<T> {
    pub tau: T,
    pub rho: T,
    pub b0: T,
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub network: Vec<T>,
    pub residual: f64,
}

fn branch_data<T: Analytic>(tau: T, b: &XJet3<T>, network: Vec<T>, residual: f64) -> BranchPoint<T> {
    let b1 = b.derivative(1);
    let rho = tau.clone() * (-b1.clone()).exp();
    BranchPoint {
        rho,
        b0: b.value().clone(),
        b1,
        b2: b.derivative(2),
        b3: b.derivative(3),
        tau,
        network,
        residual,
    }
}

/// Newton on `g(tau) = tau B''(tau) - 1` in the ring `T`, from `tau0`.
pub fn branch_newton<T: Analytic>(
    spec: &SystemSpec,
    y: &T,
    u: &T,
    tau0: T,
    network0: Option<Vec<T>>,
) -> Result<BranchPoint<T>> {
    let tol = NewtonOptions::for_ring::<T>().tol;
    let mut tau = tau0;
    let mut net = network0;
    for _ in 0..60 {
        let (b, values) = block_jet::<T, 4>(spec, &tau, y, u, net.as_deref())?;
        let b2 = b.derivative(2);
        let b3 = b.derivative(3);
        let g = tau.clone() * &b2 - T::one();
        let res = g.magnitude();
        if res < tol {
            return Ok(branch_data(tau, &b, values, res));
        }
        let dg = b2 + tau.clone() * &b3;
        let step = g.checked_div(&dg).ok_or(Error::Newton("flat branch equation".into()))?;
        tau = tau - step;
        net = Some(values);
    }
    Err(Error::Newton("branch point iteration did not converge".into()))
}

/// f64 branch point bracketed in `(0, radius)`, where `radius` is the
/// singularity of the network system: bisection safeguarded Newton.
pub fn branch_bracket(spec: &SystemSpec, y: f64, u: f64, radius: f64) -> Result<BranchPoint<f64>> {
    let eval = |t: f64, init: Option<&[f64]>| -> Result<(f64, f64, XJet3<f64>, Vec<f64>)> {
        let (b, v) = block_jet::<f64, 4>(spec, &t, &y, &u, init)?;
        let g = t * b.derivative(2) - 1.0;
        let dg = b.derivative(2) + t * b.derivative(3);
        Ok((g, dg, b, v))
    };
    let mut lo = 0.0f64;
    let mut hi = radius;
    let mut t = 0.5 * radius;
    let mut init: Option<Vec<f64>> = None;
    let mut best: Option<BranchPoint<f64>> = None;
    for _ in 0..200 {
        match eval(t, init.as_deref()) {
            Ok((g, dg, b, v)) => {
                let done = g.abs() < 1e-11;
                if best.as_ref().map_or(true, |p| g.abs() < p.residual) {
                    best = Some(branch_data(t, &b, v.clone(), g.abs()));
                }
                if done {
                    break;
                }
                if g < 0.0 {
                    lo = t;
                } else {
                    hi = t;
                }
                init = Some(v);
                let next = t - g / dg;
                t = if next > lo && next < hi && dg > 0.0 {
                    next
                } else {
                    0.5 * (lo + hi)
                };
            }
            Err(_) => {
                hi = t;
                t = 0.5 * (lo + hi);
            }
        }
        if hi - lo < 1e-13 * hi {
            break;
        }
    }
    // The f64 stage only seeds the high-precision Newton iteration.
    best.filter(|p| p.residual < 1e-6).ok_or_else(|| {
        Error::Newton(format!("no branch point below the network singularity {radius}"))
    })
}

/// Branch point in the working precision at fixed `(y, u)`.
pub fn branch_point(spec: &SystemSpec, y: f64, u: f64, radius: f64) -> Result<BranchPoint<BigFloat>> {
    let f = branch_bracket(spec, y, u, radius)?;
    branch_newton(
        spec,
        &BigFloat::from_f64(y),
        &BigFloat::from_f64(u),
        BigFloat::from_f64(f.tau),
        Some(f.network.iter().map(|&v| BigFloat::from_f64(v)).collect()),
    )
}

/// Branch point with a second-order jet in `u`, so that `rho'(u)` and
/// `rho''(u)` are available.
pub fn branch_point_connected(spec: &SystemSpec, y: f64, u: f64, radius: f64) -> Result<CharPoint<UJet2<BigFloat>>> {
    let big = branch_point(spec, y, u, radius)?;
    let yj = Jet::constant(BigFloat::from_f64(y));
    let uj = Jet::variable(BigFloat::from_f64(u));
    let bp = branch_newton(
        spec,
        &yj,
        &uj,
        Jet::constant(big.tau),
        Some(big.network.into_iter().map(Jet::constant).collect()),
    )?;
    Ok(CharPoint {
        r: bp.rho,
        y_star: vec![bp.tau],
        residual_norm: bp.residual,
        method: CharMethod::BranchPoint,
    })
}

/// Connected-level moments from the jets of `rho(u)`.
pub fn connected_moments_radius(spec: &SystemSpec, y: f64, radius: f64) -> Result<MomentReport> {
    let cp = branch_point_connected(spec, y, 1.0, radius)?;
    let (mu, sigma2) = moments_from_radius(&cp.r)?;
    Ok(MomentReport {
        mu,
        sigma2,
        level: Level::Connected,
        method: MomentMethod::RadiusJets,
        error_estimate: cp.residual_norm,
        precision_digits: crate::ring::precision_digits(),
    })
}

/// Partial derivatives of `F(x, y, u) = x exp(B'(y, u))` at the branch point
/// `(x0, y0) = (rho, tau)`.
#[derive(Debug, Clone)]
pub struct QuasiPowersInput<T> {
    pub x0: T,
    pub f_x: T,
    pub f_u: T,
    pub f_xx: T,
    pub f_xu: T,
    pub f_uu: T,
    pub f_yy: T,
    pub f_yx: T,
    pub f_yu: T,
}

/// `mu = F_u/(x0 F_x)` and the matching variance formula for a
/// characteristic system `y = F(x, y, u)`, `1 = F_y`.
pub fn quasi_powers_moments<T: Analytic>(p: &QuasiPowersInput<T>) -> Result<(T, T)> {
    if p.f_yy.magnitude() == 0.0 {
        return Err(Error::Numeric("degenerate branch point: F_yy = 0".into()));
    }
    let den_mu = p.x0.clone() * &p.f_x;
    let mu = p
        .f_u
        .checked_div(&den_mu)
        .ok_or(Error::NotInvertible)?;
    let fx2 = p.f_x.clone() * &p.f_x;
    let fu2 = p.f_u.clone() * &p.f_u;
    let term1 = fx2 * (p.f_yy.clone() * &p.f_uu - p.f_yu.clone() * &p.f_yu);
    let term2 = (p.f_x.clone() * &p.f_u).mul_int(2)
        * (p.f_yy.clone() * &p.f_xu - p.f_yx.clone() * &p.f_yu);
    let term3 = fu2 * (p.f_yy.clone() * &p.f_xx - p.f_yx.clone() * &p.f_yx);
    let den = p.x0.clone() * &p.f_x * &p.f_x * &p.f_x * &p.f_yy;
    let frac = (term1 - term2 + term3)
        .checked_div(&den)
        .ok_or(Error::NotInvertible)?;
    let sigma2 = frac + mu.clone() + mu.clone() * &mu;
    Ok((mu, sigma2))
}

/// Quasi-powers input at a branch point found at `u = u0`: the `u`-jets of
/// `B'`, `B''` at the fixed point `tau(u0)`.
pub fn quasi_powers_input(
    spec: &SystemSpec,
    y: f64,
    u0: f64,
    bp: &BranchPoint<BigFloat>,
) -> Result<QuasiPowersInput<BigFloat>> {
    let yj: UJet2<BigFloat> = Jet::constant(BigFloat::from_f64(y));
    let uj: UJet2<BigFloat> = Jet::variable(BigFloat::from_f64(u0));
    let tau: UJet2<BigFloat> = Jet::constant(bp.tau.clone());
    let init: Vec<UJet2<BigFloat>> = bp.network.iter().cloned().map(Jet::constant).collect();
    let (b, _) = block_jet::<UJet2<BigFloat>, 4>(spec, &tau, &yj, &uj, Some(&init))?;
    let b1 = b.derivative(1);
    let b2 = b.derivative(2);
    let b3 = b.derivative(3).value().clone();
    let (b1v, b1u, b1uu) = (b1.value().clone(), b1.derivative(1), b1.derivative(2));
    let (b2v, b2u) = (b2.value().clone(), b2.derivative(1));
    let e = b1v.exp();
    let x0 = bp.rho.clone();
    let x0e = x0.clone() * &e;
    Ok(QuasiPowersInput {
        f_x: e.clone(),
        f_u: x0e.clone() * &b1u,
        f_xx: BigFloat::zero(),
        f_xu: e.clone() * &b1u,
        f_uu: x0e.clone() * (b1u.clone() * &b1u + b1uu),
        f_yy: x0e.clone() * (b2v.clone() * &b2v + b3),
        f_yx: e * &b2v,
        f_yu: x0e * (b1u * &b2v + b2u),
        x0,
    })
}

/// Connected-level moments by the quasi-powers formulas.
pub fn connected_moments_quasi_powers(spec: &SystemSpec, y: f64, radius: f64) -> Result<MomentReport> {
    let bp = branch_point(spec, y, 1.0, radius)?;
    let input = quasi_powers_input(spec, y, 1.0, &bp)?;
    let (mu, sigma2) = quasi_powers_moments(&input)?;
    Ok(MomentReport {
        mu,
        sigma2,
        level: Level::Connected,
        method: MomentMethod::QuasiPowers,
        error_estimate: bp.residual,
        precision_digits: crate::ring::precision_digits(),
    })
}
