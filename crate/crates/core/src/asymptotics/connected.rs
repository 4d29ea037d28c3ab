use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Analytic, BigFloat, Ring};
use crate::systems::SystemSpec;

use super::branch::{block_jet, branch_point, BranchPoint};
use super::report::{AsymptoticConstant, PolyExponent};

/// Counting constants of the connected and general classes built from a
/// block class at fixed `(y, u)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConnectedConstants {
    pub tau: BigFloat,
    pub rho: BigFloat,
    /// `C(rho)` from the closed form at the branch point.
    pub c_at_rho: BigFloat,
    /// `C(rho)` by quadrature of `C•(x)/x`, an independent check.
    pub c_at_rho_quadrature: f64,
    pub quadrature_nodes: usize,
    /// `exp(-C(rho))`, the limiting probability of connectedness.
    pub connectivity: BigFloat,
    pub connected: AsymptoticConstant,
    pub general: AsymptoticConstant,
}

/// Connected and general constants: with `h = sqrt(2/(B''^2 + B'''))` at
/// `tau`, `c = h/(2 sqrt(pi))` and `g = exp(C(rho)) c`, both with growth
/// `1/rho` and exponent `-5/2` on the EGF coefficients.
pub fn connected_constants(spec: &SystemSpec, y: f64, u: f64, radius: f64) -> Result<ConnectedConstants> {
    let bp = branch_point(spec, y, u, radius)?;
    let c_rho = bp.tau.clone() - bp.tau.clone() * &bp.b1 + bp.b0.clone();
    let (quad, nodes) = c_at_rho_quadrature(spec, y, u, &bp)?;
    let disc = bp.b2.clone() * &bp.b2 + bp.b3.clone();
    let h = BigFloat::from_i64(2)
        .checked_div(&disc)
        .ok_or(Error::Numeric("degenerate branch point: B''^2 + B''' = 0".into()))?
        .sqrt();
    let c = h * (BigFloat::pi().sqrt().mul_int(2)).inv().ok_or(Error::NotInvertible)?;
    let g = c.clone() * c_rho.exp();
    let err = bp.residual.max((quad - c_rho.value_f64()).abs());
    Ok(ConnectedConstants {
        connectivity: (-c_rho.clone()).exp(),
        connected: AsymptoticConstant::new(c, &bp.rho, PolyExponent::MinusFiveHalves, err)?,
        general: AsymptoticConstant::new(g, &bp.rho, PolyExponent::MinusFiveHalves, err)?,
        tau: bp.tau,
        rho: bp.rho,
        c_at_rho: c_rho,
        c_at_rho_quadrature: quad,
        quadrature_nodes: nodes,
    })
}

/// `C(rho) = int_0^rho C•(x)/x dx` with `x = rho (1 - s^2)`, which turns
/// the square-root singularity at `rho` into an analytic integrand in `s`.
/// Gauss-Legendre in f64, doubling the node count until two rules agree.
pub fn c_at_rho_quadrature(
    spec: &SystemSpec,
    y: f64,
    u: f64,
    bp: &BranchPoint<BigFloat>,
) -> Result<(f64, usize)> {
    let rho = bp.rho.value_f64();
    let tau = bp.tau.value_f64();
    let mut prev: Option<f64> = None;
    let mut n = 16;
    while n <= 512 {
        let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("nonzero"));
        // Nodes on s in (0, 1), processed by increasing x so each solve warm
        // starts from the last.
        let mut pts: Vec<(f64, f64)> = rule
            .into_node_weight_pairs()
            .iter()
            .map(|&(t, w)| (0.5 * (t + 1.0), 0.5 * w))
            .collect();
        pts.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut cp = 0.0;
        let mut net: Option<Vec<f64>> = None;
        let mut sum = 0.0;
        for (s, w) in pts {
            let x = rho * (1.0 - s * s);
            let (v, values) = pointed_at(spec, x, y, u, tau, cp, net.as_deref())?;
            sum += w * 2.0 * rho * s * v / x;
            cp = v;
            net = Some(values);
        }
        if let Some(p) = prev {
            if (sum - p).abs() < 1e-11 * sum.abs().max(1.0) {
                return Ok((sum, n));
            }
        }
        prev = Some(sum);
        n *= 2;
    }
    Err(Error::Numeric("quadrature of C(rho) did not settle".into()))
}

/// `C•(x)` for `0 < x < rho`: Newton on `c = x exp(B'(c))`, kept in `(0, tau)`.
fn pointed_at(
    spec: &SystemSpec,
    x: f64,
    y: f64,
    u: f64,
    tau: f64,
    start: f64,
    net: Option<&[f64]>,
) -> Result<(f64, Vec<f64>)> {
    let mut c = start.max(x);
    let mut values: Option<Vec<f64>> = net.map(<[f64]>::to_vec);
    for _ in 0..100 {
        let (b, v) = block_jet::<f64, 3>(spec, &c, &y, &u, values.as_deref())?;
        let e = b.derivative(1).exp();
        let phi = c - x * e;
        let dphi = 1.0 - x * e * b.derivative(2);
        values = Some(v);
        if phi.abs() < 1e-15 * c.max(1e-300) {
            return Ok((c, values.unwrap_or_default()));
        }
        let mut next = c - phi / dphi;
        if !(next > 0.0 && next < tau) || dphi <= 0.0 {
            next = if phi < 0.0 { 0.5 * (c + tau) } else { 0.5 * c };
        }
        // Near the branch point phi' is tiny and f64 noise in B' limits the
        // attainable residual, so a small step also counts as converged.
        if (next - c).abs() < 1e-13 * c {
            return Ok((next, values.unwrap_or_default()));
        }
        c = next;
    }
    Err(Error::Newton(format!("C•({x}) did not converge")))
}
