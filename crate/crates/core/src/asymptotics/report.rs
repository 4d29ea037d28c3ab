use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Analytic, BigFloat, Ring, UJet2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    TwoConnected,
    Connected,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    RadiusJets,
    QuasiPowers,
}

/// Linear-order constants of the mean and variance of a subgraph count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentReport {
    pub mu: BigFloat,
    pub sigma2: BigFloat,
    pub level: Level,
    pub method: MomentMethod,
    /// Largest final Newton residual among the solves feeding the report.
    pub error_estimate: f64,
    pub precision_digits: u32,
}

/// `mu = -R'/R`, `sigma^2 = -R''/R - R'/R + (R'/R)^2` for a radius given as a
/// second-order jet in `u` at `u = 1`.
pub fn moments_from_radius<T: Analytic>(r: &UJet2<T>) -> Result<(T, T)> {
    let r0 = r.value();
    let inv = r0.inv().ok_or(Error::NotInvertible)?;
    let q1 = r.derivative(1) * &inv;
    let q2 = r.derivative(2) * &inv;
    let mu = -q1.clone();
    let sigma2 = -q2 - q1.clone() + q1.clone() * &q1;
    Ok((mu, sigma2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyExponent {
    /// `n^(-3/2)`, from a square-root singularity.
    #[serde(rename = "-3/2")]
    MinusThreeHalves,
    /// `n^(-5/2)`, from a `(1 - x/R)^(3/2)` singularity.
    #[serde(rename = "-5/2")]
    MinusFiveHalves,
}

/// `[x^n] f ~ c n^alpha growth_inv^n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AsymptoticConstant {
    pub c: BigFloat,
    pub growth_inv: BigFloat,
    pub polynomial_exponent: PolyExponent,
    pub error_estimate: f64,
}

impl AsymptoticConstant {
    pub fn new(c: BigFloat, radius: &BigFloat, polynomial_exponent: PolyExponent, error_estimate: f64) -> Result<Self> {
        let growth_inv = radius.inv().ok_or(Error::NotInvertible)?;
        Ok(AsymptoticConstant {
            c,
            growth_inv,
            polynomial_exponent,
            error_estimate,
        })
    }
}
