use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Analytic, BigFloat, Jet, MultiDual, Ring};
use crate::systems::{evaluate_rhs, PointDomain, SystemSpec};

use super::charpoint::{char_multi_det, JetParam};
use super::newton::{newton, NewtonOptions};
use super::pointwise::{outputs_at, pointwise_solve};
use super::report::{AsymptoticConstant, PolyExponent};

/// Largest supported expansion depth.
pub const MAX_DEPTH: usize = 6;

/// Expansions `f = sum_k f_k X^k` in `X = sqrt(1 - x/R)` around the
/// network singularity, for every unknown and the requested outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularExpansion {
    pub radius: BigFloat,
    pub depth: usize,
    pub coefficients: BTreeMap<String, Vec<BigFloat>>,
    pub residual: f64,
}

impl SingularExpansion {
    pub fn get(&self, name: &str) -> Option<&[BigFloat]> {
        self.coefficients.get(name).map(Vec::as_slice)
    }

    pub fn coefficient(&self, name: &str, k: usize) -> Result<&BigFloat> {
        self.get(name)
            .and_then(|c| c.get(k))
            .ok_or_else(|| Error::InvalidArgument(format!("no X^{k} coefficient for {name}")))
    }
}

/// Singular expansion through `X^depth` at fixed `(y, u)`.
///
/// The coefficients solve `F(R(1 - X^2), v(X)) = v(X)` order by order in
/// `X`. Orders `0..=depth+1` give as many equations as there are unknowns
/// once `R` joins them and the component of `Y_(depth+1)` along the kernel
/// is pinned to zero (it is only fixed at the next order).
pub fn singular_expansion(
    spec: &SystemSpec,
    y: f64,
    u: f64,
    depth: usize,
    outputs: &[&str],
) -> Result<SingularExpansion> {
    match depth {
        1 => expand::<3>(spec, y, u, outputs),
        2 => expand::<4>(spec, y, u, outputs),
        3 => expand::<5>(spec, y, u, outputs),
        4 => expand::<6>(spec, y, u, outputs),
        5 => expand::<7>(spec, y, u, outputs),
        6 => expand::<8>(spec, y, u, outputs),
        _ => Err(Error::InvalidArgument(format!(
            "expansion depth {depth} outside 1..={MAX_DEPTH}"
        ))),
    }
}

fn expand<const K: usize>(spec: &SystemSpec, y: f64, u: f64, outputs: &[&str]) -> Result<SingularExpansion> {
    let m = spec.len();
    let d = K - 2;
    let cp = char_multi_det(spec, y, u, JetParam::None)?;
    let r0 = cp.r.value().clone();
    let y0: Vec<BigFloat> = cp.y_star.iter().map(|v| v.value().clone()).collect();

    // First-order guess from one point just inside the singularity.
    let h = 1e-3;
    let xh = r0.value_f64() * (1.0 - h * h);
    let near = pointwise_solve(spec, &xh, &y, &u, None, &NewtonOptions::for_ring::<f64>())?;
    let y1: Vec<f64> = near
        .values
        .iter()
        .zip(&y0)
        .map(|(v, c)| (v - c.value_f64()) / h)
        .collect();
    let pivot = (0..m)
        .max_by(|&a, &b| y1[a].abs().total_cmp(&y1[b].abs()))
        .ok_or_else(|| Error::InvalidArgument("system without unknowns".into()))?;

    let mut z0 = vec![r0];
    z0.extend(y0);
    z0.extend(y1.iter().map(|&v| BigFloat::from_f64(v)));
    z0.extend(std::iter::repeat_with(BigFloat::zero).take(m * (d - 1) + m - 1));

    let yb = BigFloat::from_f64(y);
    let ub = BigFloat::from_f64(u);
    let out = newton(
        |z| {
            type E = MultiDual<BigFloat>;
            let lift = |t: &BigFloat| Jet::<E, K>::constant(E::constant(t.clone()));
            let x = x_of_big_x::<E, K>(&z[0]);
            let v = unpack::<E, K>(&z[1..], m, pivot);
            let dom = PointDomain {
                x,
                y: lift(&yb),
                u: lift(&ub),
            };
            let rhs = evaluate_rhs(spec, &dom, &v)?;
            let mut res = Vec::with_capacity(m * K);
            for k in 0..K {
                for (f, vi) in rhs.iter().zip(&v) {
                    res.push(f.coeff(k).clone() - vi.coeff(k));
                }
            }
            Ok(res)
        },
        z0,
        &NewtonOptions::for_ring::<BigFloat>(),
    )?;

    let z = out.x;
    let radius = z[0].clone();
    let x = x_of_big_x::<BigFloat, K>(&radius);
    let v = unpack::<BigFloat, K>(&z[1..], m, pivot);
    let mut coefficients = BTreeMap::new();
    for (name, vi) in spec.unknowns().iter().zip(&v) {
        coefficients.insert(name.clone(), vi.coeffs()[..=d].to_vec());
    }
    let yj = Jet::constant(yb);
    let uj = Jet::constant(ub);
    let outs = outputs_at(spec, &x, &yj, &uj, &v, outputs)?;
    for (name, o) in outputs.iter().zip(outs) {
        coefficients.insert(name.to_string(), o.coeffs()[..=d].to_vec());
    }
    Ok(SingularExpansion {
        radius,
        depth: d,
        coefficients,
        residual: out.residual,
    })
}

/// `x = R (1 - X^2)` as a jet in `X`.
fn x_of_big_x<T: Ring, const K: usize>(r: &T) -> Jet<T, K> {
    Jet::from_coeffs(std::array::from_fn(|k| match k {
        0 => r.clone(),
        2 => -r.clone(),
        _ => T::zero(),
    }))
}

/// Unknown jets from the flat layout `Y_0, ..., Y_(K-2)` (all `m`
/// components) followed by `Y_(K-1)` without its `pivot` component.
fn unpack<T: Ring, const K: usize>(flat: &[T], m: usize, pivot: usize) -> Vec<Jet<T, K>> {
    let full = m * (K - 1);
    let mut last = flat[full..].iter();
    let top: Vec<T> = (0..m)
        .map(|i| {
            if i == pivot {
                T::zero()
            } else {
                last.next().expect("layout").clone()
            }
        })
        .collect();
    (0..m)
        .map(|i| {
            Jet::from_coeffs(std::array::from_fn(|k| {
                if k + 1 < K {
                    flat[k * m + i].clone()
                } else {
                    top[i].clone()
                }
            }))
        })
        .collect()
}

/// Transfer of one singular term to coefficient asymptotics:
/// `c_3 X^3` gives `c_3 * 3/(4 sqrt(pi)) n^(-5/2) R^(-n)`, and `c_1 X`
/// gives `-c_1/(2 sqrt(pi)) n^(-3/2) R^(-n)`.
pub fn transfer_constant(exp: &SingularExpansion, name: &str, exponent: PolyExponent) -> Result<AsymptoticConstant> {
    let sqrt_pi = BigFloat::pi().sqrt();
    let c = match exponent {
        PolyExponent::MinusFiveHalves => {
            let c3 = exp.coefficient(name, 3)?;
            c3.mul_int(3)
                .checked_div(&sqrt_pi.mul_int(4))
                .ok_or(Error::NotInvertible)?
        }
        PolyExponent::MinusThreeHalves => {
            let c1 = exp.coefficient(name, 1)?;
            (-c1.clone())
                .checked_div(&sqrt_pi.mul_int(2))
                .ok_or(Error::NotInvertible)?
        }
    };
    if c.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{name} has no singular term of the requested order"
        )));
    }
    AsymptoticConstant::new(c, &exp.radius, exponent, exp.residual)
}
