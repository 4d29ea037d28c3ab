//! Algebraic properties checked on random inputs, both by the property
//! tests and by `verify`.

use num_rational::BigRational;
use rand::Rng;

use crate::error::Result;
use crate::ring::{Jet, Ring};
use crate::series::{TruncatedSeries, Var};

type Q = BigRational;

/// Random series through `x^order` with small rational coefficients, no
/// terms below `x^valuation`, and `y`, `u` degrees up to 2.
pub fn random_series(rng: &mut impl Rng, order: usize, valuation: usize) -> TruncatedSeries<Q> {
    let mut terms = Vec::new();
    for i in valuation..=order {
        for _ in 0..rng.gen_range(0..=3) {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            terms.push((i, rng.gen_range(0..=2), rng.gen_range(0..=2), Q::new(num.into(), den.into())));
        }
    }
    TruncatedSeries::from_terms(order, terms)
}

pub fn random_jet<const N: usize>(rng: &mut impl Rng) -> Jet<Q, N> {
    Jet::from_coeffs(std::array::from_fn(|_| {
        Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
    }))
}

/// Commutativity, associativity and distributivity of the series ring,
/// plus the additive inverse.
pub fn series_ring_laws(a: &TruncatedSeries<Q>, b: &TruncatedSeries<Q>, c: &TruncatedSeries<Q>) -> Result<bool> {
    let comm = a.mul(b)? == b.mul(a)? && a.add(b)? == b.add(a)?;
    let assoc = a.mul(b)?.mul(c)? == a.mul(&b.mul(c)?)? && a.add(b)?.add(c)? == a.add(&b.add(c)?)?;
    let dist = a.mul(&b.add(c)?)? == a.mul(b)?.add(&a.mul(c)?)?;
    let inverse = a.add(&a.neg())?.is_zero();
    let one = TruncatedSeries::one(a.order_x());
    let unit = a.mul(&one)? == *a;
    Ok(comm && assoc && dist && inverse && unit)
}

pub fn jet_ring_laws<T: Ring, const N: usize>(a: &Jet<T, N>, b: &Jet<T, N>, c: &Jet<T, N>) -> bool {
    let comm = a.clone() * b == b.clone() * a;
    let assoc = (a.clone() * b) * c == a.clone() * (b.clone() * c);
    let dist = a.clone() * (b.clone() + c) == a.clone() * b + a.clone() * c;
    let unit = a.clone() * Jet::one() == *a;
    comm && assoc && dist && unit && (a.clone() - a).is_zero()
}

/// `log(exp(f)) = f` and `exp(log(1 + f)) = 1 + f` for `f` without a
/// constant term in `x`.
pub fn exp_log_inverse(f: &TruncatedSeries<Q>) -> Result<bool> {
    let one = TruncatedSeries::one(f.order_x());
    let e = f.exp()?;
    let back = e.sub(&one)?.ln_1p()?;
    let fwd = f.ln_1p()?.exp()?.sub(&one)?;
    Ok(back == *f && fwd == *f)
}

/// Pointing `x d/dx` and unpointing `int s/x` are inverse on series without
/// a constant term in `x`.
pub fn pointing_inverse(f: &TruncatedSeries<Q>) -> Result<bool> {
    let pointed = f.diff(Var::X)?.mul_x();
    let un = pointed.integrate_div_x()?;
    let re = f.integrate_div_x()?.diff(Var::X)?.mul_x();
    Ok(un == *f && re == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn random_properties_hold() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..5 {
            let a = random_series(&mut rng, 4, 0);
            let b = random_series(&mut rng, 4, 0);
            let c = random_series(&mut rng, 4, 0);
            assert!(series_ring_laws(&a, &b, &c).unwrap());
            let f = random_series(&mut rng, 5, 1);
            assert!(exp_log_inverse(&f).unwrap());
            assert!(pointing_inverse(&f).unwrap());
            let (x, y, z) = (random_jet::<3>(&mut rng), random_jet::<3>(&mut rng), random_jet::<3>(&mut rng));
            assert!(jet_ring_laws(&x, &y, &z));
        }
    }
}
