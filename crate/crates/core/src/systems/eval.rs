use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{Analytic, Ring};
use crate::series::{Truncation, TruncatedSeries, Var};

use super::expr::{Node, NodeId, SystemSpec};

/// Value domain in which a system's expressions can be evaluated.
pub trait Domain {
    type V: Clone;

    fn var(&self, v: Var) -> Result<Self::V>;
    fn constant(&self, q: &BigRational) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn exp_geq(&self, a: &Self::V, k: u32) -> Result<Self::V>;
    fn cyc(&self, a: &Self::V) -> Result<Self::V>;
    fn qbinom(&self, a: &Self::V, mark: &Self::V, shift: u32, kmin: u32) -> Result<Self::V>;
}

/// Evaluates the nodes needed for `roots`, given values for the unknowns.
pub fn evaluate<D: Domain>(
    spec: &SystemSpec,
    dom: &D,
    unknowns: &[D::V],
    roots: &[NodeId],
) -> Result<Vec<D::V>> {
    if unknowns.len() != spec.len() {
        return Err(Error::InvalidArgument(format!(
            "expected {} unknown values, got {}",
            spec.len(),
            unknowns.len()
        )));
    }
    let need = spec.reachable(roots);
    let nodes = spec.nodes();
    let mut vals: Vec<Option<D::V>> = vec![None; nodes.len()];
    for id in 0..nodes.len() {
        if !need[id] {
            continue;
        }
        let get = |c: &NodeId| vals[*c].as_ref().expect("children are evaluated first");
        let v = match &nodes[id] {
            Node::Var(v) => dom.var(*v)?,
            Node::Const(q) => dom.constant(q),
            Node::Unknown(i) => unknowns[*i].clone(),
            Node::Add(cs) => {
                let mut acc = get(&cs[0]).clone();
                for c in &cs[1..] {
                    acc = dom.add(&acc, get(c))?;
                }
                acc
            }
            Node::Mul(cs) => {
                let mut acc = get(&cs[0]).clone();
                for c in &cs[1..] {
                    acc = dom.mul(&acc, get(c))?;
                }
                acc
            }
            Node::Neg(a) => dom.neg(get(a)),
            Node::Pow(a, e) => {
                let base = get(a);
                let mut acc = base.clone();
                for _ in 1..*e {
                    acc = dom.mul(&acc, base)?;
                }
                acc
            }
            Node::ExpGeq(a, k) => dom.exp_geq(get(a), *k)?,
            Node::Cyc(a) => dom.cyc(get(a))?,
            Node::QBinom {
                arg,
                mark,
                shift,
                kmin,
            } => dom.qbinom(get(arg), get(mark), *shift, *kmin)?,
        };
        vals[id] = Some(v);
    }
    Ok(roots
        .iter()
        .map(|r| vals[*r].clone().expect("root evaluated"))
        .collect())
}

/// Evaluates every right-hand side.
pub fn evaluate_rhs<D: Domain>(spec: &SystemSpec, dom: &D, unknowns: &[D::V]) -> Result<Vec<D::V>> {
    evaluate(spec, dom, unknowns, spec.rhs_roots())
}

/// Truncated series in x with y and u either symbolic or fixed ring values.
#[derive(Debug, Clone)]
pub struct SeriesDomain<R> {
    pub order: usize,
    pub y: Option<R>,
    pub u: Option<R>,
    pub truncation: Truncation,
}

impl<R: Ring> SeriesDomain<R> {
    pub fn new(order: usize) -> Self {
        SeriesDomain {
            order,
            y: None,
            u: None,
            truncation: Truncation::default(),
        }
    }

    pub fn with_y(mut self, y: R) -> Self {
        self.y = Some(y);
        self
    }

    pub fn with_u(mut self, u: R) -> Self {
        self.u = Some(u);
        self
    }

    pub fn with_order(&self, order: usize) -> Self {
        SeriesDomain {
            order,
            ..self.clone()
        }
    }

    fn lift(&self, s: TruncatedSeries<R>) -> TruncatedSeries<R> {
        s.with_truncation(self.truncation)
            .expect("leaves respect the caps")
    }
}

impl<R: Ring> Domain for SeriesDomain<R> {
    type V = TruncatedSeries<R>;

    fn var(&self, v: Var) -> Result<Self::V> {
        let fixed = match v {
            Var::X => None,
            Var::Y => self.y.as_ref(),
            Var::U => self.u.as_ref(),
        };
        let s = match fixed {
            Some(c) => TruncatedSeries::constant(c.clone(), self.order),
            None => TruncatedSeries::var(v, self.order),
        };
        Ok(self.lift(s))
    }

    fn constant(&self, q: &BigRational) -> Self::V {
        self.lift(TruncatedSeries::constant(R::from_rational(q), self.order))
    }

    fn add(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        a.add(b)
    }

    fn mul(&self, a: &Self::V, b: &Self::V) -> Result<Self::V> {
        a.mul(b)
    }

    fn neg(&self, a: &Self::V) -> Self::V {
        a.neg()
    }

    fn exp_geq(&self, a: &Self::V, k: u32) -> Result<Self::V> {
        a.exp_geq(k as usize)
    }

    fn cyc(&self, a: &Self::V) -> Result<Self::V> {
        a.cyc()
    }

    fn qbinom(&self, a: &Self::V, mark: &Self::V, shift: u32, kmin: u32) -> Result<Self::V> {
        if *mark == self.lift(TruncatedSeries::var(Var::U, self.order)) {
            return a.qbinom_sum(shift, kmin as usize);
        }
        let c = constant_part(mark).ok_or_else(|| {
            Error::System("q-binomial mark must be u or a constant".into())
        })?;
        a.qbinom_sum_at(shift, kmin as usize, &c)
    }
}

fn constant_part<R: Ring>(s: &TruncatedSeries<R>) -> Option<R> {
    let mut terms = s.terms();
    match (terms.next(), terms.next()) {
        (None, _) => Some(R::zero()),
        (Some(((0, 0, 0), c)), None) => Some(c.clone()),
        _ => None,
    }
}

/// Numeric evaluation at a point `(x, y, u)`.
#[derive(Debug, Clone)]
pub struct PointDomain<T> {
    pub x: T,
    pub y: T,
    pub u: T,
}

const MAX_TERMS: usize = 5000;

fn small_enough<T: Analytic>(term: &T, sum: &T) -> bool {
    term.magnitude() <= T::epsilon() * 1e-3 * sum.magnitude().max(1e-300)
}

/// `sum_{i >= k} a^i / i!`, summed directly when `a` is small so that no
/// cancellation occurs.
pub fn exp_geq_numeric<T: Analytic>(a: &T, k: u32) -> Result<T> {
    if k == 0 {
        return Ok(a.exp());
    }
    if a.magnitude() < 0.5 {
        let mut term = T::one();
        for i in 1..=k {
            term = (term * a).div_int(i as i64);
        }
        let mut sum = term.clone();
        let mut i = k as i64;
        loop {
            i += 1;
            term = (term * a).div_int(i);
            sum = sum + &term;
            if small_enough(&term, &sum) || term.is_zero() {
                return Ok(sum);
            }
            if i as usize > MAX_TERMS {
                return Err(Error::Numeric("restricted exponential did not converge".into()));
            }
        }
    }
    let mut out = a.exp();
    let mut term = T::one();
    for i in 0..k {
        if i > 0 {
            term = (term * a).div_int(i as i64);
        }
        out = out - &term;
    }
    Ok(out)
}

/// `-log(1 - a)/2 - a/2 - a^2/4`.
pub fn cyc_numeric<T: Analytic>(a: &T) -> Result<T> {
    if a.value_f64() >= 1.0 {
        return Err(Error::Numeric("cycle construction evaluated at argument >= 1".into()));
    }
    if a.magnitude() < 0.5 {
        let mut power = a.clone() * a;
        let mut sum = T::zero();
        let mut n = 2i64;
        loop {
            n += 1;
            power = power * a;
            let term = power.div_int(2 * n);
            sum = sum + &term;
            if small_enough(&term, &sum) || term.is_zero() {
                return Ok(sum);
            }
            if n as usize > MAX_TERMS {
                return Err(Error::Numeric("cycle series did not converge".into()));
            }
        }
    }
    let log = (T::one() - a).ln();
    Ok(-(log.div_int(2)) - a.div_int(2) - (a.clone() * a).div_int(4))
}

/// `sum_{k >= kmin} m^C(k+shift, 2) a^k / k!` summed until the terms vanish.
pub fn qbinom_numeric<T: Analytic>(a: &T, mark: &T, shift: u32, kmin: u32) -> Result<T> {
    let mut power = T::one();
    // mark^C(k+shift, 2) and mark^(k+shift)
    let mut weight = mark.pow_u((shift * shift.saturating_sub(1) / 2) as u64);
    let mut step = mark.pow_u(shift as u64);
    let mut sum = T::zero();
    let start = 2.0 * a.value_f64().abs() + 4.0;
    for k in 0..MAX_TERMS {
        if k > 0 {
            power = (power * a).div_int(k as i64);
            weight = weight * &step;
            step = step * mark;
        }
        if k < kmin as usize {
            continue;
        }
        let term = weight.clone() * &power;
        sum = sum + &term;
        if (k as f64) > start && (small_enough(&term, &sum) || term.is_zero()) {
            return Ok(sum);
        }
    }
    Err(Error::Numeric("q-binomial sum did not converge".into()))
}

impl<T: Analytic> Domain for PointDomain<T> {
    type V = T;

    fn var(&self, v: Var) -> Result<T> {
        Ok(match v {
            Var::X => self.x.clone(),
            Var::Y => self.y.clone(),
            Var::U => self.u.clone(),
        })
    }

    fn constant(&self, q: &BigRational) -> T {
        T::from_rational(q)
    }

    fn add(&self, a: &T, b: &T) -> Result<T> {
        Ok(a.clone() + b)
    }

    fn mul(&self, a: &T, b: &T) -> Result<T> {
        Ok(a.clone() * b)
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn exp_geq(&self, a: &T, k: u32) -> Result<T> {
        exp_geq_numeric(a, k)
    }

    fn cyc(&self, a: &T) -> Result<T> {
        cyc_numeric(a)
    }

    fn qbinom(&self, a: &T, mark: &T, shift: u32, kmin: u32) -> Result<T> {
        qbinom_numeric(a, mark, shift, kmin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restricted_exponentials_agree() {
        for &a in &[0.01, 0.3, 0.7, 2.0] {
            let direct = a.exp() - 1.0 - a;
            let v = exp_geq_numeric(&a, 2).unwrap();
            assert!((v - direct).abs() < 1e-14 * direct.abs().max(1.0));
            let c = cyc_numeric(&a.min(0.9)).unwrap();
            let b = a.min(0.9);
            let want = -0.5 * (1.0 - b).ln() - b / 2.0 - b * b / 4.0;
            assert!((c - want).abs() < 1e-13);
        }
    }

    #[test]
    fn qbinom_special_marks() {
        let a = 0.4f64;
        // mark 1: plain restricted exponential
        let one = qbinom_numeric(&a, &1.0, 0, 2).unwrap();
        assert!((one - (a.exp() - 1.0 - a)).abs() < 1e-15);
        // mark 0, shift 0: only k <= 1 survives
        let zero = qbinom_numeric(&a, &0.0, 0, 0).unwrap();
        assert!((zero - (1.0 + a)).abs() < 1e-15);
        // mark 0, shift 1: only k = 0
        let zero1 = qbinom_numeric(&a, &0.0, 1, 0).unwrap();
        assert!((zero1 - 1.0).abs() < 1e-15);
    }
}
