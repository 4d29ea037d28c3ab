use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::series::{TruncatedSeries, Var};

use super::eval::{evaluate, evaluate_rhs, Domain, SeriesDomain};
use super::expr::{ClassTag, SystemSpec};

/// Solution series of a network system through `x^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedNetworks<R> {
    pub class: ClassTag,
    pub order: usize,
    pub names: Vec<String>,
    pub series: Vec<TruncatedSeries<R>>,
    pub sweeps: usize,
}

impl<R: Ring> SolvedNetworks<R> {
    pub fn get(&self, name: &str) -> Option<&TruncatedSeries<R>> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.series[i])
    }
}

/// Solves `v = rhs(v)` order by order, starting from zero.
///
/// Order-gaining unknowns are updated first in every sweep, the others follow
/// in dependency order, so sweep `s` fixes all coefficients through
/// `x^(s-1)`. Sweep `s` therefore only needs truncation order `s`. One extra
/// sweep at full order confirms the fixed point.
pub fn solve_fixed_point<R: Ring>(spec: &SystemSpec, dom: &SeriesDomain<R>) -> Result<SolvedNetworks<R>> {
    let n = dom.order;
    let order = spec.sweep_order()?;
    let mut vals: Vec<TruncatedSeries<R>> = (0..spec.len())
        .map(|_| dom.constant(&BigRational::from_integer(0.into())))
        .collect();
    let mut sweeps = 0;
    for s in 1..=n + 2 {
        sweeps = s;
        let level = s.min(n);
        let sub = dom.with_order(level);
        let mut cur: Vec<TruncatedSeries<R>> = vals.iter().map(|v| v.truncate(level)).collect();
        for &i in &order {
            let v = evaluate(spec, &sub, &cur, &[spec.rhs(i)])?.remove(0);
            cur[i] = v;
        }
        let next: Vec<TruncatedSeries<R>> = cur.iter().map(|v| v.truncate(n)).collect();
        if s == n + 2 {
            if next != vals {
                return Err(Error::NoConvergence { sweeps: s });
            }
            break;
        }
        vals = next;
    }
    Ok(SolvedNetworks {
        class: spec.class,
        order: n,
        names: spec.unknowns().to_vec(),
        series: vals,
        sweeps,
    })
}

/// `rhs(v) - v` for every unknown; identically zero for an exact solution.
pub fn residuals<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
) -> Result<Vec<TruncatedSeries<R>>> {
    let rhs = evaluate_rhs(spec, dom, &nets.series)?;
    rhs.iter()
        .zip(&nets.series)
        .map(|(r, v)| r.sub(v))
        .collect()
}

/// Evaluates a named output expression at the solution.
pub fn evaluate_output<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
    name: &str,
) -> Result<TruncatedSeries<R>> {
    let id = spec.output(name)?;
    Ok(evaluate(spec, dom, &nets.series, &[id])?.remove(0))
}

/// The 2-connected series `B` and, when assembled by dissymmetry, its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSeries<R> {
    pub class: ClassTag,
    pub b: TruncatedSeries<R>,
    pub b_r: Option<TruncatedSeries<R>>,
    pub b_m: Option<TruncatedSeries<R>>,
    pub b_rm: Option<TruncatedSeries<R>>,
}

fn check_tag(expected: ClassTag, got: ClassTag) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::TagMismatch {
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }
}

fn assemble_dissymmetry<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
) -> Result<BlockSeries<R>> {
    let ids = [
        spec.output("B")?,
        spec.output("B_R")?,
        spec.output("B_M")?,
        spec.output("B_RM")?,
    ];
    let mut v = evaluate(spec, dom, &nets.series, &ids)?.into_iter();
    let mut next = || v.next().expect("four outputs");
    Ok(BlockSeries {
        class: nets.class,
        b: next(),
        b_r: Some(next()),
        b_m: Some(next()),
        b_rm: Some(next()),
    })
}

/// `B = x^2 y/2 + B_R + B_M - B_RM` for the triangle-marked class.
pub fn assemble_b_triangle<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
) -> Result<BlockSeries<R>> {
    check_tag(ClassTag::Triangle, nets.class)?;
    check_tag(ClassTag::Triangle, spec.class)?;
    assemble_dissymmetry(spec, dom, nets)
}

/// `B = x^2 y/2 + B_R + B_M - B_RM` for the 4-cycle-marked class.
pub fn assemble_b_c4<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
) -> Result<BlockSeries<R>> {
    check_tag(ClassTag::C4, nets.class)?;
    check_tag(ClassTag::C4, spec.class)?;
    assemble_dissymmetry(spec, dom, nets)
}

/// `B` for a girth class from edge rooting: a block with a distinguished,
/// oriented edge is the root edge in parallel with a network whose poles are
/// far enough apart, i.e. `2 y dB/dy = x^2 P1`. Requires symbolic `y`.
pub fn assemble_b_girth<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    nets: &SolvedNetworks<R>,
) -> Result<BlockSeries<R>> {
    match nets.class {
        ClassTag::Girth(_) => {}
        other => {
            return Err(Error::TagMismatch {
                expected: "girth(k)".into(),
                got: other.to_string(),
            })
        }
    }
    if dom.y.is_some() {
        return Err(Error::InvalidArgument(
            "edge-rooted assembly needs y to stay symbolic".into(),
        ));
    }
    let p1 = evaluate_output(spec, dom, nets, "P1")?;
    // Same x-order as the dissymmetry assemblies.
    let rooted = p1.mul_x().mul_x().truncate(dom.order);
    Ok(BlockSeries {
        class: nets.class,
        b: unroot_edges(&rooted)?,
        b_r: None,
        b_m: None,
        b_rm: None,
    })
}

/// Inverts `2 y d/dy`: divides the `y^j` coefficient by `2j`.
pub fn unroot_edges<R: Ring>(s: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    let mut terms = Vec::with_capacity(s.num_terms());
    for ((i, j, k), c) in s.terms() {
        if j == 0 {
            return Err(Error::InvalidArgument(
                "edge-rooted series has a term without edges".into(),
            ));
        }
        terms.push((i, j, k, c.div_int(2 * j as i64)));
    }
    Ok(TruncatedSeries::from_terms(s.order_x(), terms).with_truncation(s.truncation())?)
}

/// Connected and general series built from the blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphClassSeries<R> {
    pub class: ClassTag,
    pub blocks: BlockSeries<R>,
    pub c_pointed: TruncatedSeries<R>,
    pub c: TruncatedSeries<R>,
    pub g: TruncatedSeries<R>,
}

/// Solves `C• = x exp(B'(C•))`, then `C = ∫ C•/x` and `G = exp(C)`, all
/// through `x^order`. `B` must be known through `x^(order+1)`.
pub fn connected_from_b<R: Ring>(blocks: BlockSeries<R>, order: usize) -> Result<GraphClassSeries<R>> {
    let have = blocks.b.order_x();
    if have < order + 1 {
        return Err(Error::InsufficientOrder {
            needed: order + 1,
            have,
        });
    }
    let b_deriv = blocks.b.truncate(order + 1).diff(Var::X)?;
    let mut cp = b_deriv.scale(&R::zero());
    for _ in 0..=order + 1 {
        let next = b_deriv.subs_x(&cp)?.exp()?.mul_x().truncate(order);
        if next == cp {
            break;
        }
        cp = next;
    }
    let check = b_deriv.subs_x(&cp)?.exp()?.mul_x().truncate(order);
    if check != cp {
        return Err(Error::NoConvergence { sweeps: order + 2 });
    }
    let c = cp.integrate_div_x()?;
    let g = c.exp()?;
    Ok(GraphClassSeries {
        class: blocks.class,
        blocks,
        c_pointed: cp,
        c,
        g,
    })
}

/// Solves the network system at order `order + 1`, assembles `B` and derives
/// the connected and general series through `x^order`.
pub fn solve_class<R: Ring>(
    spec: &SystemSpec,
    dom: &SeriesDomain<R>,
    order: usize,
) -> Result<(SolvedNetworks<R>, GraphClassSeries<R>)> {
    let dom = dom.with_order(order + 1);
    let nets = solve_fixed_point(spec, &dom)?;
    let blocks = match spec.class {
        ClassTag::Triangle => assemble_b_triangle(spec, &dom, &nets)?,
        ClassTag::C4 => assemble_b_c4(spec, &dom, &nets)?,
        ClassTag::Girth(_) => assemble_b_girth(spec, &dom, &nets)?,
    };
    let class = connected_from_b(blocks, order)?;
    Ok((nets, class))
}
