//! The network systems for triangle-marked, 4-cycle-marked and
//! girth-restricted series-parallel graphs.

use crate::error::{Error, Result};

use super::expr::{ClassTag, NodeId, SystemBuilder, SystemSpec};

/// Expressions for the five triangle-system quantities, whether they are
/// unknowns or explicit functions of other unknowns.
#[derive(Debug, Clone, Copy)]
struct TriangleParts {
    d: NodeId,
    p0: NodeId,
    p1: NodeId,
    s2: NodeId,
    s3: NodeId,
}

/// Adds the outputs `D, P0, P1, S2, S3, B_R, B_M, B_RM, B`.
fn triangle_outputs(b: &mut SystemBuilder, t: TriangleParts) {
    let x = b.x();
    let y = b.y();
    let u = b.u();
    let one = b.int(1);
    let um1 = b.sub(u, one);
    let half_x2 = {
        let x2 = b.pow(x, 2);
        let h = b.frac(1, 2);
        b.mul(&[h, x2])
    };

    // rings
    let p01 = b.add(&[t.p0, t.p1]);
    let xp01 = b.mul(&[x, p01]);
    let ring = b.cyc(xp01);
    let xp1 = b.mul(&[x, t.p1]);
    let xp1_3 = b.pow(xp1, 3);
    let sixth = b.frac(1, 6);
    let ring_fix = b.mul(&[um1, xp1_3, sixth]);
    let b_r = b.add(&[ring, ring_fix]);

    // multi-edges
    let us2 = b.mul(&[u, t.s2]);
    let us2_s3 = b.add(&[us2, t.s3]);
    let e2 = b.exp_geq(us2_s3, 2);
    let ye2 = b.mul(&[y, e2]);
    let s = b.add(&[t.s2, t.s3]);
    let e3 = b.exp_geq(s, 3);
    let m_inner = b.add(&[ye2, e3]);
    let b_m = b.mul(&[half_x2, m_inner]);

    // ring-multi-edge pairs
    let p01_y = b.sub(p01, y);
    let first = b.mul(&[s, p01_y]);
    let p1_y = b.sub(t.p1, y);
    let second = b.mul(&[um1, p1_y, t.s2]);
    let rm_inner = b.add(&[first, second]);
    let b_rm = b.mul(&[half_x2, rm_inner]);

    let edge = b.mul(&[half_x2, y]);
    let neg_rm = b.neg(b_rm);
    let total = b.add(&[edge, b_r, b_m, neg_rm]);

    for (name, id) in [
        ("D", t.d),
        ("P0", t.p0),
        ("P1", t.p1),
        ("S2", t.s2),
        ("S3", t.s3),
        ("B_R", b_r),
        ("B_M", b_m),
        ("B_RM", b_rm),
        ("B", total),
    ] {
        b.output(name, id);
    }
}

/// The five-equation network system with triangles marked by `u`.
pub fn triangle_network_system() -> SystemSpec {
    let mut b = SystemBuilder::new("triangle", ClassTag::Triangle);
    let d = b.unknown("D");
    let p0 = b.unknown("P0");
    let p1 = b.unknown("P1");
    let s2 = b.unknown("S2");
    let s3 = b.unknown("S3");
    let x = b.x();
    let y = b.y();
    let u = b.u();

    let d_rhs = b.add(&[p0, p1, s2, s3]);
    b.equation("D", d_rhs, false);
    let s = b.add(&[s2, s3]);
    let p0_rhs = b.exp_geq(s, 2);
    b.equation("P0", p0_rhs, false);
    let us2 = b.mul(&[u, s2]);
    let arg = b.add(&[us2, s3]);
    let e = b.exp(arg);
    let p1_rhs = b.mul(&[y, e]);
    b.equation("P1", p1_rhs, false);
    let p1sq = b.pow(p1, 2);
    let s2_rhs = b.mul(&[x, p1sq]);
    b.equation("S2", s2_rhs, true);
    let xdp0 = b.mul(&[x, d, p0]);
    let rest = b.add(&[p0, s2, s3]);
    let xp1r = b.mul(&[x, p1, rest]);
    let s3_rhs = b.add(&[xdp0, xp1r]);
    b.equation("S3", s3_rhs, true);

    triangle_outputs(
        &mut b,
        TriangleParts { d, p0, p1, s2, s3 },
    );
    b.finish().expect("triangle system is well formed")
}

/// The triangle system reduced to the two series unknowns `S2`, `S3`, with
/// `P0`, `P1` and `D` substituted explicitly.
pub fn triangle_reduced_pair() -> SystemSpec {
    let mut b = SystemBuilder::new("triangle_pair", ClassTag::Triangle);
    let s2 = b.unknown("S2");
    let s3 = b.unknown("S3");
    let x = b.x();
    let y = b.y();
    let u = b.u();
    let s = b.add(&[s2, s3]);
    let p0 = b.exp_geq(s, 2);
    let us2 = b.mul(&[u, s2]);
    let arg = b.add(&[us2, s3]);
    let e = b.exp(arg);
    let p1 = b.mul(&[y, e]);
    let d = b.add(&[p0, p1, s2, s3]);

    let p1sq = b.pow(p1, 2);
    let f1 = b.mul(&[x, p1sq]);
    b.equation("S2", f1, true);
    let xdp0 = b.mul(&[x, d, p0]);
    let rest = b.add(&[p0, s2, s3]);
    let xp1r = b.mul(&[x, p1, rest]);
    let f2 = b.add(&[xdp0, xp1r]);
    b.equation("S3", f2, true);

    triangle_outputs(&mut b, TriangleParts { d, p0, p1, s2, s3 });
    b.finish().expect("reduced triangle system is well formed")
}

/// The single implicit equation for `S3` in the triangle-free class (u = 0),
/// with `S2 = x y^2 exp(2 S3)` and everything else explicit.
pub fn triangle_free_single() -> SystemSpec {
    let mut b = SystemBuilder::new("triangle_free_single", ClassTag::Triangle);
    let s3 = b.unknown("S3");
    let x = b.x();
    let y = b.y();
    let e1 = b.exp(s3);
    let p1 = b.mul(&[y, e1]);
    let p1sq = b.pow(p1, 2);
    let s2 = b.mul(&[x, p1sq]);
    let s = b.add(&[s2, s3]);
    let p0 = b.exp_geq(s, 2);
    let es1 = b.exp_geq(s, 1);
    let inner = b.add(&[es1, p1]);
    let t1 = b.mul(&[p0, inner]);
    let t2 = b.mul(&[p1, es1]);
    let sum = b.add(&[t1, t2]);
    let rhs = b.mul(&[x, sum]);
    b.equation("S3", rhs, true);
    let d = b.add(&[p0, p1, s2, s3]);
    // u is absent from every network quantity here; the B formulas still
    // mention it and are evaluated with u = 0.
    triangle_outputs(&mut b, TriangleParts { d, p0, p1, s2, s3 });
    b.finish().expect("single equation is well formed")
}

/// The eleven-equation network system with 4-cycles marked by `u`.
pub fn c4_network_system() -> SystemSpec {
    let mut b = SystemBuilder::new("c4", ClassTag::C4);
    let d = b.unknown("D");
    let s2 = b.unknown("S2");
    let s2b = b.unknown("S2bar");
    let s3 = b.unknown("S3");
    let s3b = b.unknown("S3bar");
    let sinf = b.unknown("Sinf");
    let p1 = b.unknown("P1");
    let p1b = b.unknown("P1bar");
    let p2 = b.unknown("P2");
    let p2b = b.unknown("P2bar");
    let pinf = b.unknown("Pinf");
    let x = b.x();
    let y = b.y();
    let u = b.u();

    let d_rhs = b.add(&[s2, s3, sinf, p1, p2, pinf]);
    b.equation("D", d_rhs, false);

    let p1sq = b.pow(p1, 2);
    let r = b.mul(&[x, p1sq]);
    b.equation("S2", r, true);
    let p1bsq = b.pow(p1b, 2);
    let r = b.mul(&[x, p1bsq]);
    b.equation("S2bar", r, true);

    let p2s2 = b.add(&[p2, s2]);
    let a = b.mul(&[p1, p2s2]);
    let c = b.mul(&[p2, p1]);
    let sum = b.add(&[a, c]);
    let r = b.mul(&[x, sum]);
    b.equation("S3", r, true);

    let us2 = b.mul(&[u, s2]);
    let p2b_us2 = b.add(&[p2b, us2]);
    let a = b.mul(&[p1, p2b_us2]);
    let c = b.mul(&[p2b, p1]);
    let sum = b.add(&[a, c]);
    let r = b.mul(&[x, sum]);
    b.equation("S3bar", r, true);

    let t1_inner = b.add(&[pinf, s3, sinf]);
    let t1 = b.mul(&[p1, t1_inner]);
    let t2_inner = b.add(&[s2, s3, sinf, p2, pinf]);
    let t2 = b.mul(&[p2, t2_inner]);
    let t3 = b.mul(&[pinf, d]);
    let sum = b.add(&[t1, t2, t3]);
    let r = b.mul(&[x, sum]);
    b.equation("Sinf", r, true);

    let s3b_sinf = b.add(&[s3b, sinf]);
    let e_bar = b.exp(s3b_sinf);
    let q0 = b.qbinom(s2b, 0, 0);
    let r = b.mul(&[y, e_bar, q0]);
    b.equation("P1", r, false);
    let q1 = b.qbinom(s2b, 1, 0);
    let r = b.mul(&[y, e_bar, q1]);
    b.equation("P1bar", r, false);

    let s3_sinf = b.add(&[s3, sinf]);
    let e_ge1 = b.exp_geq(s3_sinf, 1);
    let e_all = b.exp(s3_sinf);
    let a = b.mul(&[s2, e_ge1]);
    let q = b.qbinom(s2, 0, 2);
    let c = b.mul(&[e_all, q]);
    let r = b.add(&[a, c]);
    b.equation("P2", r, false);
    let a = b.mul(&[u, s2, e_ge1]);
    let q = b.qbinom(s2, 1, 2);
    let c = b.mul(&[e_all, q]);
    let r = b.add(&[a, c]);
    b.equation("P2bar", r, false);

    let r = b.exp_geq(s3_sinf, 2);
    b.equation("Pinf", r, false);

    // 2-connected assembly
    let one = b.int(1);
    let um1 = b.sub(u, one);
    let x2 = b.pow(x, 2);
    let half = b.frac(1, 2);
    let half_x2 = b.mul(&[half, x2]);

    let pall = b.add(&[p1, p2, pinf]);
    let xpall = b.mul(&[x, pall]);
    let ring = b.cyc(xpall);
    let x3 = b.pow(x, 3);
    let sixth = b.frac(1, 6);
    let p1b3 = b.pow(p1b, 3);
    let p13 = b.pow(p1, 3);
    let three = b.int(3);
    let t_a = b.mul(&[three, p1sq, p2b]);
    let t_b = b.mul(&[three, p1sq, p2]);
    let neg_p13 = b.neg(p13);
    let neg_tb = b.neg(t_b);
    let bracket = b.add(&[p1b3, neg_p13, t_a, neg_tb]);
    let ring_fix = b.mul(&[x3, sixth, bracket]);
    let xp1 = b.mul(&[x, p1]);
    let xp1_4 = b.pow(xp1, 4);
    let eighth = b.frac(1, 8);
    let ring_fix4 = b.mul(&[um1, xp1_4, eighth]);
    let b_r = b.add(&[ring, ring_fix, ring_fix4]);

    let bar_sum = b.add(&[s2b, s3b, sinf]);
    let y_bar = b.mul(&[y, bar_sum]);
    let s2sq = b.pow(s2, 2);
    let us2sq_half = b.mul(&[u, s2sq, half]);
    let s2_s3inf = b.mul(&[s2, s3_sinf]);
    let s3inf_sq = b.pow(s3_sinf, 2);
    let s3inf_sq_half = b.mul(&[s3inf_sq, half]);
    let small = b.add(&[y, y_bar, us2sq_half, s2_s3inf, s3inf_sq_half]);
    let neg_small = b.neg(small);
    let m_inner = b.add(&[pall, neg_small]);
    let b_m = b.mul(&[half_x2, m_inner]);

    let p1b_y = b.sub(p1b, y);
    let a = b.mul(&[s2b, p1b_y]);
    let p2b_pinf = b.add(&[p2b, pinf]);
    let c = b.mul(&[s2, p2b_pinf]);
    let p1_y = b.sub(p1, y);
    let e = b.mul(&[s3b_sinf, p1_y]);
    let p2_pinf = b.add(&[p2, pinf]);
    let f = b.mul(&[s3_sinf, p2_pinf]);
    let rm_inner = b.add(&[a, c, e, f]);
    let b_rm = b.mul(&[half_x2, rm_inner]);

    let edge = b.mul(&[half_x2, y]);
    let neg_rm = b.neg(b_rm);
    let total = b.add(&[edge, b_r, b_m, neg_rm]);
    b.output("B_R", b_r);
    b.output("B_M", b_m);
    b.output("B_RM", b_rm);
    b.output("B", total);
    b.output("D", d);
    b.finish().expect("c4 system is well formed")
}

/// Network system for series-parallel graphs of girth at least `k`.
///
/// `S_i` (`2 <= i <= k-2`) and `P_i` (`1 <= i <= k-3`) have pole distance
/// exactly `i`; `Sinf` has distance at least `k-1` and `Pinf` at least `k-2`.
/// `S_1` is identically zero and is not declared.
pub fn girth_network_system(k: u32) -> Result<SystemSpec> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("girth must be at least 4, got {k}")));
    }
    let k = k as usize;
    let mut b = SystemBuilder::new(&format!("girth{k}"), ClassTag::Girth(k as u32));
    // index i -> node; S[1] stays None
    let mut s: Vec<Option<NodeId>> = vec![None; k - 1];
    for (i, slot) in s.iter_mut().enumerate().skip(2) {
        *slot = Some(b.unknown(&format!("S{i}")));
    }
    let sinf = b.unknown("Sinf");
    let mut p: Vec<Option<NodeId>> = vec![None; k - 2];
    for (i, slot) in p.iter_mut().enumerate().skip(1) {
        *slot = Some(b.unknown(&format!("P{i}")));
    }
    let pinf = b.unknown("Pinf");
    let x = b.x();
    let y = b.y();

    // pole distance of each quantity, with the infinite ones at their minimum
    let mut all: Vec<(usize, NodeId)> = Vec::new();
    for (i, n) in s.iter().enumerate() {
        if let Some(n) = n {
            all.push((i, *n));
        }
    }
    all.push((k - 1, sinf));
    for (i, n) in p.iter().enumerate() {
        if let Some(n) = n {
            all.push((i, *n));
        }
    }
    all.push((k - 2, pinf));

    let s_from = |b: &mut SystemBuilder, lo: usize| -> NodeId {
        let mut terms: Vec<NodeId> = (lo.max(2)..=k - 2).filter_map(|j| s[j]).collect();
        terms.push(sinf);
        b.add(&terms)
    };

    // parallel networks
    let e = b.exp(sinf);
    let p1_rhs = b.mul(&[y, e]);
    b.equation("P1", p1_rhs, false);
    for i in 2..=k - 3 {
        let si = s[i].expect("declared");
        let rhs = if 2 * i < k {
            let rest = s_from(&mut b, k - i);
            let e1 = b.exp_geq(rest, 1);
            b.mul(&[si, e1])
        } else {
            let rest = s_from(&mut b, i + 1);
            let e1 = b.exp_geq(rest, 1);
            let a = b.mul(&[si, e1]);
            let e2 = b.exp_geq(si, 2);
            let e0 = b.exp(rest);
            let c = b.mul(&[e2, e0]);
            b.add(&[a, c])
        };
        b.equation(&format!("P{i}"), rhs, false);
    }
    let top = s_from(&mut b, k - 2);
    let pinf_rhs = b.exp_geq(top, 2);
    b.equation("Pinf", pinf_rhs, false);

    // series networks
    for i in 2..=k - 2 {
        let mut terms = Vec::new();
        for j in 1..i {
            let pj = p[j].expect("declared");
            let mut tail = Vec::new();
            if let Some(sn) = s[i - j] {
                tail.push(sn);
            }
            tail.push(p[i - j].expect("declared"));
            let tail = b.add(&tail);
            terms.push(b.mul(&[pj, tail]));
        }
        let sum = b.add(&terms);
        let rhs = b.mul(&[x, sum]);
        b.equation(&format!("S{i}"), rhs, true);
    }
    let mut terms = Vec::new();
    let firsts: Vec<(usize, NodeId)> = p
        .iter()
        .enumerate()
        .filter_map(|(i, n)| n.map(|n| (i, n)))
        .chain(std::iter::once((k - 2, pinf)))
        .collect();
    for (j, pj) in firsts {
        let need = (k - 1).saturating_sub(j);
        let tail: Vec<NodeId> = all.iter().filter(|(t, _)| *t >= need).map(|(_, n)| *n).collect();
        let tail = b.add(&tail);
        terms.push(b.mul(&[pj, tail]));
    }
    let sum = b.add(&terms);
    let sinf_rhs = b.mul(&[x, sum]);
    b.equation("Sinf", sinf_rhs, true);

    let d_terms: Vec<NodeId> = all.iter().map(|(_, n)| *n).collect();
    let d = b.add(&d_terms);
    b.output("D", d);
    let p1 = p[1].expect("declared");
    b.output("P1", p1);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(triangle_network_system().len(), 5);
        assert_eq!(c4_network_system().len(), 11);
        let g5 = girth_network_system(5).unwrap();
        assert_eq!(g5.unknowns(), ["S2", "S3", "Sinf", "P1", "P2", "Pinf"]);
        assert!(girth_network_system(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = c4_network_system();
        let back = SystemSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
    }
}
