use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::graph::{pair_index, LabeledGraph};
use super::recognize::{girth, is_series_parallel, is_two_connected};

/// Enumeration cap used when none is configured (2^21 graphs at n = 7).
pub const DEFAULT_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    #[serde(rename = "all")]
    Any,
    Connected,
    /// Includes the single edge on two vertices.
    TwoConnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Sp,
    SpTriangleFree,
    SpQuadrangleFree,
    /// Series-parallel with girth at least `k`.
    SpGirth(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphClass {
    pub connectivity: Connectivity,
    pub family: Family,
}

impl GraphClass {
    pub fn new(connectivity: Connectivity, family: Family) -> Self {
        Self {
            connectivity,
            family,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connectivity::Any => "all",
            Connectivity::Connected => "connected",
            Connectivity::TwoConnected => "two_connected",
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sp => f.write_str("sp"),
            Family::SpTriangleFree => f.write_str("sp_triangle_free"),
            Family::SpQuadrangleFree => f.write_str("sp_quadrangle_free"),
            Family::SpGirth(k) => write!(f, "sp_girth({k})"),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.connectivity, self.family)
    }
}

impl FromStr for Connectivity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "any" => Ok(Connectivity::Any),
            "connected" => Ok(Connectivity::Connected),
            "two_connected" | "2-connected" => Ok(Connectivity::TwoConnected),
            _ => Err(Error::InvalidArgument(format!("unknown connectivity {s:?}"))),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp" => Ok(Family::Sp),
            "sp_triangle_free" => Ok(Family::SpTriangleFree),
            "sp_quadrangle_free" => Ok(Family::SpQuadrangleFree),
            _ => s
                .strip_prefix("sp_girth(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(Family::SpGirth)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown graph family {s:?}"))),
        }
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    /// `"connected/sp_triangle_free"`; a bare connectivity means plain SP.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((c, f)) => Ok(Self::new(c.parse()?, f.parse()?)),
            None => Ok(Self::new(s.parse()?, Family::Sp)),
        }
    }
}

impl Serialize for GraphClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GraphClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 11 {
        // 11 vertices already means 2^55 edge subsets; masks are u64.
        return Err(Error::OracleCap { n, cap: cap.min(11) });
    }
    Ok(())
}

pub fn passes_connectivity(g: &LabeledGraph, c: Connectivity) -> bool {
    match c {
        Connectivity::Any => true,
        Connectivity::Connected => g.n() >= 1 && g.is_connected(),
        Connectivity::TwoConnected => is_two_connected(g),
    }
}

pub fn passes_family(g: &LabeledGraph, f: Family) -> bool {
    if !is_series_parallel(g) {
        return false;
    }
    let min_girth = match f {
        Family::Sp => return true,
        Family::SpTriangleFree => 4,
        Family::SpGirth(k) => k as usize,
        Family::SpQuadrangleFree => {
            let c4 = LabeledGraph::cycle(4).expect("4-cycle");
            return count_injective(&c4, g) == 0;
        }
    };
    girth(g).map_or(true, |len| len >= min_girth)
}

pub fn in_class(g: &LabeledGraph, class: GraphClass) -> bool {
    passes_connectivity(g, class.connectivity) && passes_family(g, class.family)
}

/// All labelled simple graphs on `0..n` passing the connectivity filter, in
/// edge-mask order.
pub fn enumerate(n: usize, connectivity: Connectivity, cap: usize) -> Result<impl Iterator<Item = LabeledGraph>> {
    check_cap(n, cap)?;
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << pairs)
        .map(move |m| LabeledGraph::from_mask(n, m))
        .filter(move |g| passes_connectivity(g, connectivity)))
}

/// Number of injective maps `V(h) -> V(g)` sending edges to edges.
fn count_injective(h: &LabeledGraph, g: &LabeledGraph) -> u64 {
    let mut image = vec![usize::MAX; h.n()];
    fn go(i: usize, used: u32, image: &mut [usize], h: &LabeledGraph, g: &LabeledGraph) -> u64 {
        if i == h.n() {
            return 1;
        }
        let mut total = 0;
        for v in 0..g.n() {
            if used >> v & 1 == 1 {
                continue;
            }
            if (0..i).all(|j| !h.has_edge(i, j) || g.has_edge(v, image[j])) {
                image[i] = v;
                total += go(i + 1, used | 1 << v, image, h, g);
            }
        }
        total
    }
    go(0, 0, &mut image, h, g)
}

/// Order of the automorphism group, by brute force over vertex permutations.
pub fn automorphisms(h: &LabeledGraph) -> u64 {
    count_injective(h, h)
}

/// Copies of `h` in `g` as (not necessarily induced) subgraphs.
pub fn count_copies(g: &LabeledGraph, h: &LabeledGraph) -> Result<u64> {
    if !h.is_connected() || h.n() == 0 {
        return Err(Error::DisconnectedPattern);
    }
    if h.n() > g.n() {
        return Ok(0);
    }
    let maps = count_injective(h, g);
    let aut = automorphisms(h);
    if maps % aut != 0 {
        return Err(Error::Numeric(format!(
            "{maps} embeddings not divisible by |Aut| = {aut}"
        )));
    }
    Ok(maps / aut)
}

/// Edge masks of all copies of `h` inside the complete graph on `n` vertices.
pub fn copy_masks(n: usize, h: &LabeledGraph) -> Result<Vec<u64>> {
    if !h.is_connected() || h.n() == 0 {
        return Err(Error::DisconnectedPattern);
    }
    let k = LabeledGraph::complete(n)?;
    let mut image = vec![0usize; h.n()];
    let mut out = BTreeSet::new();
    let mut maps = 0u64;
    fn go(
        i: usize,
        used: u32,
        image: &mut [usize],
        h: &LabeledGraph,
        n: usize,
        out: &mut BTreeSet<u64>,
        maps: &mut u64,
    ) {
        if i == h.n() {
            *maps += 1;
            let mask = h
                .edges()
                .into_iter()
                .fold(0u64, |m, (a, b)| m | 1 << pair_index(n, image[a], image[b]));
            out.insert(mask);
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 {
                image[i] = v;
                go(i + 1, used | 1 << v, image, h, n, out, maps);
            }
        }
    }
    if h.n() <= n {
        go(0, 0, &mut image, h, k.n(), &mut out, &mut maps);
    }
    let aut = automorphisms(h);
    if maps != out.len() as u64 * aut {
        return Err(Error::Numeric(format!(
            "{maps} embeddings do not split into copies of size |Aut| = {aut}"
        )));
    }
    Ok(out.into_iter().collect())
}

/// Exact distribution of the number of copies of `pattern` over a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub class: GraphClass,
    #[serde(rename = "H")]
    pub pattern: LabeledGraph,
    pub total: u64,
    pub distribution: BTreeMap<u64, u64>,
}

impl Census {
    /// Coefficients of `sum_G u^copies(G)`, index = number of copies.
    pub fn u_polynomial(&self) -> Vec<u64> {
        let top = self.distribution.keys().next_back().copied().unwrap_or(0) as usize;
        let mut out = vec![0; top + 1];
        for (&k, &c) in &self.distribution {
            out[k as usize] = c;
        }
        out
    }

    pub fn mean(&self) -> f64 {
        let s: f64 = self
            .distribution
            .iter()
            .map(|(&k, &c)| k as f64 * c as f64)
            .sum();
        s / self.total as f64
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("census serializes")
    }
}

/// Counts copies of `pattern` over every graph of `class` on `n` vertices.
pub fn census(n: usize, class: GraphClass, pattern: &LabeledGraph, cap: usize) -> Result<Census> {
    check_cap(n, cap)?;
    let copies = copy_masks(n, pattern)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let space = 1u64 << pairs;
    let chunk = (space / 64).max(1);
    let chunks: Vec<u64> = (0..space).step_by(chunk as usize).collect();
    let partials: Vec<BTreeMap<u64, u64>> = chunks
        .par_iter()
        .map(|&start| {
            let mut dist = BTreeMap::new();
            for mask in start..(start + chunk).min(space) {
                let g = LabeledGraph::from_mask(n, mask);
                if !in_class(&g, class) {
                    continue;
                }
                let k = copies.iter().filter(|&&c| c & mask == c).count() as u64;
                *dist.entry(k).or_insert(0) += 1;
            }
            dist
        })
        .collect();
    let mut distribution = BTreeMap::new();
    for part in partials {
        for (k, c) in part {
            *distribution.entry(k).or_insert(0) += c;
        }
    }
    Ok(Census {
        n,
        class,
        pattern: pattern.clone(),
        total: distribution.values().sum(),
        distribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> LabeledGraph {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(3, Connectivity::Connected, 7).unwrap().count(), 4);
        assert_eq!(enumerate(2, Connectivity::TwoConnected, 7).unwrap().count(), 1);
        assert_eq!(enumerate(1, Connectivity::Connected, 7).unwrap().count(), 1);
        assert!(matches!(
            enumerate(8, Connectivity::Any, 7).err(),
            Some(Error::OracleCap { n: 8, cap: 7 })
        ));
    }

    #[test]
    fn copies() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let c4 = LabeledGraph::cycle(4).unwrap();
        let k4 = LabeledGraph::complete(4).unwrap();
        assert_eq!(count_copies(&k4, &k3).unwrap(), 4);
        assert_eq!(count_copies(&LabeledGraph::cycle(5).unwrap(), &LabeledGraph::path(3).unwrap()).unwrap(), 5);
        assert_eq!(count_copies(&g("4; 1-2,1-3,1-4,2-3,3-4"), &c4).unwrap(), 1);
        assert_eq!(automorphisms(&c4), 8);
        assert_eq!(count_copies(&k3, &k4).unwrap(), 0);
        assert_eq!(count_copies(&k4, &g("3; 1-2")), Err(Error::DisconnectedPattern));
        assert_eq!(copy_masks(4, &c4).unwrap().len(), 3);
    }

    #[test]
    fn small_censuses() {
        let k3 = LabeledGraph::complete(3).unwrap();
        let conn = census(3, GraphClass::new(Connectivity::Connected, Family::Sp), &k3, 7).unwrap();
        assert_eq!(conn.u_polynomial(), vec![3, 1]);
        let two = census(3, GraphClass::new(Connectivity::TwoConnected, Family::Sp), &k3, 7).unwrap();
        assert_eq!(two.u_polynomial(), vec![0, 1]);
        let json = conn.to_json();
        assert_eq!(json["H"], "3; 1-2,1-3,2-3");
        assert_eq!(json["class"], "connected/sp");
        let back: Census = serde_json::from_value(json).unwrap();
        assert_eq!(back, conn);
    }

    #[test]
    fn class_names_parse() {
        for s in ["all/sp", "connected/sp_triangle_free", "two_connected/sp_girth(5)"] {
            assert_eq!(s.parse::<GraphClass>().unwrap().to_string(), s);
        }
    }
}
