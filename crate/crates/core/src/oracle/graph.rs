use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count a [`LabeledGraph`] can hold (adjacency rows are `u32`).
pub const MAX_VERTICES: usize = 32;

/// A simple graph on the vertices `0..n`.
///
/// The text form `"n; a-b,c-d"` numbers vertices from 1, as is usual for
/// hand-written edge lists; the Rust API is 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    adj: Vec<u32>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices, at most {MAX_VERTICES} supported"
            )));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path with `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {a}-{b} out of range for {} vertices",
                self.n
            )));
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
        }
        if self.has_edge(a, b) {
            return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Builds the graph whose edges are the set bits of `mask`, indexed as in
    /// [`pair_index`].
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut adj = vec![0u32; n];
        let mut idx = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> idx & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
                idx += 1;
            }
        }
        Self { n, adj }
    }

    pub fn to_mask(&self) -> u64 {
        self.edges()
            .into_iter()
            .fold(0, |m, (a, b)| m | 1 << pair_index(self.n, a, b))
    }

    /// Vertices reachable from `start` within the vertex set `alive`.
    pub(crate) fn component(&self, start: usize, alive: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & alive & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component(0, full(self.n)) == full(self.n)
    }
}

pub(crate) fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Bit position of the pair `{a, b}` (`a < b`) among the `n(n-1)/2` pairs in
/// lexicographic order.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        let edges = self.edges();
        for (i, (a, b)) in edges.iter().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}{}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph({self})")
    }
}

impl FromStr for LabeledGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidGraph(format!("expected \"n; a-b,...\", got {s:?}")))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGraph(format!("bad vertex count {head:?}")))?;
        let mut g = Self::empty(n)?;
        for item in tail.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::InvalidGraph(format!("bad edge {item:?}")))?;
            let parse = |t: &str| -> Result<usize> {
                match t.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::InvalidGraph(format!("bad vertex {t:?} (1-based)"))),
                }
            };
            g.add_edge(parse(a)?, parse(b)?)?;
        }
        Ok(g)
    }
}

impl Serialize for LabeledGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g: LabeledGraph = "4; 1-2,2-3,3-4,1-4".parse().unwrap();
        assert_eq!(g, LabeledGraph::cycle(4).unwrap());
        assert_eq!(g.to_string(), "4; 1-2,1-4,2-3,3-4");
        assert_eq!(g.to_string().parse::<LabeledGraph>().unwrap(), g);
        assert_eq!("1;".parse::<LabeledGraph>().unwrap().n(), 1);
    }

    #[test]
    fn rejects_non_simple() {
        assert!("3; 1-1".parse::<LabeledGraph>().is_err());
        assert!("3; 1-2,2-1".parse::<LabeledGraph>().is_err());
        assert!("3; 1-4".parse::<LabeledGraph>().is_err());
        assert!("3; 0-1".parse::<LabeledGraph>().is_err());
    }

    #[test]
    fn masks_round_trip() {
        let n = 5;
        for mask in [0u64, 1, 0b1011_0110, (1 << 10) - 1] {
            assert_eq!(LabeledGraph::from_mask(n, mask).to_mask(), mask);
        }
        assert_eq!(pair_index(5, 3, 4), 9);
    }
}
