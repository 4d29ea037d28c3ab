use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::graph::{full, LabeledGraph};

/// Edge sets of the blocks (maximal 2-connected pieces, bridges included),
/// each as a list of `(a, b)` pairs.
pub fn blocks(g: &LabeledGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, remaining neighbours).
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames = vec![(root, usize::MAX, g.neighbours(root))];
        while let Some(&mut (v, parent, ref mut rest)) = frames.last_mut() {
            if *rest != 0 {
                let w = rest.trailing_zeros() as usize;
                *rest &= *rest - 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, g.neighbours(w)));
                } else if disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut block = Vec::new();
                    while let Some(e) = stack.pop() {
                        block.push(e);
                        if e == (parent, v) {
                            break;
                        }
                    }
                    out.push(block);
                }
            }
        }
    }
    out
}

/// Connected with no cut vertex, counting the single edge on two vertices as
/// 2-connected. Graphs on fewer than two vertices are not.
pub fn is_two_connected(g: &LabeledGraph) -> bool {
    match g.n() {
        0 | 1 => false,
        2 => g.has_edge(0, 1),
        n => {
            let all = full(n);
            g.is_connected()
                && (0..n).all(|v| {
                    let alive = all & !(1 << v);
                    let start = if v == 0 { 1 } else { 0 };
                    g.component(start, alive) == alive
                })
        }
    }
}

/// Series-parallel test by reduction: each block, viewed as a multigraph,
/// must shrink to a single edge by merging parallel edges and suppressing
/// degree-2 vertices.
pub fn is_series_parallel(g: &LabeledGraph) -> bool {
    blocks(g).iter().all(|b| block_reduces(b))
}

fn block_reduces(edges: &[(usize, usize)]) -> bool {
    // Parallel edges are merged on insert, which is the parallel reduction.
    let mut mult: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    for &(a, b) in edges {
        mult.insert(key(a, b));
    }
    let rebuild = |mult: &BTreeSet<(usize, usize)>, adj: &mut BTreeMap<usize, Vec<usize>>| {
        adj.clear();
        for &(a, b) in mult {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    };
    rebuild(&mult, &mut adj);
    let mut queue: VecDeque<usize> = adj.keys().copied().collect();
    while let Some(v) = queue.pop_front() {
        if adj.len() <= 2 {
            break;
        }
        let Some(nb) = adj.get(&v) else { continue };
        if nb.len() != 2 {
            continue;
        }
        let (a, b) = (nb[0], nb[1]);
        mult.remove(&key(v, a));
        mult.remove(&key(v, b));
        mult.insert(key(a, b));
        rebuild(&mult, &mut adj);
        queue.push_back(a);
        queue.push_back(b);
    }
    adj.len() <= 2
}

/// Direct search for a K4 minor: four disjoint connected vertex sets that are
/// pairwise joined by an edge. Exponential in `n`; meant for small graphs.
pub fn has_k4_minor(g: &LabeledGraph) -> bool {
    let n = g.n();
    if n < 4 || g.num_edges() < 6 {
        return false;
    }
    let connected: Vec<u32> = (1..=full(n))
        .filter(|&s| {
            let start = s.trailing_zeros() as usize;
            g.component(start, s) == s
        })
        .collect();
    let touch: Vec<u32> = connected
        .iter()
        .map(|&s| {
            let mut nb = 0;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                nb |= g.neighbours(v);
            }
            nb & !s
        })
        .collect();
    fn extend(chosen: &mut Vec<usize>, start: usize, used: u32, sets: &[u32], touch: &[u32]) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for i in start..sets.len() {
            if sets[i] & used != 0 {
                continue;
            }
            if chosen.iter().all(|&c| touch[c] & sets[i] != 0) {
                chosen.push(i);
                if extend(chosen, i + 1, used | sets[i], sets, touch) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(&mut Vec::new(), 0, 0, &connected, &touch)
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &LabeledGraph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let mut nb = g.neighbours(v);
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> LabeledGraph {
        s.parse().unwrap()
    }

    #[test]
    fn k4_and_friends() {
        let k4 = LabeledGraph::complete(4).unwrap();
        assert!(!is_series_parallel(&k4));
        assert!(has_k4_minor(&k4));
        let diamond = g("4; 1-2,1-3,1-4,2-3,3-4");
        assert!(is_series_parallel(&diamond));
        assert!(!has_k4_minor(&diamond));
        let tree = g("5; 1-2,1-3,3-4,3-5");
        assert!(is_series_parallel(&tree));
        // A subdivided K4 is not series-parallel.
        let sub = g("5; 1-2,1-3,1-5,5-4,2-3,2-4,3-4");
        assert!(!is_series_parallel(&sub));
        assert!(has_k4_minor(&sub));
    }

    #[test]
    fn block_decomposition() {
        let bowtie = g("5; 1-2,2-3,1-3,3-4,4-5,3-5");
        assert_eq!(blocks(&bowtie).len(), 2);
        assert!(!is_two_connected(&bowtie));
        assert!(is_two_connected(&g("2; 1-2")));
        assert!(!is_two_connected(&g("1;")));
        assert!(is_two_connected(&LabeledGraph::cycle(5).unwrap()));
        assert_eq!(blocks(&g("4; 1-2,2-3,3-4")).len(), 3);
    }

    #[test]
    fn girths() {
        assert_eq!(girth(&LabeledGraph::cycle(3).unwrap()), Some(3));
        assert_eq!(girth(&LabeledGraph::cycle(4).unwrap()), Some(4));
        assert_eq!(girth(&g("5; 1-2,1-3,3-4,3-5")), None);
        assert_eq!(girth(&g("6; 1-2,2-3,3-1,4-5,5-6")), Some(3));
    }
}
