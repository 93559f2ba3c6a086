//! Weighted modularity and Louvain community detection.
//!
//! Modularity is `Q = Σ_c [ L_c / m − (d_c / 2m)² ]` where `m` is the total
//! edge weight, `L_c` the weight inside community `c` and `d_c` the summed
//! strength of its nodes (self-loops count twice in strength, once in `L_c`).
//!
//! Louvain alternates local moving, visiting nodes in index order, with
//! aggregation of communities into super-nodes until no node moves. Ties
//! between candidate communities go to the current one, then to the lowest
//! community index, which makes the result fully deterministic.

use super::graph::UndirectedGraph;

const MIN_GAIN: f64 = 1e-12;
const MAX_PASSES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Community of every node, numbered `0..count` by first appearance.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self { count: map.len(), labels }
    }
}

pub fn modularity(g: &UndirectedGraph, labels: &[usize]) -> f64 {
    assert_eq!(labels.len(), g.node_count());
    let m = g.total_weight();
    if m <= 0.0 {
        return 0.0;
    }
    let k = labels.iter().copied().max().map_or(0, |x| x + 1);
    let mut inside = vec![0.0; k];
    let mut strength = vec![0.0; k];
    for u in 0..g.node_count() {
        let cu = labels[u];
        strength[cu] += g.strength(u);
        for &(v, w) in g.neighbors(u) {
            if labels[v] == cu {
                // non-loop edges are seen from both ends
                inside[cu] += if u == v { w } else { w / 2.0 };
            }
        }
    }
    inside
        .iter()
        .zip(&strength)
        .map(|(&l, &d)| l / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// One round of local moving. Returns whether any node changed community.
fn local_moving(g: &UndirectedGraph, comm: &mut [usize], two_m: f64) -> bool {
    let n = g.node_count();
    let strength: Vec<f64> = (0..n).map(|u| g.strength(u)).collect();
    let mut total = vec![0.0; n];
    for u in 0..n {
        total[comm[u]] += strength[u];
    }
    let mut links = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut moved_any = false;

    for _ in 0..MAX_PASSES {
        let mut moved = false;
        for u in 0..n {
            let own = comm[u];
            for &(v, w) in g.neighbors(u) {
                if v != u {
                    let c = comm[v];
                    if links[c] == 0.0 {
                        touched.push(c);
                    }
                    links[c] += w;
                }
            }
            total[own] -= strength[u];
            let gain = |c: usize, links: &[f64]| links[c] - strength[u] * total[c] / two_m;

            let mut best = own;
            let mut best_gain = gain(own, &links);
            touched.sort_unstable();
            for &c in &touched {
                let g_c = gain(c, &links);
                if g_c > best_gain + MIN_GAIN {
                    best = c;
                    best_gain = g_c;
                }
            }
            total[best] += strength[u];
            if best != own {
                comm[u] = best;
                moved = true;
            }
            for &c in &touched {
                links[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        moved_any = true;
    }
    moved_any
}

fn aggregate(g: &UndirectedGraph, labels: &[usize], count: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..g.node_count() {
        for &(v, w) in g.neighbors(u) {
            if u <= v {
                edges.push((labels[u], labels[v], w));
            }
        }
    }
    UndirectedGraph::from_edges(count, edges)
}

/// Louvain partition. An edgeless graph leaves every node on its own.
pub fn louvain(g: &UndirectedGraph) -> Partition {
    let n = g.node_count();
    let two_m = 2.0 * g.total_weight();
    let mut membership: Vec<usize> = (0..n).collect();
    if two_m <= 0.0 {
        return Partition::from_labels(&membership);
    }

    let mut level = g.clone();
    loop {
        let mut comm: Vec<usize> = (0..level.node_count()).collect();
        if !local_moving(&level, &mut comm, two_m) {
            break;
        }
        let part = Partition::from_labels(&comm);
        for m in membership.iter_mut() {
            *m = part.labels[*m];
        }
        if part.count == level.node_count() {
            break;
        }
        level = aggregate(&level, &part.labels, part.count);
    }
    Partition::from_labels(&membership)
}
