use std::collections::BTreeMap;

use crate::mnet::{NodeId, SubgraphView};

/// Undirected weighted graph over `0..n`. Parallel and opposite edges merge by
/// summing their weights; a self-loop is stored once in its node's list.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<(usize, f64)>>,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) outside 0..{n}");
            *merged.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
        let mut g = Self::new(n);
        for ((u, v), w) in merged {
            g.adj[u].push((v, w));
            if u != v {
                g.adj[v].push((u, w));
            }
        }
        g
    }

    /// Occupied nodes of a view (those touching at least one edge), mapped to
    /// `0..n` in node order, with edge weights symmetrised.
    pub fn from_view(view: &SubgraphView<'_>) -> (Self, Vec<NodeId>) {
        let mut nodes: Vec<NodeId> = view.edges().flat_map(|e| [e.from, e.to]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let g = Self::from_edges(
            nodes.len(),
            view.edges().map(|e| (index[&e.from], index[&e.to], e.weight as f64)),
        );
        (g, nodes)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    /// Weighted degree; a self-loop counts twice.
    pub fn strength(&self, u: usize) -> f64 {
        self.adj[u].iter().map(|&(v, w)| if v == u { 2.0 * w } else { w }).sum()
    }

    /// Sum of edge weights, each undirected edge counted once.
    pub fn total_weight(&self) -> f64 {
        (0..self.node_count()).map(|u| self.strength(u)).sum::<f64>() / 2.0
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|a| !a.is_empty())
    }
}

/// Unweighted degree of every occupied node of a view.
///
/// Each stored edge adds one to both endpoints, except a self-loop which adds
/// one to its node. Opposite directed intra edges therefore count once each.
pub fn view_degrees(view: &SubgraphView<'_>) -> BTreeMap<NodeId, usize> {
    let mut deg = BTreeMap::new();
    for e in view.edges() {
        *deg.entry(e.from).or_insert(0) += 1;
        if e.to != e.from {
            *deg.entry(e.to).or_insert(0) += 1;
        }
    }
    deg
}
