//! Multilayer network storage.
//!
//! Nodes form an `m × η` grid of (layer, node) pairs, both 1-based. Intra-layer
//! edges are directed and may be self-loops. Inter-layer edges are stored once
//! per unordered pair with the lower layer first; the stored weight stands for
//! both directions.

mod io;
mod view;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use io::{export, import_edge_list, read_edge_list, write_edge_list, write_graphml, write_supra_csv, ExportFormat};
pub use view::{SubgraphKind, SubgraphView, ViewEdge};

/// Largest `m·η` for which a dense supra-adjacency matrix is materialised.
pub const SUPRA_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId {
    pub layer: usize,
    pub node: usize,
}

impl NodeId {
    pub fn new(layer: usize, node: usize) -> Self {
        Self { layer, node }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.layer, self.node)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Intra,
    Inter,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Intra => "intra",
            EdgeClass::Inter => "inter",
        }
    }
}

type EdgeMap = BTreeMap<(usize, usize), u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilayerNetwork {
    layers: usize,
    nodes_per_layer: usize,
    intra: Vec<EdgeMap>,
    /// Keyed by `(α, β)` with `α < β`; inner keys are `(node in α, node in β)`.
    inter: BTreeMap<(usize, usize), EdgeMap>,
}

impl MultilayerNetwork {
    pub fn new(layers: usize, nodes_per_layer: usize) -> Result<Self> {
        if layers == 0 || nodes_per_layer == 0 {
            return Err(Error::domain("a network needs at least one layer and one node per layer"));
        }
        Ok(Self {
            layers,
            nodes_per_layer,
            intra: vec![EdgeMap::new(); layers],
            inter: BTreeMap::new(),
        })
    }

    /// Number of layers, `m`.
    pub fn layers(&self) -> usize {
        self.layers
    }

    /// Nodes per layer, `η`.
    pub fn nodes_per_layer(&self) -> usize {
        self.nodes_per_layer
    }

    fn check_node(&self, n: NodeId) -> Result<()> {
        if n.layer == 0 || n.layer > self.layers || n.node == 0 || n.node > self.nodes_per_layer {
            return Err(Error::domain(format!(
                "node {n} outside the {}×{} grid",
                self.layers, self.nodes_per_layer
            )));
        }
        Ok(())
    }

    pub(crate) fn check_layer(&self, layer: usize) -> Result<()> {
        if layer == 0 || layer > self.layers {
            return Err(Error::domain(format!(
                "layer {layer} does not exist (network has {} layers)",
                self.layers
            )));
        }
        Ok(())
    }

    /// Adds `amount` to the edge `from → to`, creating it if absent.
    pub fn add_or_increment_edge(&mut self, from: NodeId, to: NodeId, amount: u64) -> Result<()> {
        self.check_node(from)?;
        self.check_node(to)?;
        if amount == 0 {
            return Err(Error::domain("edge increments must be positive"));
        }
        let (map, key) = if from.layer == to.layer {
            (&mut self.intra[from.layer - 1], (from.node, to.node))
        } else if from.layer < to.layer {
            (
                self.inter.entry((from.layer, to.layer)).or_default(),
                (from.node, to.node),
            )
        } else {
            (
                self.inter.entry((to.layer, from.layer)).or_default(),
                (to.node, from.node),
            )
        };
        *map.entry(key).or_insert(0) += amount;
        Ok(())
    }

    /// Weight of `from → to`, or 0 when absent. Inter-layer lookups are
    /// symmetric.
    pub fn weight(&self, from: NodeId, to: NodeId) -> u64 {
        let lookup = |map: Option<&EdgeMap>, key| map.and_then(|m| m.get(&key)).copied().unwrap_or(0);
        if from.layer == to.layer {
            lookup(self.intra.get(from.layer.wrapping_sub(1)), (from.node, to.node))
        } else if from.layer < to.layer {
            lookup(self.inter.get(&(from.layer, to.layer)), (from.node, to.node))
        } else {
            lookup(self.inter.get(&(to.layer, from.layer)), (to.node, from.node))
        }
    }

    /// Directed intra edges of `layer` as `(from, to, weight)`, sorted.
    pub fn intra_edges(&self, layer: usize) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.intra[layer - 1].iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Inter edges between layers `a < b` as `(node in a, node in b, weight)`.
    pub fn inter_edges(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        debug_assert!(a < b);
        self.inter
            .get(&(a, b))
            .into_iter()
            .flat_map(|m| m.iter().map(|(&(i, j), &w)| (i, j, w)))
    }

    /// All layer pairs `(a, b)`, `a < b`, in order.
    pub fn layer_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let m = self.layers;
        (1..=m).flat_map(move |a| (a + 1..=m).map(move |b| (a, b)))
    }

    pub fn intra_edge_count(&self, layer: usize) -> usize {
        self.intra[layer - 1].len()
    }

    pub fn inter_edge_count(&self, a: usize, b: usize) -> usize {
        self.inter.get(&(a, b)).map_or(0, BTreeMap::len)
    }

    pub fn intra_total_weight(&self, layer: usize) -> u64 {
        self.intra[layer - 1].values().sum()
    }

    pub fn inter_total_weight(&self, a: usize, b: usize) -> u64 {
        self.inter.get(&(a, b)).map_or(0, |m| m.values().sum())
    }

    pub fn edge_count(&self) -> usize {
        self.intra.iter().map(BTreeMap::len).sum::<usize>()
            + self.inter.values().map(BTreeMap::len).sum::<usize>()
    }

    pub fn total_weight(&self) -> u64 {
        self.intra.iter().flat_map(|m| m.values()).sum::<u64>()
            + self.inter.values().flat_map(|m| m.values()).sum::<u64>()
    }

    /// Row-normalised intra weights of `layer`: the Markov transition
    /// probabilities between its nodes. Rows without out-edges are absent.
    pub fn transition_probabilities(&self, layer: usize) -> Result<Vec<(usize, usize, f64)>> {
        self.check_layer(layer)?;
        let mut out_weight = vec![0u64; self.nodes_per_layer + 1];
        for (i, _, w) in self.intra_edges(layer) {
            out_weight[i] += w;
        }
        Ok(self
            .intra_edges(layer)
            .map(|(i, j, w)| (i, j, w as f64 / out_weight[i] as f64))
            .collect())
    }

    /// Inter weights of the pair divided by their total: the joint
    /// probability of two nodes being occupied at the same timestamp.
    pub fn co_occurrence_probabilities(&self, a: usize, b: usize) -> Result<Vec<(usize, usize, f64)>> {
        self.check_layer(a)?;
        self.check_layer(b)?;
        let (a, b) = (a.min(b), a.max(b));
        let total = self.inter_total_weight(a, b) as f64;
        Ok(self
            .inter_edges(a, b)
            .map(|(i, j, w)| (i, j, w as f64 / total))
            .collect())
    }

    pub fn subgraph(&self, kind: SubgraphKind) -> Result<SubgraphView<'_>> {
        SubgraphView::new(self, kind)
    }

    /// Dense `(m·η) × (m·η)` block matrix; block `(α, β)` holds the edges from
    /// layer α to layer β.
    pub fn supra_adjacency(&self) -> Result<DMatrix<u64>> {
        let n = self.layers * self.nodes_per_layer;
        if n > SUPRA_LIMIT {
            return Err(Error::Capacity(format!(
                "supra-adjacency of size {n} exceeds the dense limit {SUPRA_LIMIT}"
            )));
        }
        let eta = self.nodes_per_layer;
        let idx = |layer: usize, node: usize| (layer - 1) * eta + node - 1;
        let mut a = DMatrix::<u64>::zeros(n, n);
        for layer in 1..=self.layers {
            for (i, j, w) in self.intra_edges(layer) {
                a[(idx(layer, i), idx(layer, j))] = w;
            }
        }
        for (&(la, lb), map) in &self.inter {
            for (&(i, j), &w) in map {
                a[(idx(la, i), idx(lb, j))] = w;
                a[(idx(lb, j), idx(la, i))] = w;
            }
        }
        Ok(a)
    }

    /// Inverse of [`supra_adjacency`](Self::supra_adjacency). Off-diagonal
    /// blocks must be transposes of each other.
    pub fn from_supra_adjacency(layers: usize, nodes_per_layer: usize, a: &DMatrix<u64>) -> Result<Self> {
        let n = layers * nodes_per_layer;
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::Structure(format!(
                "supra-adjacency is {}×{}, expected {n}×{n}",
                a.nrows(),
                a.ncols()
            )));
        }
        let mut net = Self::new(layers, nodes_per_layer)?;
        let node = |k: usize| NodeId::new(k / nodes_per_layer + 1, k % nodes_per_layer + 1);
        for r in 0..n {
            for c in 0..n {
                let w = a[(r, c)];
                let (from, to) = (node(r), node(c));
                if from.layer != to.layer && a[(c, r)] != w {
                    return Err(Error::Structure(format!(
                        "inter-layer weights {from}→{to} and {to}→{from} differ"
                    )));
                }
                if w == 0 || from.layer > to.layer {
                    continue;
                }
                net.add_or_increment_edge(from, to, w)?;
            }
        }
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn n(layer: usize, node: usize) -> NodeId {
        NodeId::new(layer, node)
    }

    #[test]
    fn increments_accumulate() {
        let mut net = MultilayerNetwork::new(1, 3).unwrap();
        net.add_or_increment_edge(n(1, 2), n(1, 3), 1).unwrap();
        net.add_or_increment_edge(n(1, 2), n(1, 3), 1).unwrap();
        assert_eq!(net.weight(n(1, 2), n(1, 3)), 2);
        assert_eq!(net.weight(n(1, 3), n(1, 2)), 0);
    }

    #[test]
    fn inter_edges_are_canonicalised() {
        let mut net = MultilayerNetwork::new(2, 4).unwrap();
        net.add_or_increment_edge(n(2, 4), n(1, 1), 1).unwrap();
        assert_eq!(net.inter_edges(1, 2).collect::<Vec<_>>(), vec![(1, 4, 1)]);
        assert_eq!(net.weight(n(1, 1), n(2, 4)), 1);
        assert_eq!(net.weight(n(2, 4), n(1, 1)), 1);
    }

    #[test]
    fn self_loops_are_kept() {
        let mut net = MultilayerNetwork::new(1, 5).unwrap();
        net.add_or_increment_edge(n(1, 5), n(1, 5), 1).unwrap();
        assert_eq!(net.intra_edges(1).collect::<Vec<_>>(), vec![(5, 5, 1)]);
    }

    #[test]
    fn out_of_bounds_rejected() {
        let mut net = MultilayerNetwork::new(2, 3).unwrap();
        assert!(net.add_or_increment_edge(n(1, 4), n(1, 1), 1).is_err());
        assert!(net.add_or_increment_edge(n(3, 1), n(1, 1), 1).is_err());
        assert!(net.add_or_increment_edge(n(1, 0), n(1, 1), 1).is_err());
        assert!(net.add_or_increment_edge(n(1, 1), n(1, 1), 0).is_err());
    }

    #[test]
    fn supra_of_single_qg() {
        let mut net = MultilayerNetwork::new(1, 2).unwrap();
        net.add_or_increment_edge(n(1, 1), n(1, 2), 2).unwrap();
        net.add_or_increment_edge(n(1, 2), n(1, 1), 1).unwrap();
        let a = net.supra_adjacency().unwrap();
        assert_eq!(a, DMatrix::from_row_slice(2, 2, &[0, 2, 1, 0]));
    }

    #[test]
    fn supra_of_empty_net_is_zero() {
        let a = MultilayerNetwork::new(2, 2).unwrap().supra_adjacency().unwrap();
        assert_eq!(a, DMatrix::zeros(4, 4));
    }

    #[test]
    fn supra_size_guard() {
        let net = MultilayerNetwork::new(2, 5001).unwrap();
        assert!(matches!(net.supra_adjacency(), Err(Error::Capacity(_))));
    }

    #[test]
    fn asymmetric_supra_rejected() {
        let mut a = DMatrix::<u64>::zeros(4, 4);
        a[(0, 2)] = 1;
        assert!(MultilayerNetwork::from_supra_adjacency(2, 2, &a).is_err());
    }

    #[test]
    fn transition_rows_sum_to_one() {
        let mut net = MultilayerNetwork::new(1, 3).unwrap();
        for (i, j, w) in [(1, 1, 3), (1, 2, 1), (2, 3, 5), (3, 1, 2), (3, 3, 2)] {
            net.add_or_increment_edge(n(1, i), n(1, j), w).unwrap();
        }
        let p = net.transition_probabilities(1).unwrap();
        for row in 1..=3 {
            let s: f64 = p.iter().filter(|e| e.0 == row).map(|e| e.2).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    fn arb_edges(m: usize, eta: usize) -> impl Strategy<Value = Vec<(NodeId, NodeId, u64)>> {
        let node = (1..=m, 1..=eta).prop_map(|(l, i)| NodeId::new(l, i));
        prop::collection::vec((node.clone(), node, 1u64..5), 0..60)
    }

    proptest! {
        #[test]
        fn lookup_matches_naive_map(edges in arb_edges(3, 4)) {
            let mut net = MultilayerNetwork::new(3, 4).unwrap();
            let mut oracle: HashMap<(NodeId, NodeId), u64> = HashMap::new();
            for &(a, b, w) in &edges {
                net.add_or_increment_edge(a, b, w).unwrap();
                let key = if a.layer > b.layer { (b, a) } else { (a, b) };
                *oracle.entry(key).or_insert(0) += w;
            }
            for (&(a, b), &w) in &oracle {
                prop_assert_eq!(net.weight(a, b), w);
                if a.layer != b.layer {
                    prop_assert_eq!(net.weight(b, a), w);
                }
            }
            prop_assert_eq!(net.edge_count(), oracle.len());
            prop_assert_eq!(net.total_weight(), oracle.values().sum::<u64>());
        }

        #[test]
        fn supra_roundtrip_and_block_symmetry(edges in arb_edges(3, 3)) {
            let mut net = MultilayerNetwork::new(3, 3).unwrap();
            for &(a, b, w) in &edges {
                net.add_or_increment_edge(a, b, w).unwrap();
            }
            let a = net.supra_adjacency().unwrap();
            for la in 0..3 {
                for lb in 0..3 {
                    if la == lb { continue; }
                    let blk = a.view((la * 3, lb * 3), (3, 3));
                    let rev = a.view((lb * 3, la * 3), (3, 3));
                    prop_assert_eq!(blk.clone_owned(), rev.transpose());
                }
            }
            prop_assert_eq!(MultilayerNetwork::from_supra_adjacency(3, 3, &a).unwrap(), net);
        }
    }
}
