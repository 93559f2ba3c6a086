use std::fmt;

use super::{EdgeClass, MultilayerNetwork, NodeId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgraphKind {
    /// One layer and its intra edges.
    Intra(usize),
    /// Two layers and only the inter edges between them.
    Inter(usize, usize),
    /// Two layers, both intra edge sets, and the inter edges between them.
    All(usize, usize),
}

impl fmt::Display for SubgraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgraphKind::Intra(a) => write!(f, "intra({a})"),
            SubgraphKind::Inter(a, b) => write!(f, "inter({a},{b})"),
            SubgraphKind::All(a, b) => write!(f, "all({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViewEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub weight: u64,
    pub class: EdgeClass,
}

/// Read-only projection of a network onto one of its subgraphs. Inter edges
/// are reported once, from the lower layer to the higher one.
#[derive(Debug, Clone, Copy)]
pub struct SubgraphView<'a> {
    net: &'a MultilayerNetwork,
    kind: SubgraphKind,
}

impl<'a> SubgraphView<'a> {
    pub(super) fn new(net: &'a MultilayerNetwork, kind: SubgraphKind) -> Result<Self> {
        let kind = match kind {
            SubgraphKind::Intra(a) => {
                net.check_layer(a)?;
                kind
            }
            SubgraphKind::Inter(a, b) | SubgraphKind::All(a, b) => {
                net.check_layer(a)?;
                net.check_layer(b)?;
                if a == b {
                    return Err(Error::domain(format!("{kind} needs two distinct layers")));
                }
                let (lo, hi) = (a.min(b), a.max(b));
                if matches!(kind, SubgraphKind::Inter(..)) {
                    SubgraphKind::Inter(lo, hi)
                } else {
                    SubgraphKind::All(lo, hi)
                }
            }
        };
        Ok(Self { net, kind })
    }

    pub fn kind(&self) -> SubgraphKind {
        self.kind
    }

    pub fn network(&self) -> &'a MultilayerNetwork {
        self.net
    }

    pub fn layers(&self) -> Vec<usize> {
        match self.kind {
            SubgraphKind::Intra(a) => vec![a],
            SubgraphKind::Inter(a, b) | SubgraphKind::All(a, b) => vec![a, b],
        }
    }

    /// Every grid node of the involved layers, occupied or not.
    pub fn nodes(&self) -> Vec<NodeId> {
        let eta = self.net.nodes_per_layer();
        self.layers()
            .into_iter()
            .flat_map(|l| (1..=eta).map(move |i| NodeId::new(l, i)))
            .collect()
    }

    pub fn edges(&self) -> Box<dyn Iterator<Item = ViewEdge> + 'a> {
        let net = self.net;
        let intra = move |layer: usize| {
            net.intra_edges(layer).map(move |(i, j, w)| ViewEdge {
                from: NodeId::new(layer, i),
                to: NodeId::new(layer, j),
                weight: w,
                class: EdgeClass::Intra,
            })
        };
        let inter = move |a: usize, b: usize| {
            net.inter_edges(a, b).map(move |(i, j, w)| ViewEdge {
                from: NodeId::new(a, i),
                to: NodeId::new(b, j),
                weight: w,
                class: EdgeClass::Inter,
            })
        };
        match self.kind {
            SubgraphKind::Intra(a) => Box::new(intra(a)),
            SubgraphKind::Inter(a, b) => Box::new(inter(a, b)),
            SubgraphKind::All(a, b) => Box::new(intra(a).chain(intra(b)).chain(inter(a, b))),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            SubgraphKind::Intra(a) => self.net.intra_edge_count(a),
            SubgraphKind::Inter(a, b) => self.net.inter_edge_count(a, b),
            SubgraphKind::All(a, b) => {
                self.net.intra_edge_count(a) + self.net.intra_edge_count(b) + self.net.inter_edge_count(a, b)
            }
        }
    }

    pub fn total_weight(&self) -> u64 {
        self.edges().map(|e| e.weight).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> MultilayerNetwork {
        let mut net = MultilayerNetwork::new(2, 3).unwrap();
        let e = |l, i, k, j| (NodeId::new(l, i), NodeId::new(k, j));
        for (a, b) in [e(1, 1, 1, 2), e(1, 2, 1, 1), e(2, 3, 2, 3), e(1, 1, 2, 3), e(2, 2, 1, 3)] {
            net.add_or_increment_edge(a, b, 1).unwrap();
        }
        net
    }

    #[test]
    fn intra_view_holds_one_layer() {
        let net = sample();
        let v = net.subgraph(SubgraphKind::Intra(1)).unwrap();
        assert_eq!(v.nodes().len(), 3);
        assert!(v.edges().all(|e| e.from.layer == 1 && e.to.layer == 1 && e.class == EdgeClass::Intra));
        assert_eq!(v.edge_count(), 2);
    }

    #[test]
    fn inter_view_has_no_intra_edges() {
        let net = sample();
        let v = net.subgraph(SubgraphKind::Inter(2, 1)).unwrap();
        assert_eq!(v.kind(), SubgraphKind::Inter(1, 2));
        assert_eq!(v.nodes().len(), 6);
        assert!(v.edges().all(|e| e.class == EdgeClass::Inter && e.from.layer == 1));
        assert_eq!(v.edge_count(), 2);

        let empty = MultilayerNetwork::new(2, 3).unwrap();
        let v = empty.subgraph(SubgraphKind::Inter(1, 2)).unwrap();
        assert_eq!((v.nodes().len(), v.edges().count()), (6, 0));
    }

    #[test]
    fn all_view_is_disjoint_union() {
        let net = sample();
        let all = net.subgraph(SubgraphKind::All(1, 2)).unwrap();
        let parts = [SubgraphKind::Intra(1), SubgraphKind::Intra(2), SubgraphKind::Inter(1, 2)]
            .map(|k| net.subgraph(k).unwrap().edge_count());
        assert_eq!(all.edge_count(), parts.iter().sum::<usize>());
        assert_eq!(all.edges().count(), all.edge_count());
    }

    #[test]
    fn unknown_layers_rejected() {
        let net = sample();
        assert!(net.subgraph(SubgraphKind::Intra(3)).is_err());
        assert!(net.subgraph(SubgraphKind::Inter(1, 1)).is_err());
        assert!(net.subgraph(SubgraphKind::All(0, 2)).is_err());
    }

    proptest! {
        #[test]
        fn all_view_weight_is_sum_of_parts(
            edges in prop::collection::vec(((1usize..=3, 1usize..=4), (1usize..=3, 1usize..=4), 1u64..9), 0..50)
        ) {
            let mut net = MultilayerNetwork::new(3, 4).unwrap();
            for ((la, i), (lb, j), w) in edges {
                net.add_or_increment_edge(NodeId::new(la, i), NodeId::new(lb, j), w).unwrap();
            }
            for (a, b) in net.layer_pairs().collect::<Vec<_>>() {
                let w = |k| net.subgraph(k).unwrap().total_weight();
                prop_assert_eq!(
                    w(SubgraphKind::All(a, b)),
                    w(SubgraphKind::Intra(a)) + w(SubgraphKind::Intra(b)) + w(SubgraphKind::Inter(a, b))
                );
                prop_assert_eq!(w(SubgraphKind::Inter(a, b)), net.inter_total_weight(a, b));
            }
        }
    }
}
