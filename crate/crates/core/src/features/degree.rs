use std::collections::BTreeMap;

use super::graph::view_degrees;
use crate::error::{Error, Result};
use crate::mnet::{MultilayerNetwork, NodeId, SubgraphKind, SubgraphView};

/// Mean unweighted degree over the occupied nodes of a view.
pub fn avg_degree(view: &SubgraphView<'_>) -> Result<f64> {
    let deg = view_degrees(view);
    if deg.is_empty() {
        return Err(Error::domain(format!("{} has no occupied nodes", view.kind())));
    }
    Ok(deg.values().sum::<usize>() as f64 / deg.len() as f64)
}

/// Probability mass over observed degree values.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    mass: BTreeMap<usize, f64>,
}

impl DegreeDistribution {
    pub fn new(mass: BTreeMap<usize, f64>) -> Result<Self> {
        if mass.values().any(|&p| !(p >= 0.0)) {
            return Err(Error::domain("degree probabilities must be non-negative"));
        }
        let total: f64 = mass.values().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("degree distribution sums to {total}, not 1")));
        }
        Ok(Self { mass })
    }

    /// Empirical distribution of a degree sequence.
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut n = 0usize;
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
            n += 1;
        }
        if n == 0 {
            return Err(Error::domain("empty degree sequence"));
        }
        Ok(Self {
            mass: counts.into_iter().map(|(d, c)| (d, c as f64 / n as f64)).collect(),
        })
    }

    pub fn prob(&self, degree: usize) -> f64 {
        self.mass.get(&degree).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mass.keys().copied()
    }
}

/// Jensen–Shannon divergence in bits; lies in `[0, 1]`.
pub fn jsd(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let mut support: Vec<usize> = p.support().chain(q.support()).collect();
    support.sort_unstable();
    support.dedup();
    let term = |a: f64, m: f64| if a > 0.0 { a * (a / m).log2() } else { 0.0 };
    let sum: f64 = support
        .into_iter()
        .map(|d| {
            let (a, b) = (p.prob(d), q.prob(d));
            let m = 0.5 * (a + b);
            0.5 * term(a, m) + 0.5 * term(b, m)
        })
        .sum();
    sum.clamp(0.0, 1.0)
}

/// Mean over occupied nodes of `inter-degree / (intra-degree + inter-degree)`.
pub fn avg_ratio_degree(net: &MultilayerNetwork) -> Result<f64> {
    if net.layers() < 2 {
        return Err(Error::domain("ratio degree needs at least two layers"));
    }
    let mut intra: BTreeMap<NodeId, usize> = BTreeMap::new();
    for layer in 1..=net.layers() {
        intra.extend(view_degrees(&net.subgraph(SubgraphKind::Intra(layer))?));
    }
    let mut inter: BTreeMap<NodeId, usize> = BTreeMap::new();
    for (a, b) in net.layer_pairs() {
        for (node, d) in view_degrees(&net.subgraph(SubgraphKind::Inter(a, b))?) {
            *inter.entry(node).or_insert(0) += d;
        }
    }
    let mut nodes: Vec<NodeId> = intra.keys().chain(inter.keys()).copied().collect();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = nodes
        .iter()
        .map(|n| {
            let k_inter = inter.get(n).copied().unwrap_or(0) as f64;
            let k_intra = intra.get(n).copied().unwrap_or(0) as f64;
            k_inter / (k_intra + k_inter)
        })
        .sum();
    Ok(sum / nodes.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(l: usize, i: usize) -> NodeId {
        NodeId::new(l, i)
    }

    fn point(d: usize) -> DegreeDistribution {
        DegreeDistribution::new(BTreeMap::from([(d, 1.0)])).unwrap()
    }

    #[test]
    fn qg_degree_counts_each_direction() {
        let mut net = MultilayerNetwork::new(1, 2).unwrap();
        net.add_or_increment_edge(n(1, 1), n(1, 2), 2).unwrap();
        net.add_or_increment_edge(n(1, 2), n(1, 1), 1).unwrap();
        assert_eq!(avg_degree(&net.subgraph(SubgraphKind::Intra(1)).unwrap()).unwrap(), 2.0);
    }

    #[test]
    fn self_loop_counts_once() {
        let mut net = MultilayerNetwork::new(1, 3).unwrap();
        net.add_or_increment_edge(n(1, 2), n(1, 2), 7).unwrap();
        assert_eq!(avg_degree(&net.subgraph(SubgraphKind::Intra(1)).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn complete_bipartite_inter_view() {
        let mut net = MultilayerNetwork::new(2, 2).unwrap();
        for i in 1..=2 {
            for j in 1..=2 {
                net.add_or_increment_edge(n(1, i), n(2, j), 1).unwrap();
            }
        }
        assert_eq!(avg_degree(&net.subgraph(SubgraphKind::Inter(1, 2)).unwrap()).unwrap(), 2.0);
    }

    #[test]
    fn empty_view_is_an_error() {
        let net = MultilayerNetwork::new(2, 2).unwrap();
        assert!(avg_degree(&net.subgraph(SubgraphKind::Intra(1)).unwrap()).is_err());
    }

    #[test]
    fn jsd_extremes() {
        let p = DegreeDistribution::from_degrees([1, 2, 2, 3]).unwrap();
        assert_eq!(jsd(&p, &p), 0.0);
        assert!((jsd(&point(1), &point(2)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalised_distribution_rejected() {
        assert!(DegreeDistribution::new(BTreeMap::from([(1, 0.5), (2, 0.4)])).is_err());
        assert!(DegreeDistribution::from_degrees(std::iter::empty()).is_err());
    }

    #[test]
    fn ratio_degree_examples() {
        // node (1,1): intra-degree 3, inter-degree 1
        let mut net = MultilayerNetwork::new(2, 4).unwrap();
        for j in 2..=4 {
            net.add_or_increment_edge(n(1, 1), n(1, j), 1).unwrap();
        }
        net.add_or_increment_edge(n(1, 1), n(2, 1), 1).unwrap();
        let r = |node: NodeId| -> f64 {
            let intra = view_degrees(&net.subgraph(SubgraphKind::Intra(node.layer)).unwrap());
            let inter = view_degrees(&net.subgraph(SubgraphKind::Inter(1, 2)).unwrap());
            let (a, b) = (intra.get(&node).copied().unwrap_or(0), inter.get(&node).copied().unwrap_or(0));
            b as f64 / (a + b) as f64
        };
        assert_eq!(r(n(1, 1)), 0.25);
        // (1,1)=0.25, (1,2..4)=0, (2,1)=1
        assert!((avg_ratio_degree(&net).unwrap() - 1.25 / 5.0).abs() < 1e-12);

        let mut intra_only = MultilayerNetwork::new(2, 2).unwrap();
        intra_only.add_or_increment_edge(n(1, 1), n(1, 2), 1).unwrap();
        assert_eq!(avg_ratio_degree(&intra_only).unwrap(), 0.0);

        let mut inter_only = MultilayerNetwork::new(2, 2).unwrap();
        inter_only.add_or_increment_edge(n(1, 1), n(2, 2), 1).unwrap();
        inter_only.add_or_increment_edge(n(1, 2), n(2, 2), 3).unwrap();
        assert_eq!(avg_ratio_degree(&inter_only).unwrap(), 1.0);
    }

    fn arb_dist() -> impl Strategy<Value = DegreeDistribution> {
        prop::collection::vec(0usize..12, 1..40).prop_map(|d| DegreeDistribution::from_degrees(d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn jsd_symmetric_and_bounded(p in arb_dist(), q in arb_dist()) {
            let a = jsd(&p, &q);
            prop_assert!((a - jsd(&q, &p)).abs() < 1e-15);
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert_eq!(jsd(&p, &p), 0.0);
        }

        #[test]
        fn degree_sum_identity(
            edges in prop::collection::vec(((1usize..=2, 1usize..=5), (1usize..=2, 1usize..=5), 1u64..4), 1..40)
        ) {
            let mut net = MultilayerNetwork::new(2, 5).unwrap();
            for ((la, i), (lb, j), w) in edges {
                net.add_or_increment_edge(n(la, i), n(lb, j), w).unwrap();
            }
            for kind in [SubgraphKind::Intra(1), SubgraphKind::Intra(2), SubgraphKind::Inter(1, 2), SubgraphKind::All(1, 2)] {
                let view = net.subgraph(kind).unwrap();
                let loops = view.edges().filter(|e| e.from == e.to).count();
                let total: usize = view_degrees(&view).values().sum();
                prop_assert_eq!(total, 2 * (view.edge_count() - loops) + loops);
            }
        }
    }
}
