//! Multilayer horizontal visibility baseline.
//!
//! Every timestamp of every component is a node. Within a layer, `t_a < t_b`
//! are linked when every value strictly between them lies below
//! `min(y_{t_a}, y_{t_b})`. Between layers α and β, node `t_a` of α and node
//! `t_b > t_a` of β are linked when the β values strictly between them lie
//! below `min(y_{α,t_a}, y_{β,t_b})`; the same sweep runs with the roles of α
//! and β exchanged, and same-time pairs are always linked. Edges carry
//! weight 1.

use crate::error::{Error, Result};
use crate::mnet::{MultilayerNetwork, NodeId};
use crate::series::MultivariateSeries;

/// Horizontal visibility edges `(a, b)`, `a < b`, 0-based.
///
/// Each scan from `a` stops at the first value that reaches `y[a]`, since
/// nothing past it can see `a`.
pub fn horizontal_visibility_edges(y: &[f64]) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(2 * y.len());
    for a in 0..y.len() {
        let mut block = f64::NEG_INFINITY;
        for b in a + 1..y.len() {
            if block < y[a].min(y[b]) {
                edges.push((a, b));
            }
            block = block.max(y[b]);
            if block >= y[a] {
                break;
            }
        }
    }
    edges
}

/// Cross-visibility edges `(a, b)`, `a <= b`, 0-based, from node `a` of the
/// `source` series to node `b` of the `target` series, with `target` values
/// as obstacles.
pub fn cross_visibility_edges(source: &[f64], target: &[f64]) -> Vec<(usize, usize)> {
    let n = source.len().min(target.len());
    let mut edges = Vec::with_capacity(3 * n);
    for a in 0..n {
        edges.push((a, a));
        let mut block = f64::NEG_INFINITY;
        for b in a + 1..n {
            if block < source[a].min(target[b]) {
                edges.push((a, b));
            }
            block = block.max(target[b]);
            if block >= source[a] {
                break;
            }
        }
    }
    edges
}

pub fn map_mhvg_baseline(mts: &MultivariateSeries) -> Result<MultilayerNetwork> {
    if mts.dim() < 2 {
        return Err(Error::domain("the multilayer visibility baseline needs at least two components"));
    }
    let len = mts.len();
    if len < 2 {
        return Err(Error::TooShort { len, min: 2 });
    }
    let mut net = MultilayerNetwork::new(mts.dim(), len)?;
    for (idx, c) in mts.components().iter().enumerate() {
        let layer = idx + 1;
        for (a, b) in horizontal_visibility_edges(c.values()) {
            net.add_or_increment_edge(NodeId::new(layer, a + 1), NodeId::new(layer, b + 1), 1)?;
        }
    }
    for (la, lb) in net.layer_pairs().collect::<Vec<_>>() {
        let ya = mts.component(la - 1).values();
        let yb = mts.component(lb - 1).values();
        for (a, b) in cross_visibility_edges(ya, yb) {
            net.add_or_increment_edge(NodeId::new(la, a + 1), NodeId::new(lb, b + 1), 1)?;
        }
        for (a, b) in cross_visibility_edges(yb, ya) {
            if a != b {
                net.add_or_increment_edge(NodeId::new(lb, a + 1), NodeId::new(la, b + 1), 1)?;
            }
        }
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_hvg(y: &[f64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..y.len() {
            for b in a + 1..y.len() {
                let lim = y[a].min(y[b]);
                if (a + 1..b).all(|k| y[k] < lim) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn brute_cross(src: &[f64], dst: &[f64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..src.len() {
            for b in a..dst.len() {
                let lim = src[a].min(dst[b]);
                if b == a || (a + 1..b).all(|k| dst[k] < lim) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        v.sort_unstable();
        v
    }

    #[test]
    fn monotone_series_links_neighbours() {
        assert_eq!(horizontal_visibility_edges(&[1.0, 2.0, 3.0]), vec![(0, 1), (1, 2)]);
        let y: Vec<f64> = (0..50).map(f64::from).collect();
        assert_eq!(horizontal_visibility_edges(&y).len(), 49);
    }

    #[test]
    fn valley_is_seen_over() {
        assert_eq!(sorted(horizontal_visibility_edges(&[3.0, 1.0, 2.0])), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn same_time_pairs_always_link() {
        let mts = MultivariateSeries::from_columns(vec![vec![5.0, -1.0, 2.0, 0.0], vec![-3.0, 9.0, 1.0, 4.0]]).unwrap();
        let net = map_mhvg_baseline(&mts).unwrap();
        for t in 1..=4 {
            assert_eq!(net.weight(NodeId::new(1, t), NodeId::new(2, t)), 1);
        }
        assert_eq!(net.nodes_per_layer(), 4);
    }

    #[test]
    fn needs_two_components() {
        let mts = MultivariateSeries::from_columns(vec![vec![1.0, 2.0]]).unwrap();
        assert!(map_mhvg_baseline(&mts).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn scans_match_brute_force(
            y in prop::collection::vec(-5i32..5, 2..40),
            z in prop::collection::vec(-5i32..5, 2..40),
        ) {
            let y: Vec<f64> = y.into_iter().map(f64::from).collect();
            let n = y.len().min(z.len());
            let z: Vec<f64> = z.into_iter().take(n).map(f64::from).collect();
            let y = &y[..n];
            prop_assert_eq!(sorted(horizontal_visibility_edges(y)), brute_hvg(y));
            prop_assert_eq!(sorted(cross_visibility_edges(y, &z)), brute_cross(y, &z));
        }

        #[test]
        fn multilayer_edges_match_brute_force(
            y in prop::collection::vec(-10.0f64..10.0, 2..30),
            seed in any::<u64>(),
        ) {
            let z: Vec<f64> = y.iter().enumerate().map(|(i, v)| (v * 1.7 + (seed % 13) as f64 - i as f64 * 0.3).sin()).collect();
            let mts = MultivariateSeries::from_columns(vec![y.clone(), z.clone()]).unwrap();
            let net = map_mhvg_baseline(&mts).unwrap();
            let mut expected_inter: Vec<(usize, usize)> = brute_cross(&y, &z);
            expected_inter.extend(brute_cross(&z, &y).into_iter().filter(|(a, b)| a != b).map(|(a, b)| (b, a)));
            let got: Vec<(usize, usize)> = net.inter_edges(1, 2).map(|(i, j, _)| (i - 1, j - 1)).collect();
            prop_assert_eq!(got, sorted(expected_inter));
            prop_assert!(net.inter_edges(1, 2).all(|(_, _, w)| w == 1));
            let intra: Vec<(usize, usize)> = net.intra_edges(1).map(|(i, j, _)| (i - 1, j - 1)).collect();
            prop_assert_eq!(intra, brute_hvg(&y));
        }
    }
}
