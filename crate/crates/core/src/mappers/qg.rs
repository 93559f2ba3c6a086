use super::{MappingConfig, QuantileSequence};
use crate::error::{Error, Result};
use crate::mnet::{MultilayerNetwork, NodeId};
use crate::quantile::{compute_quantiles, quantile_sequence};
use crate::series::{MultivariateSeries, UnivariateSeries};

/// Maps `ts` onto `layer` of `net` and returns the bin of every observation.
///
/// Transitions are counted in a dense `η × η` table first and then written to
/// the network, one increment per distinct transition.
pub fn build_qg_layer(net: &mut MultilayerNetwork, layer: usize, ts: &UnivariateSeries) -> Result<QuantileSequence> {
    if ts.len() < 2 {
        return Err(Error::TooShort { len: ts.len(), min: 2 });
    }
    let eta = net.nodes_per_layer();
    let binning = compute_quantiles(ts, eta)?;
    let seq = quantile_sequence(ts, &binning)?;

    let mut counts = vec![0u64; eta * eta];
    for w in seq.windows(2) {
        counts[(w[0] - 1) * eta + (w[1] - 1)] += 1;
    }
    for (cell, &c) in counts.iter().enumerate() {
        if c > 0 {
            net.add_or_increment_edge(
                NodeId::new(layer, cell / eta + 1),
                NodeId::new(layer, cell % eta + 1),
                c,
            )?;
        }
    }
    Ok(QuantileSequence(seq))
}

/// Quantile graph of a single series as a one-layer network.
pub fn map_qg(ts: &UnivariateSeries, eta: usize) -> Result<(MultilayerNetwork, QuantileSequence)> {
    if eta == 0 {
        return Err(Error::domain("number of quantiles must be at least 1"));
    }
    let mut net = MultilayerNetwork::new(1, eta)?;
    let seq = build_qg_layer(&mut net, 1, ts)?;
    Ok((net, seq))
}

/// Links `layer_a` and `layer_b` by counting, for every `t`, the bin pair
/// `(seq_a[t], seq_b[t + lag])`.
pub fn map_lagged(
    net: &mut MultilayerNetwork,
    layer_a: usize,
    layer_b: usize,
    seq_a: &QuantileSequence,
    seq_b: &QuantileSequence,
    lag: usize,
) -> Result<()> {
    if seq_a.len() != seq_b.len() {
        return Err(Error::domain(format!(
            "quantile sequences differ in length ({} vs {})",
            seq_a.len(),
            seq_b.len()
        )));
    }
    if layer_a == layer_b {
        return Err(Error::domain("inter-layer links need two distinct layers"));
    }
    if lag >= seq_a.len() {
        return Err(Error::domain(format!("lag {lag} leaves no overlapping timestamps")));
    }
    let eta = net.nodes_per_layer();
    let mut counts = vec![0u64; eta * eta];
    for (&i, &j) in seq_a.as_slice().iter().zip(&seq_b.as_slice()[lag..]) {
        if i == 0 || i > eta || j == 0 || j > eta {
            return Err(Error::domain(format!("quantile index outside 1..={eta}")));
        }
        counts[(i - 1) * eta + (j - 1)] += 1;
    }
    for (cell, &c) in counts.iter().enumerate() {
        if c > 0 {
            net.add_or_increment_edge(
                NodeId::new(layer_a, cell / eta + 1),
                NodeId::new(layer_b, cell % eta + 1),
                c,
            )?;
        }
    }
    Ok(())
}

/// Contemporaneous quantile graph between two layers.
pub fn map_contemporaneous(
    net: &mut MultilayerNetwork,
    layer_a: usize,
    layer_b: usize,
    seq_a: &QuantileSequence,
    seq_b: &QuantileSequence,
) -> Result<()> {
    map_lagged(net, layer_a, layer_b, seq_a, seq_b, 0)
}

/// Multilayer quantile graph: one quantile graph per component, every pair of
/// layers linked by co-occurring bins. A single component yields a plain
/// quantile graph.
pub fn map_mqg(mts: &MultivariateSeries, config: &MappingConfig) -> Result<MultilayerNetwork> {
    let eta = config.eta.resolve(mts.len());
    if eta == 0 {
        return Err(Error::domain("number of quantiles must be at least 1"));
    }
    let mut net = MultilayerNetwork::new(mts.dim(), eta)?;
    let seqs = mts
        .components()
        .iter()
        .enumerate()
        .map(|(a, ts)| build_qg_layer(&mut net, a + 1, ts))
        .collect::<Result<Vec<_>>>()?;
    for (a, b) in net.layer_pairs().collect::<Vec<_>>() {
        map_lagged(&mut net, a, b, &seqs[a - 1], &seqs[b - 1], config.lag)?;
    }
    Ok(net)
}
