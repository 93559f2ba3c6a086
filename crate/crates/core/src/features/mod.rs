//! Multilayer topological features.
//!
//! A two-layer network is summarised by 21 named values:
//!
//! * for each of `intra1`, `intra2`, `inter`, `all`: average degree, average
//!   path length, modularity of the Louvain partition, and the number of
//!   Louvain communities (16 values);
//! * relational: average ratio degree, and the Jensen–Shannon divergence
//!   between the degree distributions of `intra1`/`intra2`, `intra1`/`inter`,
//!   `intra2`/`inter`, and the layer-1/layer-2 nodes of the `all` view
//!   (5 values).
//!
//! Degrees are unweighted and path lengths ignore weight and direction;
//! modularity uses the symmetrised weights. Only occupied nodes (degree at
//! least one in the view) take part.

mod community;
mod degree;
mod graph;
mod paths;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mnet::{MultilayerNetwork, SubgraphKind, SubgraphView};

pub use community::{louvain, modularity, Partition};
pub use degree::{avg_degree, avg_ratio_degree, jsd, DegreeDistribution};
pub use graph::{view_degrees, UndirectedGraph};
pub use paths::{avg_path_length, PathLength};

pub const FEATURE_COUNT: usize = 21;

pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "intra1_avg_degree",
    "intra1_avg_path_length",
    "intra1_modularity",
    "intra1_n_communities",
    "intra2_avg_degree",
    "intra2_avg_path_length",
    "intra2_modularity",
    "intra2_n_communities",
    "inter_avg_degree",
    "inter_avg_path_length",
    "inter_modularity",
    "inter_n_communities",
    "all_avg_degree",
    "all_avg_path_length",
    "all_modularity",
    "all_n_communities",
    "avg_ratio_degree",
    "jsd_intra1_intra2",
    "jsd_intra1_inter",
    "jsd_intra2_inter",
    "jsd_all_layer1_layer2",
];

/// The four per-view measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViewMeasures {
    pub avg_degree: f64,
    pub avg_path_length: f64,
    pub modularity: f64,
    pub n_communities: usize,
}

pub fn view_measures(view: &SubgraphView<'_>) -> Result<ViewMeasures> {
    let avg_degree = avg_degree(view)?;
    let (g, _) = UndirectedGraph::from_view(view);
    let part = louvain(&g);
    Ok(ViewMeasures {
        avg_degree,
        avg_path_length: avg_path_length(&g).mean,
        modularity: modularity(&g, &part.labels),
        n_communities: part.count,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: [f64; FEATURE_COUNT],
}

impl FeatureVector {
    pub fn from_values(values: [f64; FEATURE_COUNT]) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64; FEATURE_COUNT] {
        &self.values
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        FEATURE_NAMES.iter().position(|&n| n == name).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        FEATURE_NAMES.iter().copied().zip(self.values.iter().copied())
    }
}

/// Feature vector of a two-layer network.
pub fn feature_vector(net: &MultilayerNetwork) -> Result<FeatureVector> {
    if net.layers() != 2 {
        return Err(Error::domain(format!(
            "feature extraction expects a two-layer network, got {} layers",
            net.layers()
        )));
    }
    let intra1 = net.subgraph(SubgraphKind::Intra(1))?;
    let intra2 = net.subgraph(SubgraphKind::Intra(2))?;
    let inter = net.subgraph(SubgraphKind::Inter(1, 2))?;
    let all = net.subgraph(SubgraphKind::All(1, 2))?;

    let mut values = [0.0; FEATURE_COUNT];
    for (slot, view) in [&intra1, &intra2, &inter, &all].into_iter().enumerate() {
        let m = view_measures(view)?;
        values[4 * slot..4 * slot + 4].copy_from_slice(&[
            m.avg_degree,
            m.avg_path_length,
            m.modularity,
            m.n_communities as f64,
        ]);
    }

    let dist = |view: &SubgraphView<'_>| DegreeDistribution::from_degrees(view_degrees(view).into_values());
    let (d1, d2, di) = (dist(&intra1)?, dist(&intra2)?, dist(&inter)?);
    let all_deg = view_degrees(&all);
    let layer_dist = |layer: usize| {
        DegreeDistribution::from_degrees(all_deg.iter().filter(|(n, _)| n.layer == layer).map(|(_, &d)| d))
    };

    values[16] = avg_ratio_degree(net)?;
    values[17] = jsd(&d1, &d2);
    values[18] = jsd(&d1, &di);
    values[19] = jsd(&d2, &di);
    values[20] = jsd(&layer_dist(1)?, &layer_dist(2)?);
    Ok(FeatureVector { values })
}

/// Named groups of feature columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSubset {
    Intra,
    Inter,
    All,
    Relational,
    Full,
}

impl FeatureSubset {
    pub const EVERY: [FeatureSubset; 5] = [
        FeatureSubset::Intra,
        FeatureSubset::Inter,
        FeatureSubset::All,
        FeatureSubset::Relational,
        FeatureSubset::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureSubset::Intra => "intra",
            FeatureSubset::Inter => "inter",
            FeatureSubset::All => "all",
            FeatureSubset::Relational => "relational",
            FeatureSubset::Full => "full",
        }
    }

    pub fn columns(self) -> Vec<&'static str> {
        let keep = |name: &str| match self {
            FeatureSubset::Intra => name.starts_with("intra"),
            FeatureSubset::Inter => name.starts_with("inter"),
            FeatureSubset::All => name.starts_with("all"),
            FeatureSubset::Relational => name.starts_with("jsd") || name == "avg_ratio_degree",
            FeatureSubset::Full => true,
        };
        FEATURE_NAMES.iter().copied().filter(|n| keep(n)).collect()
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeatureSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureSubset::EVERY
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown feature subset {s:?}; expected intra, inter, all, relational or full"
                ))
            })
    }
}
