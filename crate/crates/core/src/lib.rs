//! Multilayer quantile graphs for multivariate time series.
//!
//! The crate maps multivariate series to multilayer networks ([`mappers`]),
//! extracts topological feature vectors from them ([`features`]), and runs the
//! clustering evaluation on labeled synthetic data ([`analysis`],
//! [`generators`]).

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod dataset;
pub mod error;
pub mod features;
pub mod generators;
pub mod mappers;
pub mod mnet;
pub mod quantile;
pub mod series;
pub mod timing;

pub use dataset::LabeledSeries;
pub use error::{Error, Result};
pub use features::{feature_vector, FeatureSubset, FeatureVector};
pub use mappers::{map_mqg, map_qg, Mapper, MappingConfig};
pub use mnet::{MultilayerNetwork, NodeId, SubgraphKind};
pub use series::{load_csv, MultivariateSeries, UnivariateSeries};
