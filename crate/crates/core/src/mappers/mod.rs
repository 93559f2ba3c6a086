//! Time series to network mappings.
//!
//! [`map_qg`] bins a series into `η` sample quantiles and counts transitions
//! between the bins of consecutive observations. [`map_mqg`] builds one such
//! layer per component and links every pair of layers by counting, at each
//! timestamp, which bins the two components occupy together.
//! [`map_mhvg_baseline`] is a horizontal-visibility comparison mapping with one
//! node per timestamp.

mod hvg;
mod qg;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mnet::MultilayerNetwork;
use crate::series::MultivariateSeries;

pub use hvg::{cross_visibility_edges, horizontal_visibility_edges, map_mhvg_baseline};
pub use qg::{build_qg_layer, map_contemporaneous, map_lagged, map_mqg, map_qg};

/// The 1-based quantile bin of every observation of a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantileSequence(pub Vec<usize>);

impl QuantileSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Serialised as a bare integer or the string `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EtaRepr", into = "EtaRepr")]
pub enum EtaRule {
    Fixed(usize),
    /// `η = round(2·T^{1/3})`.
    Auto,
}

impl EtaRule {
    pub fn resolve(self, len: usize) -> usize {
        match self {
            EtaRule::Fixed(eta) => eta,
            EtaRule::Auto => ((2.0 * (len as f64).cbrt()).round() as usize).max(1),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EtaRepr {
    Fixed(usize),
    Named(String),
}

impl From<EtaRule> for EtaRepr {
    fn from(rule: EtaRule) -> Self {
        match rule {
            EtaRule::Fixed(eta) => EtaRepr::Fixed(eta),
            EtaRule::Auto => EtaRepr::Named("auto".into()),
        }
    }
}

impl TryFrom<EtaRepr> for EtaRule {
    type Error = Error;

    fn try_from(repr: EtaRepr) -> Result<Self> {
        match repr {
            EtaRepr::Fixed(eta) => eta.to_string().parse(),
            EtaRepr::Named(s) => s.parse(),
        }
    }
}

impl Default for EtaRule {
    fn default() -> Self {
        EtaRule::Fixed(DEFAULT_ETA)
    }
}

impl FromStr for EtaRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(EtaRule::Auto);
        }
        match s.parse::<usize>() {
            Ok(eta) if eta >= 1 => Ok(EtaRule::Fixed(eta)),
            _ => Err(Error::domain(format!("eta must be a positive integer or \"auto\", got {s:?}"))),
        }
    }
}

impl fmt::Display for EtaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaRule::Fixed(eta) => write!(f, "{eta}"),
            EtaRule::Auto => f.write_str("auto"),
        }
    }
}

pub const DEFAULT_ETA: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct MappingConfig {
    pub eta: EtaRule,
    /// Offset between linked timestamps of the two layers; 0 links
    /// contemporaneous observations.
    pub lag: usize,
}

impl MappingConfig {
    pub fn with_eta(eta: usize) -> Self {
        Self {
            eta: EtaRule::Fixed(eta),
            lag: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mapper {
    Mqg,
    Mhvg,
}

impl Mapper {
    pub fn name(self) -> &'static str {
        match self {
            Mapper::Mqg => "mqg",
            Mapper::Mhvg => "mhvg",
        }
    }

    pub fn map(self, mts: &MultivariateSeries, config: &MappingConfig) -> Result<MultilayerNetwork> {
        match self {
            Mapper::Mqg => map_mqg(mts, config),
            Mapper::Mhvg => map_mhvg_baseline(mts),
        }
    }
}

impl fmt::Display for Mapper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mapper {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mqg" => Ok(Mapper::Mqg),
            "mhvg" => Ok(Mapper::Mhvg),
            _ => Err(Error::domain(format!("unknown mapper {s:?}; expected mqg or mhvg"))),
        }
    }
}
