use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mqg_core::analysis::NmiNorm;
use mqg_core::generators::MdgpKind;
use mqg_core::mappers::EtaRule;
use mqg_core::mnet::ExportFormat;
use mqg_core::{FeatureSubset, Mapper};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Every parameter a run can take. Commands read the fields they need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub models: Vec<MdgpKind>,
    pub n: usize,
    #[serde(rename = "T")]
    pub len: usize,
    pub seed: u64,
    pub burn_in: Option<usize>,
    pub eta: EtaRule,
    pub lag: usize,
    pub mapper: Mapper,
    pub format: ExportFormat,
    pub subsets: Vec<FeatureSubset>,
    pub k: usize,
    pub reps: usize,
    pub nmi_norm: NmiNorm,
    pub jobs: Option<usize>,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            models: MdgpKind::ALL.to_vec(),
            n: 100,
            len: 10_000,
            seed: 2024,
            burn_in: None,
            eta: EtaRule::default(),
            lag: 0,
            mapper: Mapper::Mqg,
            format: ExportFormat::EdgeList,
            subsets: vec![FeatureSubset::Full],
            k: 6,
            reps: 10,
            nmi_norm: NmiNorm::Arithmetic,
            jobs: None,
            out: PathBuf::from("mqg-out"),
        }
    }
}

/// Lays the keys of a JSON config file over `base`.
pub fn overlay_file(base: RunConfig, path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config file {}", path.display()))?;
    let file: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    overlay(base, file).with_context(|| format!("applying {}", path.display()))
}

pub fn overlay(base: RunConfig, file: Value) -> Result<RunConfig> {
    let Value::Object(over) = file else {
        bail!("config must be a JSON object");
    };
    let Value::Object(mut merged) = serde_json::to_value(&base)? else {
        unreachable!("RunConfig serialises to an object");
    };
    merged.extend(over);
    Ok(serde_json::from_value(Value::Object(merged))?)
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            bail!("no models selected");
        }
        if self.n == 0 {
            bail!("n must be at least 1");
        }
        if self.len < 2 {
            bail!("T must be at least 2");
        }
        if self.subsets.is_empty() {
            bail!("no feature subsets selected");
        }
        if self.k == 0 || self.reps == 0 {
            bail!("k and reps must be at least 1");
        }
        if self.jobs == Some(0) {
            bail!("jobs must be at least 1");
        }
        Ok(())
    }

    pub fn dataset_dir(&self) -> PathBuf {
        self.out.join("dataset")
    }

    pub fn networks_dir(&self) -> PathBuf {
        self.out.join("networks").join(self.mapper.name())
    }

    pub fn features_path(&self) -> PathBuf {
        self.out.join("features").join(format!("{}.csv", self.mapper.name()))
    }

    pub fn cluster_dir(&self) -> PathBuf {
        self.out.join("cluster").join(self.mapper.name())
    }

    pub fn bench_dir(&self) -> PathBuf {
        self.out.join("bench")
    }

    /// Writes the effective configuration as `config.json` inside `dir`.
    pub fn echo_into(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join("config.json");
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }
}
