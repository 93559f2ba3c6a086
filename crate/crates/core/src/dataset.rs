//! Labeled collections of generated series and their on-disk layout.
//!
//! A dataset directory holds `manifest.csv` (`instance_id,model,seed,T`) and
//! one wide CSV per instance under `series/<instance_id>.csv`.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{derive_seed, generate, MdgpKind, MdgpSpec};
use crate::series::{load_csv, MultivariateSeries};

pub const MANIFEST: &str = "manifest.csv";
pub const SERIES_DIR: &str = "series";

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSeries {
    pub id: String,
    pub kind: MdgpKind,
    pub seed: u64,
    pub series: MultivariateSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DatasetConfig {
    pub models: Vec<MdgpKind>,
    pub n_per_model: usize,
    pub len: usize,
    pub base_seed: u64,
    pub burn_in: Option<usize>,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        Self {
            models: MdgpKind::ALL.to_vec(),
            n_per_model: 100,
            len: 10_000,
            base_seed: 2024,
            burn_in: None,
        }
    }
}

pub fn instance_id(kind: MdgpKind, instance: usize) -> String {
    format!("{}_{instance:03}", kind.name())
}

/// Generates `n_per_model` instances of each requested model.
///
/// Instance seeds depend only on `(base_seed, model, instance)`, so any subset
/// of models reproduces the same series as the full dataset.
pub fn generate_dataset(config: &DatasetConfig) -> Result<Vec<LabeledSeries>> {
    if config.n_per_model == 0 {
        return Err(Error::domain("n_per_model must be at least 1"));
    }
    let jobs: Vec<(MdgpKind, usize)> = config
        .models
        .iter()
        .flat_map(|&k| (0..config.n_per_model).map(move |i| (k, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(kind, instance)| {
            let seed = derive_seed(config.base_seed, kind.index(), instance);
            let spec = MdgpSpec {
                kind,
                len: config.len,
                seed,
                burn_in: config.burn_in,
                params: None,
            };
            Ok(LabeledSeries {
                id: instance_id(kind, instance),
                kind,
                seed,
                series: generate(&spec)?,
            })
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestRow {
    instance_id: String,
    model: MdgpKind,
    seed: u64,
    #[serde(rename = "T")]
    len: usize,
}

pub fn write_dataset(dir: impl AsRef<Path>, dataset: &[LabeledSeries]) -> Result<()> {
    let dir = dir.as_ref();
    let series_dir = dir.join(SERIES_DIR);
    fs::create_dir_all(&series_dir).map_err(|e| Error::io(&series_dir, e))?;
    dataset
        .par_iter()
        .try_for_each(|item| item.series.write_csv(series_dir.join(format!("{}.csv", item.id))))?;

    let path = dir.join(MANIFEST);
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::csv(&path, e))?;
    for item in dataset {
        w.serialize(ManifestRow {
            instance_id: item.id.clone(),
            model: item.kind,
            seed: item.seed,
            len: item.series.len(),
        })
        .map_err(|e| Error::csv(&path, e))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))
}

pub fn read_dataset(dir: impl AsRef<Path>) -> Result<Vec<LabeledSeries>> {
    let dir = dir.as_ref();
    let path = dir.join(MANIFEST);
    if !path.exists() {
        return Err(Error::Structure(format!(
            "dataset manifest not found: expected {}",
            path.display()
        )));
    }
    let mut rdr = csv::Reader::from_path(&path).map_err(|e| Error::csv(&path, e))?;
    let rows: Vec<ManifestRow> = rdr
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::csv(&path, e))?;
    rows.into_par_iter()
        .map(|row| {
            let series = load_csv(dir.join(SERIES_DIR).join(format!("{}.csv", row.instance_id)))?;
            if series.len() != row.len {
                return Err(Error::Structure(format!(
                    "{}: manifest says T={}, file has {} rows",
                    row.instance_id,
                    row.len,
                    series.len()
                )));
            }
            Ok(LabeledSeries {
                id: row.instance_id,
                kind: row.model,
                seed: row.seed,
                series,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize, len: usize) -> DatasetConfig {
        DatasetConfig {
            n_per_model: n,
            len,
            ..DatasetConfig::default()
        }
    }

    #[test]
    fn six_labeled_series() {
        let ds = generate_dataset(&small(1, 100)).unwrap();
        assert_eq!(ds.len(), 6);
        let kinds: Vec<_> = ds.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, MdgpKind::ALL.to_vec());
        assert!(ds.iter().all(|s| s.series.len() == 100 && s.series.dim() == 2));
    }

    #[test]
    fn deterministic_for_equal_seed() {
        assert_eq!(
            generate_dataset(&small(2, 64)).unwrap(),
            generate_dataset(&small(2, 64)).unwrap()
        );
    }

    #[test]
    fn model_subset_matches_full_dataset() {
        let full = generate_dataset(&small(2, 50)).unwrap();
        let sub = generate_dataset(&DatasetConfig {
            models: vec![MdgpKind::SVar],
            ..small(2, 50)
        })
        .unwrap();
        let from_full: Vec<_> = full.into_iter().filter(|s| s.kind == MdgpKind::SVar).collect();
        assert_eq!(sub, from_full);
    }

    #[test]
    fn zero_instances_rejected() {
        assert!(generate_dataset(&small(0, 50)).is_err());
    }

    #[test]
    fn disk_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let ds = generate_dataset(&small(1, 30)).unwrap();
        write_dataset(dir.path(), &ds).unwrap();
        assert_eq!(read_dataset(dir.path()).unwrap(), ds);
    }

    #[test]
    fn missing_manifest_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let err = read_dataset(dir.path()).unwrap_err().to_string();
        assert!(err.contains("manifest.csv"), "{err}");
    }
}
