//! Clustering evaluation of feature vectors against ground-truth labels.
//!
//! The pipeline selects a feature subset, min-max normalises each column,
//! projects onto all principal components, and runs k-means several times
//! with derived seeds. Each repetition is scored with ARI, NMI and the mean
//! silhouette in component space; the report carries every repetition and
//! the means.

mod kmeans;
mod matrix;
mod metrics;
mod pca;

use std::fs::File;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::LabeledSeries;
use crate::error::{Error, Result};
use crate::features::{feature_vector, FeatureSubset};
use crate::mappers::{Mapper, MappingConfig};

pub use kmeans::{kmeans, kmeans_repeated, repetition_seed, KMeansRun, MAX_ITERATIONS};
pub use matrix::{minmax_columns, minmax_normalize, FeatureMatrix};
pub use metrics::{ari, nmi, silhouette, NmiNorm, Silhouette};
pub use pca::{pca, Pca};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClusterConfig {
    pub subset: FeatureSubset,
    pub k: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub nmi_norm: NmiNorm,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        Self {
            subset: FeatureSubset::Full,
            k: 6,
            repetitions: 10,
            seed: 2024,
            nmi_norm: NmiNorm::Arithmetic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepetitionScores {
    pub seed: u64,
    pub ari: f64,
    pub nmi: f64,
    pub silhouette: f64,
    pub inertia: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringReport {
    pub config: ClusterConfig,
    pub columns: Vec<String>,
    /// Assignments of the repetition with the lowest inertia.
    pub assignments: Vec<usize>,
    pub ari: f64,
    pub nmi: f64,
    pub silhouette: f64,
    pub silhouette_degenerate: bool,
    pub repetitions: usize,
    pub per_repetition: Vec<RepetitionScores>,
    pub explained_variance_ratio: Vec<f64>,
}

/// Maps every instance and extracts its feature vector, preserving order.
pub fn extract_features(dataset: &[LabeledSeries], mapper: Mapper, mapping: &MappingConfig) -> Result<FeatureMatrix> {
    let vectors = dataset
        .par_iter()
        .map(|inst| {
            let net = mapper.map(&inst.series, mapping)?;
            feature_vector(&net).map_err(|e| Error::domain(format!("{}: {e}", inst.id)))
        })
        .collect::<Result<Vec<_>>>()?;
    FeatureMatrix::from_vectors(
        dataset.iter().map(|i| i.id.clone()).collect(),
        dataset.iter().map(|i| i.kind.name().to_string()).collect(),
        &vectors,
    )
}

pub fn cluster_features(features: &FeatureMatrix, config: &ClusterConfig) -> Result<(ClusteringReport, Pca)> {
    let selected = features.subset(config.subset)?;
    let normalised = minmax_normalize(&selected);
    let pcs = pca(normalised.data())?;
    let truth = normalised.label_indices();
    let runs = kmeans_repeated(&pcs.scores, config.k, config.repetitions, config.seed)?;

    let mut per_repetition = Vec::with_capacity(runs.len());
    let mut degenerate = false;
    for (rep, run) in runs.iter().enumerate() {
        let s = silhouette(&pcs.scores, &run.assignments)?;
        degenerate |= s.degenerate;
        per_repetition.push(RepetitionScores {
            seed: repetition_seed(config.seed, rep),
            ari: ari(&run.assignments, &truth)?,
            nmi: nmi(&run.assignments, &truth, config.nmi_norm)?,
            silhouette: s.value,
            inertia: run.inertia,
            iterations: run.iterations,
        });
    }
    let mean = |f: fn(&RepetitionScores) -> f64| per_repetition.iter().map(f).sum::<f64>() / per_repetition.len() as f64;
    let best = runs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.inertia.total_cmp(&b.1.inertia).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("at least one repetition");

    let report = ClusteringReport {
        config: *config,
        columns: selected.columns().to_vec(),
        assignments: runs[best].assignments.clone(),
        ari: mean(|r| r.ari),
        nmi: mean(|r| r.nmi),
        silhouette: mean(|r| r.silhouette),
        silhouette_degenerate: degenerate,
        repetitions: runs.len(),
        explained_variance_ratio: pcs.explained_ratio.clone(),
        per_repetition,
    };
    Ok((report, pcs))
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub features: FeatureMatrix,
    pub report: ClusteringReport,
    pub pca: Pca,
}

/// Map, extract features, then cluster.
pub fn run_experiment(
    dataset: &[LabeledSeries],
    mapper: Mapper,
    mapping: &MappingConfig,
    config: &ClusterConfig,
) -> Result<Experiment> {
    let features = extract_features(dataset, mapper, mapping)?;
    let (report, pca) = cluster_features(&features, config)?;
    Ok(Experiment { features, report, pca })
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| Error::io(path, e))
}

pub fn write_report_json(report: &ClusteringReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut f = create(path)?;
    serde_json::to_writer_pretty(&mut f, report)?;
    writeln!(f).map_err(|e| Error::io(path, e))
}

/// One row per report: `subset,ARI,NMI,AS`.
pub fn write_summary_csv(reports: &[ClusteringReport], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_writer(create(path)?);
    let rows = std::iter::once(["subset".to_string(), "ARI".into(), "NMI".into(), "AS".into()]).chain(
        reports.iter().map(|r| {
            [
                r.config.subset.to_string(),
                format!("{:.4}", r.ari),
                format!("{:.4}", r.nmi),
                format!("{:.4}", r.silhouette),
            ]
        }),
    );
    for row in rows {
        w.write_record(&row).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Principal-component coordinates: `instance_id,model,cluster,PC1..PCp`.
pub fn write_pc_csv(
    features: &FeatureMatrix,
    pca: &Pca,
    assignments: &[usize],
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::Writer::from_writer(create(path)?);
    let mut header = vec!["instance_id".to_string(), "model".into(), "cluster".into()];
    header.extend((1..=pca.scores.ncols()).map(|i| format!("PC{i}")));
    w.write_record(&header).map_err(|e| Error::csv(path, e))?;
    for r in 0..pca.scores.nrows() {
        let mut rec = vec![
            features.ids()[r].clone(),
            features.labels()[r].clone(),
            assignments.get(r).map_or(String::new(), |a| a.to_string()),
        ];
        rec.extend(pca.scores.row(r).iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
