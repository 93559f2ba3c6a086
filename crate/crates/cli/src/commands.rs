use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use mqg_core::analysis::{
    cluster_features, write_pc_csv, write_report_json, write_summary_csv, ClusterConfig, FeatureMatrix,
};
use mqg_core::dataset::{self, generate_dataset, read_dataset, write_dataset, DatasetConfig, LabeledSeries};
use mqg_core::mappers::MappingConfig;
use mqg_core::mnet::{export, import_edge_list, ExportFormat};
use mqg_core::timing::{time_mapping, totals, write_timing_csv, write_totals_csv};
use mqg_core::{feature_vector, Mapper};
use rayon::prelude::*;

use crate::config::RunConfig;

/// Manifest of mapped networks inside a networks directory.
pub const NETWORKS_MANIFEST: &str = "networks.csv";
const NETWORKS_HEADER: &str = "instance_id,model,layers,eta,file";

fn mapping_config(cfg: &RunConfig) -> MappingConfig {
    MappingConfig {
        eta: cfg.eta,
        lag: cfg.lag,
    }
}

fn load_dataset(cfg: &RunConfig) -> Result<Vec<LabeledSeries>> {
    let dir = cfg.dataset_dir();
    if !dir.join(dataset::MANIFEST).is_file() {
        bail!(
            "expected a dataset manifest at {}; run `mqg generate` with the same --out first",
            dir.join(dataset::MANIFEST).display()
        );
    }
    Ok(read_dataset(&dir)?)
}

pub fn generate(cfg: &RunConfig) -> Result<()> {
    let data = generate_dataset(&DatasetConfig {
        models: cfg.models.clone(),
        n_per_model: cfg.n,
        len: cfg.len,
        base_seed: cfg.seed,
        burn_in: cfg.burn_in,
    })?;
    let dir = cfg.dataset_dir();
    write_dataset(&dir, &data)?;
    cfg.echo_into(&dir)?;
    eprintln!("wrote {} series to {}", data.len(), dir.display());
    Ok(())
}

struct NetworkEntry {
    id: String,
    model: String,
    layers: usize,
    eta: usize,
    file: String,
}

pub fn map(cfg: &RunConfig) -> Result<()> {
    let data = load_dataset(cfg)?;
    let dir = cfg.networks_dir();
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mapping = mapping_config(cfg);
    let entries = data
        .par_iter()
        .map(|inst| -> Result<NetworkEntry> {
            let net = cfg.mapper.map(&inst.series, &mapping)?;
            let file = format!("{}.{}", inst.id, cfg.format.extension());
            export(&net, cfg.format, dir.join(&file))?;
            Ok(NetworkEntry {
                id: inst.id.clone(),
                model: inst.kind.name().to_string(),
                layers: net.layers(),
                eta: net.nodes_per_layer(),
                file,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let manifest = dir.join(NETWORKS_MANIFEST);
    let mut out = File::create(&manifest).with_context(|| format!("writing {}", manifest.display()))?;
    writeln!(out, "{NETWORKS_HEADER}")?;
    for e in &entries {
        writeln!(out, "{},{},{},{},{}", e.id, e.model, e.layers, e.eta, e.file)?;
    }
    cfg.echo_into(&dir)?;
    eprintln!("mapped {} instances with {} into {}", entries.len(), cfg.mapper, dir.display());
    Ok(())
}

fn read_networks_manifest(dir: &Path) -> Result<Vec<NetworkEntry>> {
    let path = dir.join(NETWORKS_MANIFEST);
    let file = File::open(&path)
        .with_context(|| format!("expected a networks manifest at {}; run `mqg map` first", path.display()))?;
    let mut lines = BufReader::new(file).lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == NETWORKS_HEADER => {}
        _ => bail!("{} must start with the header {NETWORKS_HEADER}", path.display()),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let line = line?;
            let f: Vec<&str> = line.trim().split(',').collect();
            let [id, model, layers, eta, file] = f[..] else {
                bail!("{} line {}: expected 5 fields", path.display(), i + 2);
            };
            Ok(NetworkEntry {
                id: id.to_string(),
                model: model.to_string(),
                layers: layers.parse().with_context(|| format!("{} line {}", path.display(), i + 2))?,
                eta: eta.parse().with_context(|| format!("{} line {}", path.display(), i + 2))?,
                file: file.to_string(),
            })
        })
        .collect()
}

pub fn features(cfg: &RunConfig) -> Result<()> {
    let dir = cfg.networks_dir();
    let entries = read_networks_manifest(&dir)?;
    if let Some(e) = entries.iter().find(|e| !e.file.ends_with(ExportFormat::EdgeList.extension())) {
        bail!(
            "{} is not an edge list; re-run `mqg map --format edge-list` before extracting features",
            dir.join(&e.file).display()
        );
    }
    let vectors = entries
        .par_iter()
        .map(|e| {
            let net = import_edge_list(dir.join(&e.file), e.layers, e.eta)?;
            feature_vector(&net).with_context(|| format!("features of {}", e.id))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = FeatureMatrix::from_vectors(
        entries.iter().map(|e| e.id.clone()).collect(),
        entries.iter().map(|e| e.model.clone()).collect(),
        &vectors,
    )?;
    let path = cfg.features_path();
    let parent = path.parent().expect("features path has a parent");
    fs::create_dir_all(parent)?;
    matrix.write_csv(&path)?;
    cfg.echo_into(parent)?;
    eprintln!("wrote {} feature rows to {}", matrix.nrows(), path.display());
    Ok(())
}

pub fn cluster(cfg: &RunConfig) -> Result<()> {
    let path = cfg.features_path();
    if !path.is_file() {
        bail!("expected a feature matrix at {}; run `mqg features` first", path.display());
    }
    let matrix = FeatureMatrix::read_csv(&path)?;
    let dir = cfg.cluster_dir();
    fs::create_dir_all(&dir)?;
    let mut reports = Vec::new();
    for &subset in &cfg.subsets {
        let config = ClusterConfig {
            subset,
            k: cfg.k,
            repetitions: cfg.reps,
            seed: cfg.seed,
            nmi_norm: cfg.nmi_norm,
        };
        let (report, pca) = cluster_features(&matrix, &config)?;
        write_report_json(&report, dir.join(format!("report_{subset}.json")))?;
        write_pc_csv(&matrix, &pca, &report.assignments, dir.join(format!("pcs_{subset}.csv")))?;
        println!(
            "{:<10} ARI {:.3}  NMI {:.3}  AS {:.3}",
            subset.name(),
            report.ari,
            report.nmi,
            report.silhouette
        );
        reports.push(report);
    }
    write_summary_csv(&reports, dir.join("summary.csv"))?;
    cfg.echo_into(&dir)?;
    Ok(())
}

pub fn bench(cfg: &RunConfig) -> Result<()> {
    let data = load_dataset(cfg)?;
    let mapping = mapping_config(cfg);
    let mut records = Vec::new();
    for mapper in [Mapper::Mqg, Mapper::Mhvg] {
        eprintln!("timing {mapper} on {} instances", data.len());
        records.extend(time_mapping(&data, mapper, &mapping)?);
    }
    let dir = cfg.bench_dir();
    fs::create_dir_all(&dir)?;
    write_timing_csv(&records, dir.join("timings.csv"))?;
    write_totals_csv(&records, dir.join("totals.csv"))?;
    cfg.echo_into(&dir)?;

    let t = totals(&records);
    let mut models: Vec<&String> = t.keys().map(|(m, _)| m).collect();
    models.dedup();
    println!("{:<10} {:>12} {:>12} {:>8}", "model", "mqg [s]", "mhvg [s]", "ratio");
    for m in models {
        let q = t[&(m.clone(), Mapper::Mqg)];
        let h = t[&(m.clone(), Mapper::Mhvg)];
        println!("{m:<10} {q:>12.4} {h:>12.4} {:>7.1}x", h / q);
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<PathBuf> {
    generate(cfg)?;
    map(cfg)?;
    features(cfg)?;
    cluster(cfg)?;
    Ok(cfg.cluster_dir().join("summary.csv"))
}
