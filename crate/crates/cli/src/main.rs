//! `mqg`: generate labeled series, map them to multilayer networks, extract
//! features, cluster, and time the mappers.
//!
//! Every stage reads and writes under one output root:
//!
//! ```text
//! <out>/dataset/            manifest.csv, series/<id>.csv
//! <out>/networks/<mapper>/  networks.csv, <id>.tsv
//! <out>/features/<mapper>.csv
//! <out>/cluster/<mapper>/   summary.csv, report_<subset>.json, pcs_<subset>.csv
//! <out>/bench/              timings.csv, totals.csv
//! ```
//!
//! Each stage directory also receives the effective `config.json`.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mqg_core::analysis::NmiNorm;
use mqg_core::generators::MdgpKind;
use mqg_core::mappers::EtaRule;
use mqg_core::mnet::ExportFormat;
use mqg_core::{FeatureSubset, Mapper};

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "mqg", version, about = "Multilayer quantile graph experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output root shared by all stages.
    #[arg(long, global = true, env = "MQG_OUT")]
    out: Option<PathBuf>,

    /// JSON file whose keys override command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Base seed of the dataset and of the k-means repetitions.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate the labeled dataset.
    Generate(#[command(flatten)] DataArgs),
    /// Map every series of the dataset to a network.
    Map(#[command(flatten)] MapArgs),
    /// Extract the feature matrix from mapped networks.
    Features(#[command(flatten)] MapArgs),
    /// Cluster the feature matrix and score it against the labels.
    Cluster(#[command(flatten)] ClusterArgs),
    /// Time both mappers on the dataset.
    Bench(#[command(flatten)] MapArgs),
    /// generate, map, features and cluster in one go.
    Run {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        cluster: ClusterArgs,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Comma-separated model names.
    #[arg(long, value_delimiter = ',')]
    models: Option<Vec<MdgpKind>>,
    /// Instances per model.
    #[arg(long)]
    n: Option<usize>,
    /// Series length.
    #[arg(long = "T")]
    len: Option<usize>,
    /// Discarded warm-up steps (model default when omitted).
    #[arg(long)]
    burn_in: Option<usize>,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Quantiles per layer, or "auto".
    #[arg(long)]
    eta: Option<EtaRule>,
    /// Timestamp offset between linked layers.
    #[arg(long)]
    lag: Option<usize>,
    /// mqg or mhvg.
    #[arg(long)]
    mapper: Option<Mapper>,
    /// edge-list, supra-csv or graphml.
    #[arg(long)]
    format: Option<ExportFormat>,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Comma-separated subsets: intra, inter, all, relational, full.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<FeatureSubset>>,
    /// Number of clusters.
    #[arg(long)]
    k: Option<usize>,
    /// k-means repetitions with derived seeds.
    #[arg(long)]
    reps: Option<usize>,
    /// arithmetic, geometric, min or max.
    #[arg(long)]
    nmi_norm: Option<NmiNorm>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl DataArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.models, self.models);
        set(&mut cfg.n, self.n);
        set(&mut cfg.len, self.len);
        if self.burn_in.is_some() {
            cfg.burn_in = self.burn_in;
        }
    }
}

impl MapArgs {
    fn apply(self, cfg: &mut RunConfig) {
        set(&mut cfg.eta, self.eta);
        set(&mut cfg.lag, self.lag);
        set(&mut cfg.mapper, self.mapper);
        set(&mut cfg.format, self.format);
    }
}

impl ClusterArgs {
    fn apply(self, cfg: &mut RunConfig) {
        self.map.apply(cfg);
        set(&mut cfg.subsets, self.subset);
        set(&mut cfg.k, self.k);
        set(&mut cfg.reps, self.reps);
        set(&mut cfg.nmi_norm, self.nmi_norm);
    }
}

fn execute(cli: Cli) -> Result<()> {
    let mut cfg = RunConfig::default();
    set(&mut cfg.out, cli.out);
    set(&mut cfg.seed, cli.seed);
    if cli.jobs.is_some() {
        cfg.jobs = cli.jobs;
    }
    let command = match cli.command {
        Command::Generate(a) => {
            a.apply(&mut cfg);
            commands::generate
        }
        Command::Map(a) => {
            a.apply(&mut cfg);
            commands::map
        }
        Command::Features(a) => {
            a.apply(&mut cfg);
            commands::features
        }
        Command::Cluster(a) => {
            a.apply(&mut cfg);
            commands::cluster
        }
        Command::Bench(a) => {
            a.apply(&mut cfg);
            commands::bench
        }
        Command::Run { data, cluster } => {
            data.apply(&mut cfg);
            cluster.apply(&mut cfg);
            |c: &RunConfig| commands::run(c).map(|summary| eprintln!("summary in {}", summary.display()))
        }
    };
    if let Some(path) = &cli.config {
        cfg = config::overlay_file(cfg, path)?;
    }
    cfg.validate()?;
    if let Some(jobs) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    command(&cfg)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
