//! Wall-clock timing of the mapping step alone.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dataset::LabeledSeries;
use crate::error::{Error, Result};
use crate::mappers::{Mapper, MappingConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    pub instance_id: String,
    pub model: String,
    pub algorithm: Mapper,
    pub seconds: f64,
}

/// Times `mapper` on every instance, one after another. Series are already in
/// memory, so parsing never enters the measurement.
pub fn time_mapping(dataset: &[LabeledSeries], mapper: Mapper, mapping: &MappingConfig) -> Result<Vec<TimingRecord>> {
    dataset
        .iter()
        .map(|inst| {
            let start = Instant::now();
            let net = mapper.map(&inst.series, mapping)?;
            let seconds = start.elapsed().as_secs_f64();
            drop(net);
            Ok(TimingRecord {
                instance_id: inst.id.clone(),
                model: inst.kind.name().to_string(),
                algorithm: mapper,
                seconds,
            })
        })
        .collect()
}

/// Total seconds per `(model, algorithm)`.
pub fn totals(records: &[TimingRecord]) -> BTreeMap<(String, Mapper), f64> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry((r.model.clone(), r.algorithm)).or_insert(0.0) += r.seconds;
    }
    out
}

pub fn write_timing_csv(records: &[TimingRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    for r in records {
        w.serialize(r).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Per-model totals: `model,algorithm,instances,total_seconds`.
pub fn write_totals_csv(records: &[TimingRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["model", "algorithm", "instances", "total_seconds"])
        .map_err(|e| Error::csv(path, e))?;
    for ((model, alg), secs) in totals(records) {
        let n = records.iter().filter(|r| r.model == model && r.algorithm == alg).count();
        w.write_record([model, alg.to_string(), n.to_string(), format!("{secs:.6}")])
            .map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
