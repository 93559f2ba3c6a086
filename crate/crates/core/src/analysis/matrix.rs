use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::features::{FeatureSubset, FeatureVector, FEATURE_NAMES};

/// Instances by named features, with the ground-truth label of every row.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    columns: Vec<String>,
    ids: Vec<String>,
    labels: Vec<String>,
    data: DMatrix<f64>,
}

impl FeatureMatrix {
    pub fn new(columns: Vec<String>, ids: Vec<String>, labels: Vec<String>, data: DMatrix<f64>) -> Result<Self> {
        if data.ncols() != columns.len() {
            return Err(Error::Structure(format!(
                "{} column names for {} data columns",
                columns.len(),
                data.ncols()
            )));
        }
        if ids.len() != data.nrows() || labels.len() != data.nrows() {
            return Err(Error::Structure(format!(
                "{} rows but {} ids and {} labels",
                data.nrows(),
                ids.len(),
                labels.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = columns.iter().find(|c| !seen.insert(c.as_str())) {
            return Err(Error::Structure(format!("duplicate feature column {dup:?}")));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            let (r, c) = (i % data.nrows(), i / data.nrows());
            return Err(Error::domain(format!(
                "non-finite value in row {} ({}), column {}",
                r, ids[r], columns[c]
            )));
        }
        Ok(Self { columns, ids, labels, data })
    }

    pub fn from_vectors(ids: Vec<String>, labels: Vec<String>, vectors: &[FeatureVector]) -> Result<Self> {
        let data = DMatrix::from_fn(vectors.len(), FEATURE_NAMES.len(), |r, c| vectors[r].values()[c]);
        Self::new(FEATURE_NAMES.iter().map(|s| s.to_string()).collect(), ids, labels, data)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn nrows(&self) -> usize {
        self.data.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.data.ncols()
    }

    /// Labels as integers `0..`, numbered by first appearance.
    pub fn label_indices(&self) -> Vec<usize> {
        let mut names: Vec<&str> = Vec::new();
        self.labels
            .iter()
            .map(|l| match names.iter().position(|n| n == l) {
                Some(i) => i,
                None => {
                    names.push(l);
                    names.len() - 1
                }
            })
            .collect()
    }

    pub fn select(&self, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                self.columns
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| Error::domain(format!("feature matrix has no column {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            self.ids.clone(),
            self.labels.clone(),
            self.data.select_columns(idx.iter()),
        )
    }

    pub fn subset(&self, subset: FeatureSubset) -> Result<Self> {
        self.select(&subset.columns())
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_to(file).map_err(|e| match e {
            Error::Stream(e) => Error::io(path, e),
            other => other,
        })
    }

    /// Writes `instance_id,model,<feature columns>`.
    pub fn write_to(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let header = ["instance_id", "model"].into_iter().chain(self.columns.iter().map(String::as_str));
        w.write_record(header).map_err(csv_stream)?;
        for r in 0..self.nrows() {
            let mut rec = vec![self.ids[r].clone(), self.labels[r].clone()];
            rec.extend(self.data.row(r).iter().map(|v| v.to_string()));
            w.write_record(&rec).map_err(csv_stream)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(file).map_err(|e| match e {
            Error::Stream(e) => Error::io(path, e),
            other => other,
        })
    }

    pub fn read_from(reader: impl Read) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let header = r.headers().map_err(csv_stream)?.clone();
        if header.len() < 3 || &header[0] != "instance_id" || &header[1] != "model" {
            return Err(Error::Structure(
                "feature matrix header must start with instance_id,model and name at least one feature".into(),
            ));
        }
        let columns: Vec<String> = header.iter().skip(2).map(str::to_string).collect();
        let (mut ids, mut labels, mut values) = (Vec::new(), Vec::new(), Vec::new());
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(csv_stream)?;
            if rec.len() != header.len() {
                return Err(Error::Structure(format!(
                    "row {} has {} fields, expected {}",
                    i + 2,
                    rec.len(),
                    header.len()
                )));
            }
            ids.push(rec[0].to_string());
            labels.push(rec[1].to_string());
            for (c, cell) in rec.iter().enumerate().skip(2) {
                values.push(cell.trim().parse::<f64>().map_err(|e| Error::Parse {
                    row: i + 2,
                    column: c + 1,
                    message: e.to_string(),
                })?);
            }
        }
        let data = DMatrix::from_row_slice(ids.len(), columns.len(), &values);
        Self::new(columns, ids, labels, data)
    }

    pub(crate) fn with_data(&self, data: DMatrix<f64>) -> Self {
        Self { data, ..self.clone() }
    }
}

fn csv_stream(e: csv::Error) -> Error {
    Error::Structure(e.to_string())
}

/// Rescales every column of a matrix onto `[0, 1]`; constant columns become 0.
pub fn minmax_columns(x: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = x.clone();
    for mut col in out.column_iter_mut() {
        let lo = col.min();
        let hi = col.max();
        let span = hi - lo;
        for v in col.iter_mut() {
            *v = if span > 0.0 { (*v - lo) / span } else { 0.0 };
        }
    }
    out
}

pub fn minmax_normalize(x: &FeatureMatrix) -> FeatureMatrix {
    x.with_data(minmax_columns(x.data()))
}
