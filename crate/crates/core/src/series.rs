//! Time-series containers and CSV ingestion.
//!
//! Series are indexed by integer position only. A multivariate series is a set
//! of aligned univariate components sharing one length.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::Index;
use std::path::Path;

use crate::error::{Error, Result};

/// A finite, non-empty sequence of observations.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateSeries {
    values: Vec<f64>,
}

impl UnivariateSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { len: 0, min: 1 });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite observation {} at position {}",
                values[pos],
                pos + 1
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl Index<usize> for UnivariateSeries {
    type Output = f64;

    fn index(&self, idx: usize) -> &f64 {
        &self.values[idx]
    }
}

/// `m` aligned components of common length `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateSeries {
    components: Vec<UnivariateSeries>,
}

impl MultivariateSeries {
    pub fn new(components: Vec<UnivariateSeries>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::domain("a multivariate series needs at least one component"));
        };
        let len = first.len();
        if let Some(bad) = components.iter().position(|c| c.len() != len) {
            return Err(Error::Structure(format!(
                "component {} has length {}, expected {}",
                bad + 1,
                components[bad].len(),
                len
            )));
        }
        Ok(Self { components })
    }

    /// Builds a series from raw column vectors.
    pub fn from_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        let components = columns
            .into_iter()
            .map(UnivariateSeries::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    /// Number of components, `m`.
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Common length, `T`.
    pub fn len(&self) -> usize {
        self.components[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[UnivariateSeries] {
        &self.components
    }

    pub fn component(&self, idx: usize) -> &UnivariateSeries {
        &self.components[idx]
    }

    /// Same data with the component order reversed.
    pub fn reversed(&self) -> Self {
        let mut components = self.components.clone();
        components.reverse();
        Self { components }
    }

    /// Writes the series as wide CSV with a `y1,...,ym` header.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let header: Vec<String> = (1..=self.dim()).map(|i| format!("y{i}")).collect();
        let mut write = || -> std::io::Result<()> {
            writeln!(out, "{}", header.join(","))?;
            for t in 0..self.len() {
                for (a, c) in self.components.iter().enumerate() {
                    if a > 0 {
                        out.write_all(b",")?;
                    }
                    write!(out, "{}", c[t])?;
                }
                out.write_all(b"\n")?;
            }
            out.flush()
        };
        write().map_err(|e| Error::io(path, e))
    }
}

/// Reads a wide CSV file: one column per component, one row per timestamp.
///
/// A first line in which no cell parses as a number is treated as a header.
/// Parse errors report the 1-based line and column in the file.
pub fn load_csv(path: impl AsRef<Path>) -> Result<MultivariateSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, path)
}

pub(crate) fn read_csv<R: std::io::Read>(reader: R, path: &Path) -> Result<MultivariateSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::csv(path, e))?;
        let row = line + 1;
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        if row == 1 && record.iter().all(|cell| cell.parse::<f64>().is_err()) {
            continue;
        }
        if columns.is_empty() {
            columns = vec![Vec::new(); record.len()];
        } else if record.len() != columns.len() {
            return Err(Error::Structure(format!(
                "row {row} has {} columns, expected {}",
                record.len(),
                columns.len()
            )));
        }
        for (col, cell) in record.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| Error::Parse {
                row,
                column: col + 1,
                message: format!("not a number: {cell:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: col + 1,
                    message: format!("non-finite value {cell:?}"),
                });
            }
            columns[col].push(value);
        }
    }

    let len = columns.first().map_or(0, Vec::len);
    if len < 2 {
        return Err(Error::TooShort { len, min: 2 });
    }
    MultivariateSeries::from_columns(columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MultivariateSeries> {
        read_csv(text.as_bytes(), Path::new("<mem>"))
    }

    #[test]
    fn reads_columns_in_order() {
        let mts = parse("1,5\n2,6\n3,7").unwrap();
        assert_eq!(mts.dim(), 2);
        assert_eq!(mts.len(), 3);
        assert_eq!(mts.component(0).values(), &[1.0, 2.0, 3.0]);
        assert_eq!(mts.component(1).values(), &[5.0, 6.0, 7.0]);
    }

    #[test]
    fn skips_header() {
        let mts = parse("a,b\n1,2\n3,4\n").unwrap();
        assert_eq!((mts.dim(), mts.len()), (2, 2));
    }

    #[test]
    fn reports_bad_cell_position() {
        match parse("1,x\n2,3") {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column), (1, 2)),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_are_structure_errors() {
        assert!(matches!(parse("1,2\n3\n"), Err(Error::Structure(_))));
    }

    #[test]
    fn single_row_is_too_short() {
        assert!(matches!(parse("x,y\n1,2\n"), Err(Error::TooShort { len: 1, .. })));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(UnivariateSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(matches!(parse("1,inf\n2,3"), Err(Error::Parse { row: 1, column: 2, .. })));
    }

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let mts = MultivariateSeries::from_columns(vec![vec![0.1, -2.5e-7, 3.0], vec![1.0, 2.0, 1e10]])
            .unwrap();
        mts.write_csv(&path).unwrap();
        assert_eq!(load_csv(&path).unwrap(), mts);
    }
}
