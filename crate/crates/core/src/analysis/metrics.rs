use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_sizes(a: &[usize], b: &[usize]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::domain(format!("partitions have {} and {} elements", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::domain("partitions are empty"));
    }
    Ok(())
}

struct Contingency {
    n: f64,
    cells: Vec<f64>,
    rows: Vec<f64>,
    cols: Vec<f64>,
}

impl Contingency {
    fn new(a: &[usize], b: &[usize]) -> Self {
        let mut cells: HashMap<(usize, usize), f64> = HashMap::new();
        let mut rows: HashMap<usize, f64> = HashMap::new();
        let mut cols: HashMap<usize, f64> = HashMap::new();
        for (&x, &y) in a.iter().zip(b) {
            *cells.entry((x, y)).or_default() += 1.0;
            *rows.entry(x).or_default() += 1.0;
            *cols.entry(y).or_default() += 1.0;
        }
        Self {
            n: a.len() as f64,
            cells: cells.into_values().collect(),
            rows: rows.into_values().collect(),
            cols: cols.into_values().collect(),
        }
    }
}

fn pairs(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand index. Two partitions that are both all-singletons or both a
/// single block score 1.
pub fn ari(a: &[usize], b: &[usize]) -> Result<f64> {
    check_sizes(a, b)?;
    let t = Contingency::new(a, b);
    let index: f64 = t.cells.iter().map(|&c| pairs(c)).sum();
    let sa: f64 = t.rows.iter().map(|&c| pairs(c)).sum();
    let sb: f64 = t.cols.iter().map(|&c| pairs(c)).sum();
    let expected = sa * sb / pairs(t.n).max(1.0);
    let max = 0.5 * (sa + sb);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

fn entropy(counts: &[f64], n: f64) -> f64 {
    counts.iter().filter(|&&c| c > 0.0).map(|&c| -(c / n) * (c / n).ln()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NmiNorm {
    #[default]
    Arithmetic,
    Geometric,
    Min,
    Max,
}

impl fmt::Display for NmiNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NmiNorm::Arithmetic => "arithmetic",
            NmiNorm::Geometric => "geometric",
            NmiNorm::Min => "min",
            NmiNorm::Max => "max",
        })
    }
}

impl FromStr for NmiNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "arithmetic" => Ok(NmiNorm::Arithmetic),
            "geometric" => Ok(NmiNorm::Geometric),
            "min" => Ok(NmiNorm::Min),
            "max" => Ok(NmiNorm::Max),
            _ => Err(Error::domain(format!(
                "unknown NMI normalisation {s:?}; expected arithmetic, geometric, min or max"
            ))),
        }
    }
}

/// Normalised mutual information. Two single-block partitions score 1.
pub fn nmi(a: &[usize], b: &[usize], norm: NmiNorm) -> Result<f64> {
    check_sizes(a, b)?;
    let t = Contingency::new(a, b);
    let (ha, hb) = (entropy(&t.rows, t.n), entropy(&t.cols, t.n));
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    let mi = ha + hb - entropy(&t.cells, t.n);
    let denom = match norm {
        NmiNorm::Arithmetic => 0.5 * (ha + hb),
        NmiNorm::Geometric => (ha * hb).sqrt(),
        NmiNorm::Min => ha.min(hb),
        NmiNorm::Max => ha.max(hb),
    };
    if denom <= 0.0 {
        return Ok(0.0);
    }
    Ok((mi / denom).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Silhouette {
    pub value: f64,
    /// Fewer than two clusters; `value` is reported as 0.
    pub degenerate: bool,
}

/// Mean silhouette width with Euclidean distances between rows. Points alone
/// in their cluster contribute 0.
pub fn silhouette(x: &DMatrix<f64>, labels: &[usize]) -> Result<Silhouette> {
    let n = x.nrows();
    if labels.len() != n {
        return Err(Error::domain(format!("{} labels for {n} rows", labels.len())));
    }
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; k];
    for &l in labels {
        sizes[l] += 1;
    }
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Ok(Silhouette {
            value: 0.0,
            degenerate: true,
        });
    }
    let dist = |i: usize, j: usize| -> f64 {
        x.row(i).iter().zip(x.row(j).iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    };
    let mut total = 0.0;
    let mut sums = vec![0.0; k];
    for i in 0..n {
        let own = labels[i];
        if sizes[own] == 1 {
            continue;
        }
        sums.fill(0.0);
        for j in 0..n {
            if j != i {
                sums[labels[j]] += dist(i, j);
            }
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        if m > 0.0 {
            total += (b - a) / m;
        }
    }
    Ok(Silhouette {
        value: total / n as f64,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_partitions() {
        let a = [0, 0, 1, 1, 2];
        assert_eq!(ari(&a, &a).unwrap(), 1.0);
        assert!((nmi(&a, &a, NmiNorm::Arithmetic).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singletons_against_one_block() {
        let a = [0, 1, 2, 3];
        let b = [0, 0, 0, 0];
        assert_eq!(ari(&a, &b).unwrap(), 0.0);
        assert_eq!(nmi(&a, &b, NmiNorm::Arithmetic).unwrap(), 0.0);
    }

    #[test]
    fn hand_computed_ari() {
        // contingency [[2,1],[0,2]]: index 2, row pairs 3+1, col pairs 1+3,
        // expected 16/10, max 4 -> (2 - 1.6) / 2.4
        let a = [0, 0, 0, 1, 1];
        let b = [0, 0, 1, 1, 1];
        assert!((ari(&a, &b).unwrap() - 0.4 / 2.4).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_nmi() {
        // independent halves: MI = 0
        let a = [0, 0, 1, 1];
        let b = [0, 1, 0, 1];
        assert!(nmi(&a, &b, NmiNorm::Arithmetic).unwrap().abs() < 1e-12);
        // a refines b: MI = H(b) = ln 2, H(a) = ln 4
        let a = [0, 1, 2, 3];
        let b = [0, 0, 1, 1];
        let want = 2f64.ln() / (0.5 * (4f64.ln() + 2f64.ln()));
        assert!((nmi(&a, &b, NmiNorm::Arithmetic).unwrap() - want).abs() < 1e-12);
        assert!((nmi(&a, &b, NmiNorm::Min).unwrap() - 1.0).abs() < 1e-12);
        assert!((nmi(&a, &b, NmiNorm::Max).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn size_mismatch_rejected() {
        assert!(ari(&[0, 1], &[0]).is_err());
        assert!(nmi(&[0, 1], &[0], NmiNorm::Arithmetic).is_err());
        assert!(silhouette(&DMatrix::zeros(3, 1), &[0, 1]).is_err());
    }

    #[test]
    fn silhouette_examples() {
        let x = DMatrix::from_row_slice(4, 1, &[0.0, 0.001, 100.0, 100.001]);
        let s = silhouette(&x, &[0, 0, 1, 1]).unwrap();
        assert!(s.value > 0.9999 && !s.degenerate);
        let one = silhouette(&x, &[0, 0, 0, 0]).unwrap();
        assert_eq!(one, Silhouette { value: 0.0, degenerate: true });
        // 1-D points 0, 1, 3 with {0,1} and {3}: s0 = (3 - 1)/3, s1 = (2 - 1)/2
        let x = DMatrix::from_row_slice(3, 1, &[0.0, 1.0, 3.0]);
        let s = silhouette(&x, &[0, 0, 1]).unwrap();
        assert!((s.value - (2.0 / 3.0 + 0.5) / 3.0).abs() < 1e-12);
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (1usize..40).prop_flat_map(|n| (prop::collection::vec(0usize..5, n), prop::collection::vec(0usize..5, n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ari_symmetric_and_relabel_invariant((a, b) in arb_pair(), shift in 1usize..7) {
            let x = ari(&a, &b).unwrap();
            prop_assert!((x - ari(&b, &a).unwrap()).abs() < 1e-12);
            let relabeled: Vec<usize> = a.iter().map(|&l| (l + shift) * 3).collect();
            prop_assert!((x - ari(&relabeled, &b).unwrap()).abs() < 1e-12);
            prop_assert!((-1.0..=1.0 + 1e-12).contains(&x));
        }

        #[test]
        fn nmi_bounds_and_self((a, b) in arb_pair()) {
            for norm in [NmiNorm::Arithmetic, NmiNorm::Geometric, NmiNorm::Min, NmiNorm::Max] {
                let v = nmi(&a, &b, norm).unwrap();
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert!((v - nmi(&b, &a, norm).unwrap()).abs() < 1e-12);
                prop_assert!((nmi(&a, &a, norm).unwrap() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn silhouette_bounded(rows in prop::collection::vec((-5f64..5.0, -5f64..5.0, 0usize..3), 2..30)) {
            let x = DMatrix::from_fn(rows.len(), 2, |r, c| if c == 0 { rows[r].0 } else { rows[r].1 });
            let labels: Vec<usize> = rows.iter().map(|r| r.2).collect();
            let s = silhouette(&x, &labels).unwrap();
            prop_assert!((-1.0..=1.0).contains(&s.value));
        }
    }
}
