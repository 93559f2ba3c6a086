use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Principal components of a mean-centred matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Pca {
    /// Row coordinates in component space, one column per component.
    pub scores: DMatrix<f64>,
    /// Unit loading vectors as columns, by descending variance.
    pub loadings: DMatrix<f64>,
    pub variances: Vec<f64>,
    /// Share of total variance per component; all zero if the input has no
    /// variance at all.
    pub explained_ratio: Vec<f64>,
    pub mean: DVector<f64>,
}

impl Pca {
    pub fn cumulative_ratio(&self, components: usize) -> f64 {
        self.explained_ratio.iter().take(components).sum()
    }
}

/// PCA by eigendecomposition of the sample covariance. Columns are centred
/// but not rescaled. Each loading vector is oriented so that its largest
/// entry in absolute value is positive.
pub fn pca(x: &DMatrix<f64>) -> Result<Pca> {
    let (n, p) = x.shape();
    if n < 2 {
        return Err(Error::domain(format!("PCA needs at least 2 rows, got {n}")));
    }
    let mean = x.row_mean().transpose();
    let mut centred = x.clone();
    for mut row in centred.row_iter_mut() {
        row -= mean.transpose();
    }
    let cov = centred.transpose() * &centred / (n as f64 - 1.0);
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let mut loadings = DMatrix::zeros(p, p);
    let mut variances = Vec::with_capacity(p);
    for (dst, &src) in order.iter().enumerate() {
        let mut v = eig.eigenvectors.column(src).into_owned();
        let pivot = v.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        if pivot < 0.0 {
            v.neg_mut();
        }
        loadings.set_column(dst, &v);
        variances.push(eig.eigenvalues[src].max(0.0));
    }
    let total: f64 = variances.iter().sum();
    let explained_ratio = variances
        .iter()
        .map(|v| if total > 0.0 { v / total } else { 0.0 })
        .collect();
    Ok(Pca {
        scores: centred * &loadings,
        loadings,
        variances,
        explained_ratio,
        mean,
    })
}
