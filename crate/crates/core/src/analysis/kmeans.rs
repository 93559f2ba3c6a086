use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::splitmix64;

pub const MAX_ITERATIONS: usize = 300;

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansRun {
    pub assignments: Vec<usize>,
    pub centroids: DMatrix<f64>,
    /// Sum of squared distances to the assigned centroid.
    pub inertia: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn sq_dist(x: &DMatrix<f64>, r: usize, c: &DMatrix<f64>, k: usize) -> f64 {
    x.row(r).iter().zip(c.row(k).iter()).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn nearest(x: &DMatrix<f64>, r: usize, c: &DMatrix<f64>) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for k in 0..c.nrows() {
        let d = sq_dist(x, r, c, k);
        if d < best.1 {
            best = (k, d);
        }
    }
    best
}

fn plus_plus_init(x: &DMatrix<f64>, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let n = x.nrows();
    let mut centroids = DMatrix::zeros(k, x.ncols());
    centroids.set_row(0, &x.row(rng.random_range(0..n)));
    let mut d2: Vec<f64> = (0..n).map(|r| sq_dist(x, r, &centroids, 0)).collect();
    for j in 1..k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut chosen = n - 1;
            for (r, &d) in d2.iter().enumerate() {
                if target < d {
                    chosen = r;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            rng.random_range(0..n)
        };
        centroids.set_row(j, &x.row(pick));
        for (r, d) in d2.iter_mut().enumerate() {
            *d = d.min(sq_dist(x, r, &centroids, j));
        }
    }
    centroids
}

/// Lloyd's algorithm from a k-means++ start.
///
/// A cluster that empties is re-seeded with the row farthest from its current
/// centroid. Stops when no assignment changes or after [`MAX_ITERATIONS`].
pub fn kmeans(x: &DMatrix<f64>, k: usize, seed: u64) -> Result<KMeansRun> {
    let n = x.nrows();
    if k == 0 || k > n {
        return Err(Error::domain(format!("k = {k} must lie in 1..={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = plus_plus_init(x, k, &mut rng);
    let mut assignments = vec![usize::MAX; n];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut changed = false;
        for (r, a) in assignments.iter_mut().enumerate() {
            let (c, _) = nearest(x, r, &centroids);
            if *a != c {
                *a = c;
                changed = true;
            }
        }
        if !changed {
            converged = true;
            break;
        }
        let mut sums = DMatrix::zeros(k, x.ncols());
        let mut counts = vec![0usize; k];
        for (r, &a) in assignments.iter().enumerate() {
            counts[a] += 1;
            let mut row = sums.row_mut(a);
            row += x.row(r);
        }
        for (j, &count) in counts.iter().enumerate() {
            if count > 0 {
                let row = sums.row(j) / count as f64;
                centroids.set_row(j, &row);
            }
        }
        for j in (0..k).filter(|&j| counts[j] == 0) {
            let far = (0..n)
                .max_by(|&a, &b| {
                    let da = sq_dist(x, a, &centroids, assignments[a]);
                    let db = sq_dist(x, b, &centroids, assignments[b]);
                    da.total_cmp(&db).then(b.cmp(&a))
                })
                .expect("n >= k >= 1");
            centroids.set_row(j, &x.row(far));
            assignments[far] = j;
        }
    }
    let inertia = (0..n).map(|r| sq_dist(x, r, &centroids, assignments[r])).sum();
    Ok(KMeansRun {
        assignments,
        centroids,
        inertia,
        iterations,
        converged,
    })
}

/// Seed of repetition `rep` under a base seed.
pub fn repetition_seed(seed: u64, rep: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ rep as u64)
}

/// Independent k-means runs, one per repetition, evaluated in parallel.
pub fn kmeans_repeated(x: &DMatrix<f64>, k: usize, repetitions: usize, seed: u64) -> Result<Vec<KMeansRun>> {
    if repetitions == 0 {
        return Err(Error::domain("at least one k-means repetition is required"));
    }
    (0..repetitions)
        .into_par_iter()
        .map(|rep| kmeans(x, k, repetition_seed(seed, rep)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::metrics::ari;

    fn two_clouds() -> (DMatrix<f64>, Vec<usize>) {
        let mut rows = Vec::new();
        let mut truth = Vec::new();
        for i in 0..20 {
            let j = i as f64 * 0.01;
            rows.extend([j, -j]);
            truth.push(0);
            rows.extend([10.0 + j, 10.0 - j]);
            truth.push(1);
        }
        (DMatrix::from_row_slice(40, 2, &rows), truth)
    }

    #[test]
    fn separates_two_clouds() {
        let (x, truth) = two_clouds();
        for seed in 0..5 {
            let run = kmeans(&x, 2, seed).unwrap();
            assert!(run.converged);
            assert_eq!(ari(&run.assignments, &truth).unwrap(), 1.0);
        }
    }

    #[test]
    fn single_cluster() {
        let (x, _) = two_clouds();
        let run = kmeans(&x, 1, 3).unwrap();
        assert!(run.assignments.iter().all(|&a| a == 0));
    }

    #[test]
    fn k_bounds() {
        let (x, _) = two_clouds();
        assert!(kmeans(&x, 41, 0).is_err());
        assert!(kmeans(&x, 0, 0).is_err());
        assert!(kmeans(&x, 40, 0).is_ok());
    }

    #[test]
    fn deterministic_per_seed() {
        let x = DMatrix::from_fn(30, 3, |r, c| ((r * 7 + c * 13) % 11) as f64);
        assert_eq!(kmeans(&x, 4, 9).unwrap(), kmeans(&x, 4, 9).unwrap());
        let runs = kmeans_repeated(&x, 4, 5, 1).unwrap();
        assert_eq!(runs, kmeans_repeated(&x, 4, 5, 1).unwrap());
        assert_eq!(runs[2], kmeans(&x, 4, repetition_seed(1, 2)).unwrap());
    }

    #[test]
    fn duplicate_rows_do_not_leave_empty_clusters() {
        let x = DMatrix::from_row_slice(4, 1, &[1.0, 1.0, 1.0, 5.0]);
        let run = kmeans(&x, 3, 0).unwrap();
        let mut used = run.assignments.clone();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 3);
    }
}
