//! Seeded simulation of the six bivariate data-generating processes.
//!
//! | kind      | process                          | noise covariance          |
//! |-----------|----------------------------------|---------------------------|
//! | `iBWN`    | white noise                      | `I`                       |
//! | `cBWN`    | white noise                      | `[1.00 0.86; 0.86 1.50]`  |
//! | `wVAR`    | VAR(1), weak coupling            | `[1.00 0.10; 0.10 1.50]`  |
//! | `sVAR`    | VAR(1), strong coupling          | `[1.00 0.86; 0.86 1.50]`  |
//! | `wVGARCH` | diagonal CCC-GARCH(1,1)          | `[1.00 0.10; 0.10 1.50]`  |
//! | `sVGARCH` | diagonal CCC-GARCH(1,1)          | `[1.00 0.86; 0.86 1.50]`  |
//!
//! The GARCH kinds use `h_t = ω + α ε²_{t-1} + β h_{t-1}` per component and
//! `ε_t = √h_t ⊙ z_t` with `z_t ~ N(0, R)`, where `R` is the correlation
//! matrix of the noise covariance.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit seed; see
//! [`derive_seed`] for the per-instance seed mixing.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::MultivariateSeries;

pub type Mat2 = [[f64; 2]; 2];
pub type Vec2 = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MdgpKind {
    #[serde(rename = "iBWN")]
    IBwn,
    #[serde(rename = "cBWN")]
    CBwn,
    #[serde(rename = "wVAR")]
    WVar,
    #[serde(rename = "sVAR")]
    SVar,
    #[serde(rename = "wVGARCH")]
    WVgarch,
    #[serde(rename = "sVGARCH")]
    SVgarch,
}

impl MdgpKind {
    pub const ALL: [MdgpKind; 6] = [
        MdgpKind::IBwn,
        MdgpKind::CBwn,
        MdgpKind::WVar,
        MdgpKind::SVar,
        MdgpKind::WVgarch,
        MdgpKind::SVgarch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MdgpKind::IBwn => "iBWN",
            MdgpKind::CBwn => "cBWN",
            MdgpKind::WVar => "wVAR",
            MdgpKind::SVar => "sVAR",
            MdgpKind::WVgarch => "wVGARCH",
            MdgpKind::SVgarch => "sVGARCH",
        }
    }

    /// Position in [`MdgpKind::ALL`]; also the ground-truth class label.
    pub fn index(self) -> usize {
        MdgpKind::ALL.iter().position(|&k| k == self).unwrap()
    }

    pub fn process(self) -> Process {
        match self {
            MdgpKind::IBwn | MdgpKind::CBwn => Process::WhiteNoise,
            MdgpKind::WVar | MdgpKind::SVar => Process::Var,
            MdgpKind::WVgarch | MdgpKind::SVgarch => Process::Vgarch,
        }
    }

    pub fn default_burn_in(self) -> usize {
        match self.process() {
            Process::WhiteNoise => 0,
            Process::Var | Process::Vgarch => 500,
        }
    }

    pub fn params(self) -> ModelParams {
        const IDENTITY: Mat2 = [[1.0, 0.0], [0.0, 1.0]];
        const WEAK: Mat2 = [[1.00, 0.10], [0.10, 1.50]];
        const STRONG: Mat2 = [[1.00, 0.86], [0.86, 1.50]];
        let base = ModelParams::default();
        match self {
            MdgpKind::IBwn => ModelParams {
                noise_cov: IDENTITY,
                ..base
            },
            MdgpKind::CBwn => ModelParams {
                noise_cov: STRONG,
                ..base
            },
            MdgpKind::WVar => ModelParams {
                intercept: [2.50, 0.50],
                ar_matrix: [[0.20, 0.10], [0.02, 0.10]],
                noise_cov: WEAK,
                ..base
            },
            MdgpKind::SVar => ModelParams {
                ar_matrix: [[0.70, 0.02], [0.30, 0.80]],
                noise_cov: STRONG,
                ..base
            },
            MdgpKind::WVgarch => ModelParams {
                omega: [0.05, 0.02],
                arch: [0.10, 0.05],
                garch: [0.85, 0.88],
                noise_cov: WEAK,
                ..base
            },
            MdgpKind::SVgarch => ModelParams {
                omega: [0.05, 0.02],
                arch: [0.10, 0.05],
                garch: [0.85, 0.88],
                noise_cov: STRONG,
                ..base
            },
        }
    }
}

impl fmt::Display for MdgpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MdgpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MdgpKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown model kind {s:?}; expected one of iBWN, cBWN, wVAR, sVAR, wVGARCH, sVGARCH"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Process {
    WhiteNoise,
    Var,
    Vgarch,
}

/// Model matrices. `arch` and `garch` hold the diagonals of the diagonal
/// α and β matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub intercept: Vec2,
    pub ar_matrix: Mat2,
    pub omega: Vec2,
    pub arch: Vec2,
    pub garch: Vec2,
    pub noise_cov: Mat2,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            intercept: [0.0; 2],
            ar_matrix: [[0.0; 2]; 2],
            omega: [0.0; 2],
            arch: [0.0; 2],
            garch: [0.0; 2],
            noise_cov: [[1.0, 0.0], [0.0, 1.0]],
        }
    }
}

impl ModelParams {
    /// Stationary mean `(I - φ)⁻¹ φ₀` of the VAR(1) recursion.
    pub fn var_mean(&self) -> Result<Vec2> {
        let a = [
            [1.0 - self.ar_matrix[0][0], -self.ar_matrix[0][1]],
            [-self.ar_matrix[1][0], 1.0 - self.ar_matrix[1][1]],
        ];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() < 1e-12 {
            return Err(Error::domain("I - φ is singular; the VAR has no stationary mean"));
        }
        let [c0, c1] = self.intercept;
        Ok([
            (a[1][1] * c0 - a[0][1] * c1) / det,
            (-a[1][0] * c0 + a[0][0] * c1) / det,
        ])
    }

    pub fn spectral_radius(&self) -> f64 {
        let m = self.ar_matrix;
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let disc = tr * tr / 4.0 - det;
        if disc >= 0.0 {
            (tr / 2.0).abs() + disc.sqrt()
        } else {
            det.sqrt()
        }
    }

    pub fn noise_correlation(&self) -> Mat2 {
        let s = self.noise_cov;
        let r = s[0][1] / (s[0][0] * s[1][1]).sqrt();
        [[1.0, r], [r, 1.0]]
    }
}

/// Lower Cholesky factor of a symmetric positive-definite 2×2 matrix.
pub fn cholesky(m: &Mat2) -> Result<Mat2> {
    if (m[0][1] - m[1][0]).abs() > 1e-12 {
        return Err(Error::domain("noise covariance must be symmetric"));
    }
    if !(m[0][0] > 0.0) {
        return Err(Error::domain("noise covariance is not positive definite"));
    }
    let l00 = m[0][0].sqrt();
    let l10 = m[1][0] / l00;
    let rest = m[1][1] - l10 * l10;
    if !(rest > 0.0) {
        return Err(Error::domain("noise covariance is not positive definite"));
    }
    Ok([[l00, 0.0], [l10, rest.sqrt()]])
}

/// One simulation request. `params` and `burn_in` default to the kind's
/// fixed parameterisation when absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MdgpSpec {
    pub kind: MdgpKind,
    pub len: usize,
    pub seed: u64,
    #[serde(default)]
    pub burn_in: Option<usize>,
    #[serde(default)]
    pub params: Option<ModelParams>,
}

impl MdgpSpec {
    pub fn new(kind: MdgpKind, len: usize, seed: u64) -> Self {
        Self {
            kind,
            len,
            seed,
            burn_in: None,
            params: None,
        }
    }
}

fn correlated_normal<R: Rng>(rng: &mut R, chol: &Mat2) -> Vec2 {
    let z0: f64 = rng.sample(StandardNormal);
    let z1: f64 = rng.sample(StandardNormal);
    [chol[0][0] * z0, chol[1][0] * z0 + chol[1][1] * z1]
}

pub fn generate(spec: &MdgpSpec) -> Result<MultivariateSeries> {
    if spec.len < 2 {
        return Err(Error::TooShort {
            len: spec.len,
            min: 2,
        });
    }
    let params = spec.params.unwrap_or_else(|| spec.kind.params());
    let burn_in = spec.burn_in.unwrap_or_else(|| spec.kind.default_burn_in());
    let process = spec.kind.process();
    let chol = match process {
        Process::Vgarch => {
            cholesky(&params.noise_cov)?;
            cholesky(&params.noise_correlation())?
        }
        _ => cholesky(&params.noise_cov)?,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let total = burn_in + spec.len;
    let mut out = [Vec::with_capacity(spec.len), Vec::with_capacity(spec.len)];
    let mut push = |t: usize, y: Vec2| {
        if t >= burn_in {
            out[0].push(y[0]);
            out[1].push(y[1]);
        }
    };

    match process {
        Process::WhiteNoise => {
            for t in 0..total {
                push(t, correlated_normal(&mut rng, &chol));
            }
        }
        Process::Var => {
            let phi = params.ar_matrix;
            let c = params.intercept;
            let mut y = params.var_mean()?;
            for t in 0..total {
                let e = correlated_normal(&mut rng, &chol);
                y = [
                    c[0] + phi[0][0] * y[0] + phi[0][1] * y[1] + e[0],
                    c[1] + phi[1][0] * y[0] + phi[1][1] * y[1] + e[1],
                ];
                push(t, y);
            }
        }
        Process::Vgarch => {
            let mut h = [0.0; 2];
            for a in 0..2 {
                let persistence = params.arch[a] + params.garch[a];
                if !(params.omega[a] > 0.0) || persistence >= 1.0 {
                    return Err(Error::domain(format!(
                        "GARCH component {} is not covariance stationary",
                        a + 1
                    )));
                }
                h[a] = params.omega[a] / (1.0 - persistence);
            }
            let mut eps_sq = h;
            for t in 0..total {
                let z = correlated_normal(&mut rng, &chol);
                let mut y = [0.0; 2];
                for a in 0..2 {
                    h[a] = params.omega[a] + params.arch[a] * eps_sq[a] + params.garch[a] * h[a];
                    y[a] = h[a].sqrt() * z[a];
                    eps_sq[a] = y[a] * y[a];
                }
                push(t, y);
            }
        }
    }

    let [a, b] = out;
    MultivariateSeries::from_columns(vec![a, b])
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-instance seed: `splitmix64(splitmix64(base) ^ (model << 32 | instance))`.
pub fn derive_seed(base_seed: u64, model: usize, instance: usize) -> u64 {
    splitmix64(splitmix64(base_seed) ^ ((model as u64) << 32 | instance as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    fn corr(a: &[f64], b: &[f64]) -> f64 {
        let (ma, mb) = (mean(a), mean(b));
        let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
        let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
        cov / (va * vb).sqrt()
    }

    fn lag1(a: &[f64]) -> f64 {
        corr(&a[..a.len() - 1], &a[1..])
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in MdgpKind::ALL {
            assert_eq!(k.name().parse::<MdgpKind>().unwrap(), k);
        }
        assert!(matches!("VARMA".parse::<MdgpKind>(), Err(Error::Domain(_))));
    }

    #[test]
    fn wvar_stationary_mean() {
        let m = MdgpKind::WVar.params().var_mean().unwrap();
        assert!((m[0] - 2.3 / 0.718).abs() < 1e-12);
        assert!((m[1] - 0.45 / 0.718).abs() < 1e-12);
        assert!((m[0] - 3.203).abs() < 5e-4 && (m[1] - 0.627).abs() < 5e-4);
    }

    #[test]
    fn var_kinds_are_stable() {
        for k in [MdgpKind::WVar, MdgpKind::SVar] {
            assert!(k.params().spectral_radius() < 1.0, "{k}");
        }
        // sVAR eigenvalues are 0.75 ± sqrt(0.0025 + 0.006)
        let r = MdgpKind::SVar.params().spectral_radius();
        assert!((r - (0.75 + 0.0085f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn cholesky_reconstructs() {
        let s = [[1.0, 0.86], [0.86, 1.5]];
        let l = cholesky(&s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v: f64 = (0..2).map(|k| l[i][k] * l[j][k]).sum();
                assert!((v - s[i][j]).abs() < 1e-12);
            }
        }
        assert!(cholesky(&[[1.0, 2.0], [2.0, 1.0]]).is_err());
        assert!(cholesky(&[[1.0, 0.5], [0.4, 1.0]]).is_err());
    }

    #[test]
    fn non_pd_override_rejected() {
        let mut spec = MdgpSpec::new(MdgpKind::CBwn, 100, 1);
        spec.params = Some(ModelParams {
            noise_cov: [[1.0, 1.5], [1.5, 1.0]],
            ..ModelParams::default()
        });
        assert!(matches!(generate(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let a = generate(&MdgpSpec::new(MdgpKind::SVgarch, 500, 9)).unwrap();
        let b = generate(&MdgpSpec::new(MdgpKind::SVgarch, 500, 9)).unwrap();
        let c = generate(&MdgpSpec::new(MdgpKind::SVgarch, 500, 10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 500);
    }

    #[test]
    fn too_short_rejected() {
        assert!(generate(&MdgpSpec::new(MdgpKind::IBwn, 1, 0)).is_err());
    }

    #[test]
    fn moments_at_ten_thousand_steps() {
        let cb = generate(&MdgpSpec::new(MdgpKind::CBwn, 10_000, 3)).unwrap();
        let r = corr(cb.component(0).values(), cb.component(1).values());
        assert!((r - 0.86 / 1.5f64.sqrt()).abs() < 0.03, "cBWN corr {r}");

        let ib = generate(&MdgpSpec::new(MdgpKind::IBwn, 10_000, 3)).unwrap();
        let (x, y) = (ib.component(0).values(), ib.component(1).values());
        assert!(corr(x, y).abs() < 0.03);
        assert!(lag1(x).abs() < 0.03 && lag1(y).abs() < 0.03);

        let sv = generate(&MdgpSpec::new(MdgpKind::SVar, 10_000, 3)).unwrap();
        assert!(lag1(sv.component(0).values()) > 0.5);
        // long-run standard error of the sample mean is about 0.11 here
        for c in sv.components() {
            assert!(mean(c.values()).abs() < 0.4, "sVAR mean {}", mean(c.values()));
        }

        for k in [MdgpKind::WVgarch, MdgpKind::SVgarch] {
            let g = generate(&MdgpSpec::new(k, 10_000, 3)).unwrap();
            for c in g.components() {
                let v = c.values();
                assert!(lag1(v).abs() < 0.03, "{k} raw lag-1");
                let sq: Vec<f64> = v.iter().map(|x| x * x).collect();
                assert!(lag1(&sq) > 0.0, "{k} squared lag-1");
                assert!(v.iter().all(|x| x.is_finite()));
            }
        }
    }

    #[test]
    fn seeds_are_distinct_per_instance() {
        let mut seen = std::collections::HashSet::new();
        for m in 0..6 {
            for i in 0..100 {
                assert!(seen.insert(derive_seed(42, m, i)));
            }
        }
    }
}
