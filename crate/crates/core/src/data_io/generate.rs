use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dataset::{DatasetFile, RegimeRecord, DATASET_VERSION};
use crate::error::{Error, Result};

/// Half-width of the uniform jitter around a regime's base correlation.
pub const CORR_JITTER: f64 = 0.05;
/// Eigenvalue floor used when repairing generated correlation matrices.
pub const EIGEN_FLOOR: f64 = 1e-6;

/// Interval from which a regime's base correlation level is drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeLevel {
    pub label: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub n_assets: usize,
    pub return_range: (f64, f64),
    pub std_range: (f64, f64),
    /// Listed from most to least correlated regime.
    pub regimes: Vec<RegimeLevel>,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        let level = |label: &str, lo, hi| RegimeLevel {
            label: label.into(),
            lo,
            hi,
        };
        Self {
            seed: 0,
            n_assets: 15,
            return_range: (0.02, 0.11),
            std_range: (0.01, 0.15),
            regimes: vec![level("C", 0.6, 0.9), level("N", 0.3, 0.6), level("G", 0.0, 0.3)],
        }
    }
}

impl GeneratorSpec {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
        if self.n_assets < 2 {
            return Err(Error::InvalidInput("at least two assets required".into()));
        }
        if !ordered(self.return_range) {
            return Err(Error::InvalidInput("return range must be ordered".into()));
        }
        if !ordered(self.std_range) || self.std_range.0 <= 0.0 {
            return Err(Error::InvalidInput(
                "volatility range must be ordered and positive".into(),
            ));
        }
        if self.regimes.is_empty() {
            return Err(Error::InvalidInput("at least one regime required".into()));
        }
        for r in &self.regimes {
            if !ordered((r.lo, r.hi)) || r.lo < -1.0 || r.hi > 1.0 {
                return Err(Error::InvalidInput(format!(
                    "regime {}: correlation level interval must be ordered within [-1, 1]",
                    r.label
                )));
            }
        }
        for w in self.regimes.windows(2) {
            if w[0].lo < w[1].lo || w[0].hi < w[1].hi {
                return Err(Error::InvalidInput(format!(
                    "regime {} must be at least as correlated as regime {}",
                    w[0].label, w[1].label
                )));
            }
        }
        Ok(())
    }
}

/// Clips eigenvalues of a symmetric matrix at `floor` and rescales back to
/// unit diagonal. The output is exactly symmetric with exact unit diagonal.
pub fn repair_correlation(m: &DMatrix<f64>, floor: f64) -> DMatrix<f64> {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let clipped = eig.eigenvalues.map(|l| l.max(floor));
    let v = &eig.eigenvectors;
    let rebuilt = v * DMatrix::from_diagonal(&clipped) * v.transpose();
    let d: Vec<f64> = (0..n).map(|i| rebuilt[(i, i)].sqrt()).collect();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            let (a, b) = (i.min(j), i.max(j));
            rebuilt[(a, b)] / (d[a] * d[b])
        }
    })
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

/// Draws a synthetic dataset. Deterministic under `spec.seed`.
///
/// Returns are uniform in the return range, sorted ascending; volatilities
/// are uniform in their range and sorted the same way, so riskier assets
/// pay more. Each regime draws one base correlation level from its interval
/// and jitters every off-diagonal entry around it; the matrix is repaired to
/// positive definiteness if the jitter broke it.
pub fn generate_synthetic(spec: &GeneratorSpec) -> Result<DatasetFile> {
    spec.validate()?;
    let n = spec.n_assets;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut mu: Vec<f64> = (0..n).map(|_| uniform(&mut rng, spec.return_range)).collect();
    mu.sort_by(f64::total_cmp);
    let mut stds: Vec<f64> = (0..n).map(|_| uniform(&mut rng, spec.std_range)).collect();
    stds.sort_by(f64::total_cmp);

    let regimes = spec
        .regimes
        .iter()
        .map(|level| {
            let base = uniform(&mut rng, (level.lo, level.hi));
            let mut corr = DMatrix::identity(n, n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = (base + rng.random_range(-CORR_JITTER..CORR_JITTER)).clamp(-0.99, 0.99);
                    corr[(i, j)] = v;
                    corr[(j, i)] = v;
                }
            }
            let min_eig = SymmetricEigen::new(corr.clone())
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            if min_eig < EIGEN_FLOOR {
                corr = repair_correlation(&corr, EIGEN_FLOOR);
            }
            RegimeRecord {
                label: level.label.clone(),
                stds: stds.clone(),
                corr: (0..n).map(|i| (0..n).map(|j| corr[(i, j)]).collect()).collect(),
            }
        })
        .collect();

    Ok(DatasetFile {
        version: DATASET_VERSION.to_string(),
        assets: (1..=n).map(|i| format!("AC{i:02}")).collect(),
        mu,
        regimes,
    })
}

/// Mean off-diagonal entry of a correlation matrix given as rows.
pub fn mean_off_diagonal(corr: &[Vec<f64>]) -> f64 {
    let n = corr.len();
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.0;
    for (i, row) in corr.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v;
            }
        }
    }
    s / (n * (n - 1)) as f64
}
