use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AssetUniverse, RegimeScenario, UncertaintySet};

pub const DATASET_VERSION: &str = "regretfolio-dataset/1";

/// On-disk dataset: expected returns plus one volatility vector and one
/// correlation matrix per regime. Matrices are nested row arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub version: String,
    pub assets: Vec<String>,
    pub mu: Vec<f64>,
    pub regimes: Vec<RegimeRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeRecord {
    pub label: String,
    pub stds: Vec<f64>,
    pub corr: Vec<Vec<f64>>,
}

impl RegimeRecord {
    fn to_scenario(&self, n: usize) -> Result<RegimeScenario> {
        let label = &self.label;
        if self.stds.len() != n {
            return Err(Error::Validation(format!(
                "regime {label}: {} standard deviations for {n} assets",
                self.stds.len()
            )));
        }
        if self.corr.len() != n || self.corr.iter().any(|row| row.len() != n) {
            return Err(Error::Validation(format!(
                "regime {label}: correlation matrix must be {n}x{n}"
            )));
        }
        let corr = DMatrix::from_fn(n, n, |i, j| self.corr[i][j]);
        RegimeScenario::new(label.clone(), self.stds.clone(), corr).map_err(|e| match e {
            Error::NotPositiveSemidefinite { min_eigenvalue } => Error::Psd {
                label: label.clone(),
                min_eigenvalue,
            },
            Error::Validation(m) => Error::Validation(format!("regime {label}: {m}")),
            Error::NonSymmetric { row, col, .. } => Error::Validation(format!(
                "regime {label}: correlation matrix not symmetric at ({row}, {col})"
            )),
            other => other.in_scenario(label),
        })
    }
}

impl DatasetFile {
    /// Validates the file and builds the domain objects.
    pub fn to_domain(&self) -> Result<(AssetUniverse, UncertaintySet)> {
        if self.version != DATASET_VERSION {
            return Err(Error::Validation(format!(
                "unsupported dataset version {:?} (expected {DATASET_VERSION:?})",
                self.version
            )));
        }
        let universe = AssetUniverse::new(self.assets.clone(), self.mu.clone()).map_err(|e| match e {
            Error::DimensionMismatch { expected, found } => Error::Validation(format!(
                "{expected} asset names but {found} expected returns"
            )),
            other => other,
        })?;
        let n = universe.len();
        let scenarios = self
            .regimes
            .iter()
            .map(|r| r.to_scenario(n))
            .collect::<Result<Vec<_>>>()?;
        let uncertainty = UncertaintySet::new(scenarios)?;
        Ok((universe, uncertainty))
    }

    pub fn from_domain(universe: &AssetUniverse, uncertainty: &UncertaintySet) -> Self {
        Self {
            version: DATASET_VERSION.to_string(),
            assets: universe.names().to_vec(),
            mu: universe.mu().to_vec(),
            regimes: uncertainty
                .iter()
                .map(|s| {
                    let c = s.corr();
                    RegimeRecord {
                        label: s.label().to_string(),
                        stds: s.stds().to_vec(),
                        corr: (0..c.nrows())
                            .map(|i| (0..c.ncols()).map(|j| c[(i, j)]).collect())
                            .collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serializes") + "\n"
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

pub fn parse_dataset(text: &str) -> Result<DatasetFile> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
    })
}

/// Reads, parses and validates a dataset file.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<(AssetUniverse, UncertaintySet)> {
    let text = fs::read_to_string(path)?;
    parse_dataset(&text)?.to_domain()
}
