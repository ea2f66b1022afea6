//! Per-regime benchmark portfolios.
//!
//! Each regime gets its own benchmark `b`, computed with that regime's
//! covariance, and its variance `c = b' cov b` anchors the regret of every
//! candidate portfolio in that regime.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dot, quad_form, AssetUniverse, Portfolio, RegimeScenario, UncertaintySet};
use crate::simplex::{
    max_return_with_variance_cap, max_sharpe_dinkelbach, max_variance_over_simplex, min_variance,
    weighted_sum_optimum, SignMode, SolverConfig,
};

pub const DEFAULT_CAP: f64 = 0.03;
pub const DEFAULT_LAMBDA: f64 = 3.5;
/// Width of the admissible variance band above the minimum, as a fraction
/// of the full `[min, max]` variance range. Despite the "60%" name the
/// technique goes by, the band is one fifth of the range.
pub const DEFAULT_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BenchmarkTechnique {
    /// Best return with variance at most `cap`.
    BoundedRisk { cap: f64 },
    /// Risk-averse weighted sum of variance and return.
    WeightedSum { lambda: f64, sign_mode: SignMode },
    /// Best return-to-variance ratio.
    Sharpe,
    /// Best return with variance in the lowest `fraction` of the attainable
    /// variance range.
    Percentile { fraction: f64 },
    /// Global minimum variance: the regime's own optimum of the risk
    /// objective.
    Ideal,
}

impl BenchmarkTechnique {
    pub fn bounded_risk() -> Self {
        Self::BoundedRisk { cap: DEFAULT_CAP }
    }

    pub fn weighted_sum() -> Self {
        Self::WeightedSum {
            lambda: DEFAULT_LAMBDA,
            sign_mode: SignMode::Standard,
        }
    }

    pub fn percentile() -> Self {
        Self::Percentile {
            fraction: DEFAULT_FRACTION,
        }
    }

    /// The four practitioner techniques with default parameters, in legend
    /// order.
    pub fn practitioner_set() -> [Self; 4] {
        [
            Self::bounded_risk(),
            Self::weighted_sum(),
            Self::Sharpe,
            Self::percentile(),
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BoundedRisk { .. } => "bounded-risk",
            Self::WeightedSum { .. } => "weighted-sum",
            Self::Sharpe => "sharpe",
            Self::Percentile { .. } => "percentile",
            Self::Ideal => "ideal",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::BoundedRisk { cap } if !(cap > 0.0 && cap.is_finite()) => Err(
                Error::InvalidInput(format!("variance cap must be positive, got {cap}")),
            ),
            Self::WeightedSum { lambda, .. } if !(lambda > 0.0 && lambda.is_finite()) => Err(
                Error::InvalidInput(format!("risk aversion must be positive, got {lambda}")),
            ),
            Self::Percentile { fraction } if !(fraction > 0.0 && fraction <= 1.0) => Err(
                Error::InvalidInput(format!("fraction must lie in (0, 1], got {fraction}")),
            ),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for BenchmarkTechnique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkTechnique {
    type Err = Error;

    /// Parses a technique name with default parameters.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounded-risk" => Ok(Self::bounded_risk()),
            "weighted-sum" => Ok(Self::weighted_sum()),
            "sharpe" => Ok(Self::Sharpe),
            "percentile" => Ok(Self::percentile()),
            "ideal" => Ok(Self::Ideal),
            other => Err(Error::InvalidInput(format!(
                "unknown technique {other:?} (expected bounded-risk, weighted-sum, sharpe, percentile or ideal)"
            ))),
        }
    }
}

/// A benchmark portfolio together with its variance and return under the
/// regime it was computed for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Benchmark {
    pub portfolio: Portfolio,
    pub variance: f64,
    pub ret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkEntry {
    pub label: String,
    #[serde(flatten)]
    pub benchmark: Benchmark,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSet {
    pub technique: BenchmarkTechnique,
    /// One entry per regime, in uncertainty-set order.
    pub entries: Vec<BenchmarkEntry>,
}

impl BenchmarkSet {
    pub fn get(&self, label: &str) -> Option<&Benchmark> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .map(|e| &e.benchmark)
    }

    /// Benchmark variance for a regime.
    pub fn variance(&self, label: &str) -> Option<f64> {
        self.get(label).map(|b| b.variance)
    }

    /// Builds a set from externally known benchmark variances, e.g. for
    /// regret evaluation without portfolios.
    pub fn from_parts(technique: BenchmarkTechnique, entries: Vec<BenchmarkEntry>) -> Self {
        Self { technique, entries }
    }
}

/// Computes the benchmark of one regime.
pub fn compute_benchmark(
    technique: &BenchmarkTechnique,
    mu: &[f64],
    scenario: &RegimeScenario,
    config: &SolverConfig,
) -> Result<Benchmark> {
    technique.validate()?;
    let cov = scenario.cov();
    if mu.len() != scenario.n_assets() {
        return Err(Error::DimensionMismatch {
            expected: scenario.n_assets(),
            found: mu.len(),
        });
    }
    let report = match *technique {
        BenchmarkTechnique::BoundedRisk { cap } => {
            max_return_with_variance_cap(mu, cov, cap, config)?
        }
        BenchmarkTechnique::WeightedSum { lambda, sign_mode } => {
            weighted_sum_optimum(mu, cov, lambda, sign_mode, config)?
        }
        BenchmarkTechnique::Sharpe => max_sharpe_dinkelbach(mu, cov, config)?,
        BenchmarkTechnique::Percentile { fraction } => {
            let cap = percentile_cap(cov, fraction, config)?;
            max_return_with_variance_cap(mu, cov, cap, config)?
        }
        BenchmarkTechnique::Ideal => min_variance(cov, config)?,
    };
    let portfolio = report.x;
    Ok(Benchmark {
        variance: quad_form(cov, portfolio.weights()),
        ret: dot(mu, portfolio.weights()),
        portfolio,
    })
}

/// `min + fraction * (max - min)` over the attainable variance range.
pub fn percentile_cap(
    cov: &nalgebra::DMatrix<f64>,
    fraction: f64,
    config: &SolverConfig,
) -> Result<f64> {
    let v_min = min_variance(cov, config)?.objective_value;
    let (v_max, _) = max_variance_over_simplex(cov);
    Ok(v_min + fraction * (v_max - v_min))
}

/// One benchmark per regime. Fails on the first regime (in set order) whose
/// benchmark cannot be computed, naming it.
pub fn compute_benchmark_set(
    technique: &BenchmarkTechnique,
    universe: &AssetUniverse,
    uncertainty: &UncertaintySet,
    config: &SolverConfig,
) -> Result<BenchmarkSet> {
    technique.validate()?;
    let results: Vec<Result<BenchmarkEntry>> = uncertainty
        .scenarios()
        .par_iter()
        .map(|s| {
            compute_benchmark(technique, universe.mu(), s, config)
                .map(|benchmark| BenchmarkEntry {
                    label: s.label().to_string(),
                    benchmark,
                })
                .map_err(|e| e.in_scenario(s.label()))
        })
        .collect();
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(BenchmarkSet {
        technique: *technique,
        entries,
    })
}
