//! Domain types for the bi-objective mean-variance problem and the
//! elementary functionals on them.
//!
//! Everything here uses the (maximize return, minimize risk) orientation.
//! The textbook form `min (-f_mu(x), f_sigma(x))` over the simplex is the
//! same problem with the first objective negated.

use std::cmp::Ordering;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weight-sum tolerance for simplex membership.
pub const SIMPLEX_SUM_TOL: f64 = 1e-8;
/// Most negative weight accepted (and clamped to zero).
pub const NEGATIVE_WEIGHT_TOL: f64 = 1e-10;
/// Minimum eigenvalue accepted by the positive-semidefinite check.
pub const PSD_TOL: f64 = 1e-8;
/// Tolerance on `|a_ij - a_ji|` for input matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Asset names together with their expected returns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssetUniverse {
    names: Vec<String>,
    mu: Vec<f64>,
}

impl AssetUniverse {
    pub fn new(names: Vec<String>, mu: Vec<f64>) -> Result<Self> {
        if names.len() != mu.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                found: mu.len(),
            });
        }
        if mu.len() < 2 {
            return Err(Error::Validation(format!(
                "at least two assets required, found {}",
                mu.len()
            )));
        }
        if let Some(i) = mu.iter().position(|m| !m.is_finite()) {
            return Err(Error::Validation(format!("mu[{i}] is not finite")));
        }
        Ok(Self { names, mu })
    }

    /// Universe with generated names `A1..An`.
    pub fn from_returns(mu: Vec<f64>) -> Result<Self> {
        let names = (1..=mu.len()).map(|i| format!("A{i}")).collect();
        Self::new(names, mu)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn max_return(&self) -> f64 {
        self.mu.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// A labeled market regime: per-asset volatilities, correlations and the
/// covariance matrix assembled from them.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeScenario {
    label: String,
    stds: Vec<f64>,
    corr: DMatrix<f64>,
    cov: DMatrix<f64>,
}

impl RegimeScenario {
    /// Validates the correlation matrix and assembles the covariance.
    pub fn new(label: impl Into<String>, stds: Vec<f64>, corr: DMatrix<f64>) -> Result<Self> {
        let label = label.into();
        validate_correlation(&corr)?;
        // PSD with unit diagonal already bounds the entries; checking it
        // first reports the more informative error
        let cov = assemble_covariance(&stds, &corr)?;
        check_correlation_range(&corr)?;
        Ok(Self {
            label,
            stds,
            corr,
            cov,
        })
    }

    /// Scenario given directly by a covariance matrix. Volatilities and
    /// correlations are backed out of it.
    pub fn from_covariance(label: impl Into<String>, cov: DMatrix<f64>) -> Result<Self> {
        let n = cov.nrows();
        if cov.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: cov.ncols(),
            });
        }
        check_symmetric(&cov)?;
        let stds: Vec<f64> = (0..n).map(|i| cov[(i, i)].max(0.0).sqrt()).collect();
        if let Some(i) = stds.iter().position(|&s| s <= 0.0) {
            return Err(Error::Validation(format!(
                "covariance diagonal entry {i} is not positive"
            )));
        }
        let corr = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                1.0
            } else {
                cov[(i.min(j), i.max(j))] / (stds[i] * stds[j])
            }
        });
        let cov = DMatrix::from_fn(n, n, |i, j| cov[(i.min(j), i.max(j))]);
        check_psd(&cov)?;
        Ok(Self {
            label: label.into(),
            stds,
            corr,
            cov,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    pub fn corr(&self) -> &DMatrix<f64> {
        &self.corr
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn n_assets(&self) -> usize {
        self.stds.len()
    }

    /// Same matrices under another label.
    pub fn relabeled(&self, label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            ..self.clone()
        }
    }
}

/// Nonempty finite set of covariance scenarios sharing one asset count.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintySet {
    scenarios: Vec<RegimeScenario>,
}

impl UncertaintySet {
    pub fn new(scenarios: Vec<RegimeScenario>) -> Result<Self> {
        let first = scenarios
            .first()
            .ok_or_else(|| Error::Validation("uncertainty set is empty".into()))?;
        let n = first.n_assets();
        for s in &scenarios {
            if s.n_assets() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n_assets(),
                });
            }
        }
        for (i, s) in scenarios.iter().enumerate() {
            if scenarios[..i].iter().any(|t| t.label() == s.label()) {
                return Err(Error::Validation(format!(
                    "duplicate scenario label {:?}",
                    s.label()
                )));
            }
        }
        Ok(Self { scenarios })
    }

    pub fn scenarios(&self) -> &[RegimeScenario] {
        &self.scenarios
    }

    pub fn labels(&self) -> Vec<&str> {
        self.scenarios.iter().map(|s| s.label()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&RegimeScenario> {
        self.scenarios.iter().find(|s| s.label() == label)
    }

    pub fn n_assets(&self) -> usize {
        self.scenarios[0].n_assets()
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RegimeScenario> {
        self.scenarios.iter()
    }
}

/// Fully invested long-only weight vector (a point of the standard simplex).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Portfolio(Vec<f64>);

impl Portfolio {
    /// Checks simplex membership. Round-off negatives down to
    /// `-NEGATIVE_WEIGHT_TOL` are clamped to zero.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("empty weight vector".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::InvalidInput(format!("weight {i} is not finite")));
        }
        if let Some(i) = weights.iter().position(|&w| w < -NEGATIVE_WEIGHT_TOL) {
            return Err(Error::InvalidInput(format!(
                "weight {i} is negative ({})",
                weights[i]
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOL {
            return Err(Error::InvalidInput(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self(weights.into_iter().map(|w| w.max(0.0)).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn vertex(n: usize, i: usize) -> Self {
        let mut w = vec![0.0; n];
        w[i] = 1.0;
        Self(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Portfolio {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Portfolio::new(v)
    }
}

impl From<Portfolio> for Vec<f64> {
    fn from(p: Portfolio) -> Self {
        p.0
    }
}

/// A point in (return, risk) space. `risk` is a variance or a regret
/// depending on context; both are minimized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectivePoint {
    pub ret: f64,
    pub risk: f64,
}

impl ObjectivePoint {
    pub fn new(ret: f64, risk: f64) -> Self {
        Self { ret, risk }
    }
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (m[(i, j)] - m[(j, i)]).abs();
            if d > SYMMETRY_TOL || !d.is_finite() {
                return Err(Error::NonSymmetric {
                    row: i,
                    col: j,
                    deviation: d,
                });
            }
        }
    }
    Ok(())
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Fails with [`Error::NotPositiveSemidefinite`] when the smallest
/// eigenvalue is below `-PSD_TOL`.
pub fn check_psd(m: &DMatrix<f64>) -> Result<()> {
    let min_eigenvalue = min_eigenvalue(m);
    if min_eigenvalue < -PSD_TOL || !min_eigenvalue.is_finite() {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
    }
    Ok(())
}

/// Checks shape, unit diagonal and symmetry of a correlation matrix.
pub fn validate_correlation(corr: &DMatrix<f64>) -> Result<()> {
    let n = corr.nrows();
    if corr.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: corr.ncols(),
        });
    }
    for i in 0..n {
        if (corr[(i, i)] - 1.0).abs() > SYMMETRY_TOL {
            return Err(Error::Validation(format!(
                "correlation matrix must have unit diagonal (entry ({i}, {i}) = {})",
                corr[(i, i)]
            )));
        }
    }
    check_symmetric(corr)
}

fn check_correlation_range(corr: &DMatrix<f64>) -> Result<()> {
    let n = corr.nrows();
    if let Some((k, v)) = corr
        .iter()
        .enumerate()
        .find(|(_, v)| !(-1.0..=1.0).contains(*v))
    {
        return Err(Error::Validation(format!(
            "correlation entry ({}, {}) = {v} outside [-1, 1]",
            k % n,
            k / n
        )));
    }
    Ok(())
}

/// `cov_ij = corr_ij * stds_i * stds_j`, computed on the upper triangle and
/// mirrored so the result is exactly symmetric.
pub fn assemble_covariance(stds: &[f64], corr: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = stds.len();
    if corr.nrows() != n || corr.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if corr.nrows() != n {
                corr.nrows()
            } else {
                corr.ncols()
            },
        });
    }
    if let Some(i) = stds.iter().position(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::Validation(format!(
            "standard deviation {i} must be positive, got {}",
            stds[i]
        )));
    }
    check_symmetric(corr)?;
    let mut cov = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = corr[(i, j)] * stds[i] * stds[j];
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    check_psd(&cov)?;
    Ok(cov)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x' M x` without dimension checks.
pub(crate) fn quad_form(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for j in 0..n {
        if x[j] == 0.0 {
            continue;
        }
        let mut col = 0.0;
        for i in 0..n {
            col += m[(i, j)] * x[i];
        }
        acc += col * x[j];
    }
    acc
}

/// `M x` without dimension checks.
pub(crate) fn mat_vec(m: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; m.nrows()];
    for j in 0..n {
        let xj = x[j];
        if xj == 0.0 {
            continue;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o += m[(i, j)] * xj;
        }
    }
    out
}

/// Expected portfolio return `x' mu`.
pub fn portfolio_return(x: &Portfolio, mu: &[f64]) -> Result<f64> {
    if x.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: mu.len(),
            found: x.len(),
        });
    }
    Ok(dot(x.weights(), mu))
}

/// Portfolio variance `x' cov x`.
pub fn portfolio_variance(x: &Portfolio, cov: &DMatrix<f64>) -> Result<f64> {
    if cov.nrows() != x.len() || cov.ncols() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: cov.nrows(),
            found: x.len(),
        });
    }
    Ok(quad_form(cov, x.weights()))
}

/// Pareto dominance with return maximized and risk minimized.
pub fn dominates(p: &ObjectivePoint, q: &ObjectivePoint) -> bool {
    p.ret >= q.ret && p.risk <= q.risk && (p.ret > q.ret || p.risk < q.risk)
}

/// Keeps exactly the items whose objective point is not dominated by any
/// other item's. Input order is preserved; among items with identical
/// objective points only the first is kept.
pub fn nondominated_filter<T>(items: Vec<T>, objective: impl Fn(&T) -> ObjectivePoint) -> Vec<T> {
    let points: Vec<ObjectivePoint> = items.iter().map(&objective).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (points[a], points[b]);
        q.ret
            .partial_cmp(&p.ret)
            .unwrap_or(Ordering::Equal)
            .then(p.risk.partial_cmp(&q.risk).unwrap_or(Ordering::Equal))
            .then(a.cmp(&b))
    });

    // Sweep by descending return; within a block of equal return only the
    // lowest risk can survive, and only if it beats every higher return.
    let mut keep = vec![false; points.len()];
    let mut best_risk = f64::INFINITY;
    let mut k = 0;
    while k < order.len() {
        let ret = points[order[k]].ret;
        let block_risk = points[order[k]].risk;
        if block_risk < best_risk {
            keep[order[k]] = true;
        }
        let mut end = k + 1;
        while end < order.len() && points[order[end]].ret == ret {
            end += 1;
        }
        best_risk = best_risk.min(block_risk);
        k = end;
    }

    items
        .into_iter()
        .zip(keep)
        .filter_map(|(item, kept)| kept.then_some(item))
        .collect()
}
