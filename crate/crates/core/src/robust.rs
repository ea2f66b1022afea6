//! Benchmark regret and the robust bi-objective problem
//!
//! ```text
//! maximize   mu'x
//! minimize   max over regimes s of | x' cov_s x - c_s |
//! over the simplex,
//! ```
//!
//! where `c_s` is the variance of regime `s`'s benchmark. The second
//! objective is nonconvex (the `c_s - x'cov_s x` branch is concave), so each
//! front point is found by multi-start local search under an
//! epsilon-constraint on return: the max is smoothed by log-sum-exp, the
//! temperature driven toward zero, and every start keeps the best point it
//! visits under the exact objective.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmark::BenchmarkSet;
use crate::error::{Error, Result};
use crate::model::{dot, mat_vec, nondominated_filter, quad_form, ObjectivePoint, Portfolio, UncertaintySet};
use crate::pareto::{grid_between, min_variance_with_return_floor};
use crate::simplex::{best_return_portfolio, project, solve_qp, Quadratic, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegretMode {
    /// `|x'cov x - c|`: deviations on either side of the benchmark count.
    #[default]
    Absolute,
    /// `x'cov x - c`: only excess variance counts.
    Signed,
}

impl RegretMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegretMode::Absolute => "absolute",
            RegretMode::Signed => "signed",
        }
    }

    fn apply(&self, deviation: f64) -> f64 {
        match self {
            RegretMode::Absolute => deviation.abs(),
            RegretMode::Signed => deviation,
        }
    }
}

impl std::str::FromStr for RegretMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "absolute" => Ok(Self::Absolute),
            "signed" => Ok(Self::Signed),
            other => Err(Error::InvalidInput(format!(
                "unknown regret mode {other:?} (expected absolute or signed)"
            ))),
        }
    }
}

/// Regimes, their benchmark variances and the regret form.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretSpec {
    uncertainty: UncertaintySet,
    benchmarks: BenchmarkSet,
    /// Benchmark variance per regime, aligned with `uncertainty`.
    references: Vec<f64>,
    mode: RegretMode,
}

impl RegretSpec {
    pub fn new(uncertainty: UncertaintySet, benchmarks: BenchmarkSet, mode: RegretMode) -> Result<Self> {
        let references = uncertainty
            .iter()
            .map(|s| {
                benchmarks.variance(s.label()).ok_or_else(|| {
                    Error::KeyMismatch(format!("no benchmark for regime {:?}", s.label()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            uncertainty,
            benchmarks,
            references,
            mode,
        })
    }

    pub fn uncertainty(&self) -> &UncertaintySet {
        &self.uncertainty
    }

    pub fn benchmarks(&self) -> &BenchmarkSet {
        &self.benchmarks
    }

    pub fn mode(&self) -> RegretMode {
        self.mode
    }

    pub fn references(&self) -> &[f64] {
        &self.references
    }

    fn n_assets(&self) -> usize {
        self.uncertainty.n_assets()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRegret {
    pub label: String,
    pub variance: f64,
    /// Regret contribution of this regime under the spec's mode.
    pub regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretEvaluation {
    pub value: f64,
    pub argmax_scenario: String,
    pub per_scenario: Vec<ScenarioRegret>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustFrontPoint {
    pub x: Portfolio,
    pub ret: f64,
    pub regret: f64,
    pub argmax_scenario: String,
    pub per_scenario: Vec<ScenarioRegret>,
    /// Return floor that produced this point.
    pub target_r: f64,
    /// False when the winning run's last stage stopped on its iteration limit.
    pub converged: bool,
}

impl RobustFrontPoint {
    pub fn objective(&self) -> ObjectivePoint {
        ObjectivePoint::new(self.ret, self.regret)
    }
}

/// Settings for [`solve_robust_point`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobustConfig {
    /// Inner solver used for epsilon-constraint starts.
    pub solver: SolverConfig,
    /// Number of random Dirichlet starts.
    pub random_starts: usize,
    /// Number of additional starts taken from a grid scan of every two- and
    /// three-asset face of the simplex.
    pub face_starts: usize,
    /// Projected-gradient iteration limit per smoothing stage and start.
    pub iterations: usize,
}

impl Default for RobustConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            random_starts: 8,
            face_starts: 8,
            iterations: 300,
        }
    }
}

/// Worst-case benchmark regret of `x` with its per-regime breakdown. Ties
/// for the maximum resolve to the first regime in set order.
pub fn regret_risk(x: &Portfolio, spec: &RegretSpec) -> Result<RegretEvaluation> {
    if x.len() != spec.n_assets() {
        return Err(Error::DimensionMismatch {
            expected: spec.n_assets(),
            found: x.len(),
        });
    }
    let per_scenario: Vec<ScenarioRegret> = spec
        .uncertainty
        .iter()
        .zip(&spec.references)
        .map(|(s, &c)| {
            let variance = quad_form(s.cov(), x.weights());
            ScenarioRegret {
                label: s.label().to_string(),
                variance,
                regret: spec.mode.apply(variance - c),
            }
        })
        .collect();
    let mut best = 0;
    for (k, s) in per_scenario.iter().enumerate() {
        if s.regret > per_scenario[best].regret {
            best = k;
        }
    }
    Ok(RegretEvaluation {
        value: per_scenario[best].regret,
        argmax_scenario: per_scenario[best].label.clone(),
        per_scenario,
    })
}

/// Worst-case regret `max_s (value_s - reference_s)` of any objective over a
/// finite scenario set. The reference is a scenario optimum or a benchmark
/// value; both maps must cover the same scenarios.
pub fn generic_regret(values: &BTreeMap<String, f64>, references: &BTreeMap<String, f64>) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::KeyMismatch("no scenarios".into()));
    }
    if values.len() != references.len() || values.keys().any(|k| !references.contains_key(k)) {
        let a: Vec<&String> = values.keys().collect();
        let b: Vec<&String> = references.keys().collect();
        return Err(Error::KeyMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(values
        .iter()
        .map(|(k, v)| v - references[k])
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Objective value and active regime for raw weights.
fn regret_value(x: &[f64], spec: &RegretSpec) -> (f64, usize, f64) {
    let mut best = (f64::NEG_INFINITY, 0, 0.0);
    for (k, (s, &c)) in spec.uncertainty.iter().zip(&spec.references).enumerate() {
        let dev = quad_form(s.cov(), x) - c;
        let val = spec.mode.apply(dev);
        if val > best.0 {
            best = (val, k, dev);
        }
    }
    best
}

/// Feasible set `{x in simplex : mu'x >= r}`.
struct FloorSet<'a> {
    mu: &'a [f64],
    r: f64,
    /// A feasible point used to repair residual infeasibility.
    anchor: Vec<f64>,
}

impl<'a> FloorSet<'a> {
    fn contains(&self, x: &[f64]) -> bool {
        dot(self.mu, x) >= self.r
    }

    fn shifted(&self, v: &[f64], theta: f64) -> Vec<f64> {
        project(&v.iter().zip(self.mu).map(|(a, m)| a + theta * m).collect::<Vec<_>>())
    }

    /// Euclidean projection: `P(v + theta mu)` onto the simplex with the
    /// smallest `theta >= 0` meeting the floor. The return of the shifted
    /// projection is nondecreasing and piecewise linear in `theta`, so a
    /// bisection bracket is finished by interpolating on its last piece.
    fn project(&self, v: &[f64]) -> Vec<f64> {
        let first = project(v);
        if self.contains(&first) {
            return first;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut x_hi = self.shifted(v, hi);
        while !self.contains(&x_hi) {
            lo = hi;
            hi *= 2.0;
            if hi > 1e15 {
                return self.anchor.clone();
            }
            x_hi = self.shifted(v, hi);
        }
        let mut x_lo = self.shifted(v, lo);
        for _ in 0..200 {
            if hi - lo <= 1e-15 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let x_mid = self.shifted(v, mid);
            if self.contains(&x_mid) {
                hi = mid;
                x_hi = x_mid;
            } else {
                lo = mid;
                x_lo = x_mid;
            }
        }
        let (r_lo, r_hi) = (dot(self.mu, &x_lo), dot(self.mu, &x_hi));
        let x = if r_hi > r_lo {
            let t = ((self.r - r_lo) / (r_hi - r_lo)).clamp(0.0, 1.0);
            x_lo.iter().zip(&x_hi).map(|(a, b)| a + t * (b - a)).collect()
        } else {
            x_hi
        };
        self.repair(x)
    }

    /// Moves a simplex point toward the anchor just far enough to clear the
    /// floor. Both lie on the simplex, so the result does too.
    fn repair(&self, y: Vec<f64>) -> Vec<f64> {
        let ry = dot(self.mu, &y);
        if ry >= self.r {
            return y;
        }
        let ra = dot(self.mu, &self.anchor);
        let t = if ra > ry {
            ((self.r - ry) / (ra - ry)).clamp(0.0, 1.0)
        } else {
            1.0
        };
        let mut z: Vec<f64> = y
            .iter()
            .zip(&self.anchor)
            .map(|(a, b)| (a + t * (b - a)).max(0.0))
            .collect();
        let s: f64 = z.iter().sum();
        z.iter_mut().for_each(|v| *v /= s);
        if dot(self.mu, &z) < self.r {
            // rounding left us a hair short; the anchor itself is feasible
            return self.anchor.clone();
        }
        z
    }
}

/// Log-sum-exp smoothing of the worst-case regret at temperature `tau`.
/// Overestimates the regret by at most `tau * ln(pieces)`.
struct Smoothed<'a> {
    spec: &'a RegretSpec,
}

impl Smoothed<'_> {
    fn eval(&self, x: &[f64], tau: f64) -> (f64, Vec<f64>) {
        let spec = self.spec;
        let mut pieces: Vec<(f64, f64, usize)> = Vec::with_capacity(2 * spec.references.len());
        let mut sx: Vec<Vec<f64>> = Vec::with_capacity(spec.references.len());
        for (k, (s, &c)) in spec.uncertainty.iter().zip(&spec.references).enumerate() {
            let v = mat_vec(s.cov(), x);
            let dev = dot(x, &v) - c;
            sx.push(v);
            pieces.push((dev, 1.0, k));
            if spec.mode == RegretMode::Absolute {
                pieces.push((-dev, -1.0, k));
            }
        }
        let m = pieces.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = pieces.iter().map(|p| ((p.0 - m) / tau).exp()).collect();
        let z: f64 = weights.iter().sum();
        let mut grad = vec![0.0; x.len()];
        for (w, &(_, sign, k)) in weights.iter().zip(&pieces) {
            let coef = 2.0 * sign * w / z;
            for (g, v) in grad.iter_mut().zip(&sx[k]) {
                *g += coef * v;
            }
        }
        (m + tau * z.ln(), grad)
    }
}

#[derive(Clone)]
struct Candidate {
    x: Vec<f64>,
    regret: f64,
    ret: f64,
}

/// Lower regret first, then higher return, then lexicographically smaller
/// weights.
fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.regret.total_cmp(&b.regret) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => match b.ret.total_cmp(&a.ret) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a
                .x
                .iter()
                .zip(&b.x)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| *o != Ordering::Equal)
                == Some(Ordering::Less),
        },
    }
}

fn candidate(x: Vec<f64>, mu: &[f64], spec: &RegretSpec) -> Candidate {
    Candidate {
        ret: dot(mu, &x),
        regret: regret_value(&x, spec).0,
        x,
    }
}

/// Minimizes the smoothed regret from `start` for a decreasing sequence of
/// temperatures, each by spectral projected gradient with a nonmonotone
/// line search. Returns the best point visited (by exact regret) and
/// whether the final stage reached a negligible projected step.
fn smoothed_run(
    start: Vec<f64>,
    mu: &[f64],
    spec: &RegretSpec,
    set: &FloorSet,
    cfg: &RobustConfig,
) -> (Candidate, bool) {
    const MEMORY: usize = 10;
    const ARMIJO: f64 = 1e-4;
    let smooth = Smoothed { spec };
    let scale = spec
        .uncertainty
        .iter()
        .map(|s| {
            let c = s.cov();
            (0..c.nrows()).map(|i| c[(i, i)]).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut x = start;
    let mut best = candidate(x.clone(), mu, spec);
    if best.regret <= 0.0 && spec.mode == RegretMode::Absolute {
        return (best, true);
    }
    let tau_end = 1e-11 * scale;
    let mut tau = (0.1 * best.regret.abs()).max(1e-6 * scale);
    let mut settled;
    let mut alpha = 0.0;
    loop {
        let (mut f, mut g) = smooth.eval(&x, tau);
        if alpha == 0.0 {
            let gmax = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            alpha = if gmax > 0.0 { 1e-2 / gmax } else { 1.0 };
        }
        let mut history = std::collections::VecDeque::from([f]);
        settled = false;
        for _ in 0..cfg.iterations {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - alpha * b).collect();
            let d: Vec<f64> = set.project(&trial).iter().zip(&x).map(|(p, a)| p - a).collect();
            if d.iter().fold(0.0f64, |a, v| a.max(v.abs())) <= 1e-13 {
                settled = true;
                break;
            }
            let gd = dot(&g, &d);
            let f_ref = history.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut lambda = 1.0;
            let (xn, fn_, gn) = loop {
                let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| (a + lambda * b).max(0.0)).collect();
                let (fv, gv) = smooth.eval(&xn, tau);
                if fv <= f_ref + ARMIJO * lambda * gd || lambda < 1e-12 {
                    break (xn, fv, gv);
                }
                lambda *= 0.5;
            };
            let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy = dot(&s, &y);
            alpha = if sy > 0.0 { (dot(&s, &s) / sy).clamp(1e-16, 1e16) } else { 1e16 };
            x = xn;
            f = fn_;
            g = gn;
            history.push_back(f);
            if history.len() > MEMORY {
                history.pop_front();
            }
            if set.contains(&x) {
                let cand = candidate(x.clone(), mu, spec);
                if better(&cand, &best) {
                    best = cand;
                }
            }
            if lambda < 1e-12 {
                break;
            }
        }
        if tau <= tau_end {
            break;
        }
        tau = (tau * 0.1).max(tau_end);
    }
    (best, settled)
}

/// Grid resolutions of the face scans.
const EDGE_GRID: usize = 256;
const TRIANGLE_GRID: usize = 24;

/// Best feasible points found by scanning every two- and three-asset face
/// of the simplex on a grid, one per face, `count` faces in order of
/// increasing regret. Low-regret portfolios tend to be sparse, and on a
/// small face the regret only needs a few covariance entries per regime.
fn face_starts(mu: &[f64], spec: &RegretSpec, r: f64, count: usize) -> Vec<Vec<f64>> {
    let n = mu.len();
    if count == 0 || n < 2 {
        return Vec::new();
    }
    let covs: Vec<_> = spec.uncertainty.iter().map(|s| s.cov()).collect();
    let regret_on = |idx: &[usize], w: &[f64]| -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (m, &c) in covs.iter().zip(&spec.references) {
            let mut v = 0.0;
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    v += w[a] * w[b] * m[(i, j)];
                }
            }
            worst = worst.max(spec.mode.apply(v - c));
        }
        worst
    };
    let feasible = |idx: &[usize], w: &[f64]| idx.iter().zip(w).map(|(&i, wi)| wi * mu[i]).sum::<f64>() >= r;

    let mut found: Vec<(f64, Vec<usize>, Vec<f64>)> = Vec::new();
    let consider = |idx: Vec<usize>, w: Vec<f64>, best: &mut Option<(f64, Vec<usize>, Vec<f64>)>| {
        if !feasible(&idx, &w) {
            return;
        }
        let val = regret_on(&idx, &w);
        if best.as_ref().is_none_or(|b| val < b.0) {
            *best = Some((val, idx, w));
        }
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let mut best = None;
            for k in 0..=EDGE_GRID {
                let t = k as f64 / EDGE_GRID as f64;
                consider(vec![i, j], vec![t, 1.0 - t], &mut best);
            }
            found.extend(best);
            for l in (j + 1)..n {
                let mut best = None;
                let g = TRIANGLE_GRID;
                for a in 1..g {
                    for b in 1..(g - a) {
                        let (wa, wb) = (a as f64 / g as f64, b as f64 / g as f64);
                        consider(vec![i, j, l], vec![wa, wb, 1.0 - wa - wb], &mut best);
                    }
                }
                found.extend(best);
            }
        }
    }
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    found
        .into_iter()
        .take(count)
        .map(|(_, idx, w)| {
            let mut x = vec![0.0; n];
            for (i, wi) in idx.into_iter().zip(w) {
                x[i] = wi;
            }
            x
        })
        .collect()
}

fn dirichlet_starts(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let e: Vec<f64> = (0..n).map(|_| Exp1.sample(&mut rng)).collect();
            let s: f64 = e.iter().sum();
            e.into_iter().map(|v: f64| v / s).collect()
        })
        .collect()
}

/// Approximately minimizes the worst-case benchmark regret subject to
/// `mu'x >= r`.
///
/// Starts, in order: every benchmark portfolio, every regime's
/// minimum-variance portfolio at floor `r`, the `face_starts` best
/// sparse portfolios from a face scan, and `random_starts` Dirichlet(1)
/// draws from a generator seeded with `config.solver.seed`; each is
/// projected onto the feasible set. The best point visited by any run is
/// returned. Not reaching stationarity is reported through
/// [`RobustFrontPoint::converged`], never as an error.
pub fn solve_robust_point(mu: &[f64], spec: &RegretSpec, r: f64, config: &RobustConfig) -> Result<RobustFrontPoint> {
    config.solver.validate()?;
    let n = spec.n_assets();
    if mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mu.len(),
        });
    }
    let max_mu = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if r > max_mu + 1e-12 || !r.is_finite() {
        return Err(Error::InfeasibleReturn {
            target: r,
            max_return: max_mu,
        });
    }

    let anchor = {
        // lowest-variance best-return portfolio of the first regime
        let cov = spec.uncertainty.scenarios()[0].cov();
        best_return_portfolio(mu, cov, &config.solver)
    };
    let set = FloorSet {
        mu,
        r: r.min(dot(mu, &anchor)),
        anchor,
    };

    let mut starts: Vec<Vec<f64>> = Vec::new();
    for e in &spec.benchmarks.entries {
        starts.push(set.project(e.benchmark.portfolio.weights()));
    }
    for s in spec.uncertainty.iter() {
        let x = match min_variance_with_return_floor(mu, s.cov(), set.r, &config.solver) {
            Ok(rep) => set.repair(rep.x.into_inner()),
            Err(Error::NotConverged(_)) => {
                // fall back to the unconstrained minimizer, made feasible
                let out = solve_qp(&Quadratic::new(s.cov(), 1.0, None, 1.0), None, &config.solver);
                set.project(&out.x)
            }
            Err(e) => return Err(e),
        };
        starts.push(x);
    }
    for e in face_starts(mu, spec, set.r, config.face_starts) {
        starts.push(set.repair(e));
    }
    for d in dirichlet_starts(n, config.random_starts, config.solver.seed) {
        starts.push(set.project(&d));
    }

    let mut best: Option<Candidate> = None;
    let mut converged = false;
    for start in starts {
        let (cand, settled) = smoothed_run(start, mu, spec, &set, config);
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
            converged = settled;
        }
    }
    let best = best.expect("at least one start");
    let x = Portfolio::new(best.x)?;
    let eval = regret_risk(&x, spec)?;
    Ok(RobustFrontPoint {
        ret: best.ret,
        regret: eval.value,
        argmax_scenario: eval.argmax_scenario,
        per_scenario: eval.per_scenario,
        target_r: r,
        converged,
        x,
    })
}

/// Return targets for the robust sweep: from the lowest minimum-variance
/// return over all regimes up to the best asset return.
pub fn robust_return_grid(mu: &[f64], spec: &RegretSpec, n_points: usize, config: &SolverConfig) -> Result<Vec<f64>> {
    let r_lo = spec
        .uncertainty
        .iter()
        .map(|s| {
            let out = solve_qp(&Quadratic::new(s.cov(), 1.0, None, 1.0), None, config);
            dot(mu, &out.x)
        })
        .fold(f64::INFINITY, f64::min);
    let r_hi = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    grid_between(r_lo, r_hi, n_points)
}

/// Robust front: one [`solve_robust_point`] per target of
/// [`robust_return_grid`], each replaced by the solution of a higher target
/// when that one is better, filtered to the points nondominated in
/// (return, regret) and sorted by return.
pub fn trace_robust_front(
    mu: &[f64],
    spec: &RegretSpec,
    n_points: usize,
    config: &RobustConfig,
) -> Result<Vec<RobustFrontPoint>> {
    let grid = robust_return_grid(mu, spec, n_points, &config.solver)?;
    let mut points = grid
        .par_iter()
        .map(|&r| solve_robust_point(mu, spec, r, config))
        .collect::<Result<Vec<_>>>()?;
    // a solution for a higher floor is feasible for every lower one
    points.sort_by(|a, b| b.target_r.total_cmp(&a.target_r));
    for k in 1..points.len() {
        let prev = &points[k - 1];
        let cur = &points[k];
        let (pc, cc) = (
            Candidate { x: prev.x.weights().to_vec(), regret: prev.regret, ret: prev.ret },
            Candidate { x: cur.x.weights().to_vec(), regret: cur.regret, ret: cur.ret },
        );
        if better(&pc, &cc) {
            points[k] = RobustFrontPoint {
                target_r: points[k].target_r,
                ..points[k - 1].clone()
            };
        }
    }
    points.sort_by(|a, b| a.ret.total_cmp(&b.ret));
    Ok(nondominated_filter(points, RobustFrontPoint::objective))
}
