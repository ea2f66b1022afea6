//! Efficient fronts of the mean-variance problem for a single covariance
//! regime, traced by the epsilon-constraint method: minimize variance
//! subject to a return floor, with the floor swept over an even grid.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dot, nondominated_filter, quad_form, ObjectivePoint, Portfolio, RegimeScenario};
use crate::simplex::{best_return_portfolio, solve_qp, Quadratic, SolveReport, SolverConfig};

/// Default number of return targets per front.
pub const DEFAULT_N_POINTS: usize = 60;

/// Return floors below `max mu + FLOOR_SLACK` are considered attainable.
const FLOOR_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontPoint {
    pub x: Portfolio,
    pub ret: f64,
    /// Variance for scenario fronts, regret for robust fronts.
    pub risk: f64,
    /// Return floor that produced this point.
    pub target_r: f64,
}

impl FrontPoint {
    pub fn objective(&self) -> ObjectivePoint {
        ObjectivePoint::new(self.ret, self.risk)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoFront {
    pub label: String,
    /// Sorted by return, ascending.
    pub points: Vec<FrontPoint>,
    pub nondominated: bool,
    /// Grid targets whose subproblem failed and were dropped.
    pub skipped: usize,
}

impl ParetoFront {
    pub fn objectives(&self) -> Vec<ObjectivePoint> {
        self.points.iter().map(FrontPoint::objective).collect()
    }

    /// Variance of the front at return `r`, linearly interpolated between
    /// neighbouring points. `None` outside the front's return range.
    pub fn interpolate_risk(&self, r: f64) -> Option<f64> {
        let pts = &self.points;
        let first = pts.first()?;
        let last = pts.last()?;
        if r < first.ret - 1e-12 || r > last.ret + 1e-12 {
            return None;
        }
        if pts.len() == 1 || r <= first.ret {
            return Some(first.risk);
        }
        let k = pts.partition_point(|p| p.ret < r);
        if k == 0 {
            return Some(first.risk);
        }
        if k >= pts.len() {
            return Some(last.risk);
        }
        let (a, b) = (&pts[k - 1], &pts[k]);
        if b.ret - a.ret <= 0.0 {
            return Some(b.risk);
        }
        let t = (r - a.ret) / (b.ret - a.ret);
        Some(a.risk + t * (b.risk - a.risk))
    }
}

fn min_variance_outcome(cov: &DMatrix<f64>, cfg: &SolverConfig) -> Vec<f64> {
    solve_qp(&Quadratic::new(cov, 1.0, None, 1.0), None, cfg).x
}

/// Evenly spaced return targets from the minimum-variance portfolio's return
/// up to the best single-asset return. A degenerate range yields one target.
pub fn return_grid(
    mu: &[f64],
    cov: &DMatrix<f64>,
    n_points: usize,
    config: &SolverConfig,
) -> Result<Vec<f64>> {
    if cov.nrows() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: mu.len(),
            found: cov.nrows(),
        });
    }
    let r_lo = dot(mu, &min_variance_outcome(cov, config));
    let r_hi = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    grid_between(r_lo, r_hi, n_points)
}

pub(crate) fn grid_between(r_lo: f64, r_hi: f64, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 {
        return Err(Error::InvalidInput(format!(
            "at least two grid points required, got {n_points}"
        )));
    }
    if r_hi - r_lo < 1e-12 {
        return Ok(vec![r_hi]);
    }
    let step = (r_hi - r_lo) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|k| {
            if k == n_points - 1 {
                r_hi
            } else {
                r_lo + step * k as f64
            }
        })
        .collect())
}

/// Minimizes `x' cov x` subject to `mu' x >= r` over the simplex.
///
/// If the minimum-variance portfolio already clears the floor it is the
/// answer. Otherwise the floor binds and the multiplier `lambda` in
/// `min x'cov x - lambda * mu'x` is bisected until the return meets `r`.
/// The solution path is affine in `lambda` on each active face, so the
/// final interpolation between the bracketing iterates is exact.
pub fn min_variance_with_return_floor(
    mu: &[f64],
    cov: &DMatrix<f64>,
    r: f64,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let n = mu.len();
    if cov.nrows() != n || cov.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cov.nrows(),
        });
    }
    let max_mu = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if r > max_mu + FLOOR_SLACK || !r.is_finite() {
        return Err(Error::InfeasibleReturn {
            target: r,
            max_return: max_mu,
        });
    }

    let base = solve_qp(&Quadratic::new(cov, 1.0, None, 1.0), None, config);
    let finish = |x: Vec<f64>, iterations: usize, status: &str, trace: Vec<f64>| {
        let value = quad_form(cov, &x);
        Ok(SolveReport {
            x: Portfolio::new(x)?,
            objective_value: value,
            iterations,
            converged: true,
            status: status.to_string(),
            trace,
        })
    };
    if dot(mu, &base.x) >= r {
        return finish(base.x, base.iterations, "return floor slack", base.trace);
    }
    if r >= max_mu - FLOOR_SLACK {
        let x = best_return_portfolio(mu, cov, config);
        return finish(x, base.iterations, "return floor at maximum", Vec::new());
    }

    let solve = |lambda: f64, warm: &[f64]| {
        solve_qp(&Quadratic::new(cov, 1.0, Some(mu), -lambda), Some(warm), config)
    };
    let mut iterations = base.iterations;
    let mut below = (0.0, base.x.clone());
    let mut above: Option<(f64, Vec<f64>)> = None;
    let mut lambda = 1.0;
    for _ in 0..200 {
        let out = solve(lambda, &below.1);
        iterations += out.iterations;
        if dot(mu, &out.x) >= r {
            above = Some((lambda, out.x));
            break;
        }
        below = (lambda, out.x);
        lambda *= 2.0;
    }
    let Some(mut above) = above else {
        return Err(Error::NotConverged(format!(
            "multiplier growth never reached return floor {r}"
        )));
    };

    let mut trace = Vec::new();
    for _ in 0..200 {
        let gap = dot(mu, &above.1) - r;
        if gap <= 1e-13 {
            break;
        }
        let mid = if below.0 > 0.0 {
            (below.0 * above.0).sqrt()
        } else {
            0.5 * above.0
        };
        if !(mid > below.0 && mid < above.0) {
            break;
        }
        let out = solve(mid, &above.1);
        iterations += out.iterations;
        trace = out.trace;
        if dot(mu, &out.x) >= r {
            above = (mid, out.x);
        } else {
            below = (mid, out.x);
        }
    }

    let (r_below, r_above) = (dot(mu, &below.1), dot(mu, &above.1));
    let x = if r_above - r_below > 0.0 {
        let t = ((r - r_below) / (r_above - r_below)).clamp(0.0, 1.0);
        let x: Vec<f64> = below
            .1
            .iter()
            .zip(&above.1)
            .map(|(a, b)| (a + t * (b - a)).max(0.0))
            .collect();
        let s: f64 = x.iter().sum();
        x.into_iter().map(|v| v / s).collect()
    } else {
        above.1
    };
    if dot(mu, &x) < r - 1e-9 {
        return Err(Error::NotConverged(format!(
            "return floor {r} missed by {:e}",
            r - dot(mu, &x)
        )));
    }
    finish(x, iterations, "return floor binding", trace)
}

/// Efficient front of one regime over [`return_grid`] targets. Failed grid
/// points are dropped and counted in [`ParetoFront::skipped`].
pub fn trace_scenario_front(
    mu: &[f64],
    scenario: &RegimeScenario,
    n_points: usize,
    config: &SolverConfig,
) -> Result<ParetoFront> {
    let cov = scenario.cov();
    let grid = return_grid(mu, cov, n_points, config)?;
    let solved: Vec<Result<FrontPoint>> = grid
        .par_iter()
        .map(|&r| {
            let rep = min_variance_with_return_floor(mu, cov, r, config)?;
            let ret = dot(mu, rep.x.weights());
            Ok(FrontPoint {
                ret,
                risk: rep.objective_value,
                target_r: r,
                x: rep.x,
            })
        })
        .collect();
    let skipped = solved.iter().filter(|p| p.is_err()).count();
    let mut points: Vec<FrontPoint> = solved.into_iter().filter_map(|p| p.ok()).collect();
    points.sort_by(|a, b| a.ret.total_cmp(&b.ret));
    let points = nondominated_filter(points, FrontPoint::objective);
    Ok(ParetoFront {
        label: scenario.label().to_string(),
        points,
        nondominated: true,
        skipped,
    })
}
