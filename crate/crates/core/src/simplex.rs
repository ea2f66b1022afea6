//! Optimization kernels over the standard simplex.
//!
//! Every benchmark technique and every front point reduces to minimizing a
//! convex quadratic `s * x'Qx + c'x` over the simplex, possibly inside a
//! scalar bisection on a multiplier. The kernel is projected gradient with
//! backtracking; once the iterates settle on a face, an active-set step
//! solves the face's KKT system exactly so the outer bisections and the
//! Dinkelbach loop see clean values.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dot, mat_vec, quad_form, Portfolio};

/// Step-size control for projected gradient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRule {
    /// Initial step as a multiple of `1 / L`, with `L` a Gershgorin bound on
    /// the gradient's Lipschitz constant.
    pub initial_scale: f64,
    /// Backtracking contraction factor.
    pub shrink: f64,
    pub max_backtracks: usize,
}

impl Default for StepRule {
    fn default() -> Self {
        Self {
            initial_scale: 1.0,
            shrink: 0.5,
            max_backtracks: 60,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iters: usize,
    pub tol: f64,
    pub step_rule: StepRule,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            tol: 1e-9,
            step_rule: StepRule::default(),
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidInput("max_iters must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput("tol must be positive".into()));
        }
        let s = &self.step_rule;
        if !(s.initial_scale > 0.0) || !(s.shrink > 0.0 && s.shrink < 1.0) {
            return Err(Error::InvalidInput("invalid step rule".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub x: Portfolio,
    pub objective_value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub status: String,
    /// Objective after each accepted iterate of the (last) inner solve, or
    /// the ratio sequence for Dinkelbach.
    pub trace: Vec<f64>,
}

/// Sign convention for the weighted-sum benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMode {
    /// `lambda * variance - return`: trades return against risk.
    #[default]
    Standard,
    /// `lambda * variance + return`, which penalizes return.
    PaperLiteral,
}

impl SignMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignMode::Standard => "standard",
            SignMode::PaperLiteral => "paper-literal",
        }
    }
}

/// Euclidean projection onto the simplex (sort and threshold).
pub fn project_to_simplex(v: &[f64]) -> Portfolio {
    Portfolio::new(project(v)).expect("projection lands on the simplex")
}

pub(crate) fn project(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cumsum += uk;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    let mut x: Vec<f64> = v.iter().map(|&vi| (vi - theta).max(0.0)).collect();
    // the threshold is exact up to rounding; renormalize the residue away
    let s: f64 = x.iter().sum();
    if s > 0.0 && (s - 1.0).abs() > 0.0 {
        x.iter_mut().for_each(|xi| *xi /= s);
    }
    x
}

/// `scale * x'Qx + c'x`.
#[derive(Clone, Copy)]
pub(crate) struct Quadratic<'a> {
    pub q: &'a DMatrix<f64>,
    pub scale: f64,
    pub c: Option<&'a [f64]>,
    pub c_sign: f64,
}

impl<'a> Quadratic<'a> {
    pub fn new(q: &'a DMatrix<f64>, scale: f64, c: Option<&'a [f64]>, c_sign: f64) -> Self {
        Self { q, scale, c, c_sign }
    }

    fn n(&self) -> usize {
        self.q.nrows()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let mut v = if self.scale != 0.0 {
            self.scale * quad_form(self.q, x)
        } else {
            0.0
        };
        if let Some(c) = self.c {
            v += self.c_sign * dot(c, x);
        }
        v
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = if self.scale != 0.0 {
            let mut qx = mat_vec(self.q, x);
            qx.iter_mut().for_each(|v| *v *= 2.0 * self.scale);
            qx
        } else {
            vec![0.0; x.len()]
        };
        if let Some(c) = self.c {
            g.iter_mut()
                .zip(c)
                .for_each(|(gi, ci)| *gi += self.c_sign * ci);
        }
        g
    }

    fn lipschitz(&self) -> f64 {
        let n = self.n();
        let row_max = (0..n)
            .map(|i| (0..n).map(|j| self.q[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max);
        2.0 * self.scale.abs() * row_max
    }

    fn linear_term(&self, i: usize) -> f64 {
        self.c.map_or(0.0, |c| self.c_sign * c[i])
    }
}

pub(crate) struct QpOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<f64>,
}

fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Projected-gradient stationarity residual `||P(x - g/L) - x||`.
fn stationarity(obj: &Quadratic, x: &[f64], step: f64) -> f64 {
    let g = obj.gradient(x);
    let y: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
    norm_diff(&project(&y), x)
}

/// Exact minimization on the affine hull of the current support, followed
/// by a feasibility-preserving ratio step whenever the face minimizer leaves
/// the simplex. Never increases the objective.
fn active_set_polish(obj: &Quadratic, x: &mut Vec<f64>, value: &mut f64) {
    let n = x.len();
    for _ in 0..=n {
        let support: Vec<usize> = (0..n).filter(|&i| x[i] > 0.0).collect();
        let m = support.len();
        let mut kkt = DMatrix::zeros(m + 1, m + 1);
        let mut rhs = DVector::zeros(m + 1);
        for (a, &i) in support.iter().enumerate() {
            for (b, &j) in support.iter().enumerate() {
                kkt[(a, b)] = 2.0 * obj.scale * obj.q[(i, j)];
            }
            kkt[(a, m)] = 1.0;
            kkt[(m, a)] = 1.0;
            rhs[a] = -obj.linear_term(i);
        }
        rhs[m] = 1.0;
        let Some(sol) = kkt.clone().lu().solve(&rhs) else {
            return;
        };
        let residual = (&kkt * &sol - &rhs).amax();
        if !sol.iter().all(|v| v.is_finite()) || residual > 1e-9 {
            return;
        }
        let mut z = vec![0.0; n];
        for (a, &i) in support.iter().enumerate() {
            z[i] = sol[a];
        }
        if z.iter().all(|&zi| zi >= 0.0) {
            let zv = obj.value(&z);
            // the exact face minimizer may tie the iterate up to rounding
            if zv <= *value + 4.0 * f64::EPSILON * value.abs() {
                *x = z;
                *value = zv.min(*value);
            }
            return;
        }
        // largest step toward z that keeps x >= 0
        let mut alpha = 1.0;
        let mut blocking = Vec::new();
        for &i in &support {
            if z[i] < 0.0 {
                let a = x[i] / (x[i] - z[i]);
                if a < alpha - 1e-15 {
                    alpha = a;
                    blocking.clear();
                    blocking.push(i);
                } else if (a - alpha).abs() <= 1e-15 {
                    blocking.push(i);
                }
            }
        }
        let mut y: Vec<f64> = x
            .iter()
            .zip(&z)
            .map(|(xi, zi)| (xi + alpha * (zi - xi)).max(0.0))
            .collect();
        for &i in &blocking {
            y[i] = 0.0;
        }
        let s: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= s);
        let yv = obj.value(&y);
        if yv > *value + 1e-15 * value.abs().max(1.0) {
            return;
        }
        *x = y;
        *value = yv.min(*value);
    }
}

/// Projected gradient with backtracking plus periodic active-set polishing.
pub(crate) fn solve_qp(obj: &Quadratic, x0: Option<&[f64]>, cfg: &SolverConfig) -> QpOutcome {
    let n = obj.n();
    let lipschitz = obj.lipschitz();
    if lipschitz <= 0.0 {
        // linear objective: best vertex, smallest index on ties
        let i = (0..n)
            .min_by(|&a, &b| {
                obj.linear_term(a)
                    .partial_cmp(&obj.linear_term(b))
                    .unwrap_or(Ordering::Equal)
            })
            .unwrap_or(0);
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        let value = obj.value(&x);
        return QpOutcome {
            x,
            value,
            iterations: 0,
            converged: true,
            trace: vec![value],
        };
    }

    let nominal = cfg.step_rule.initial_scale / lipschitz;
    let mut x = match x0 {
        Some(v) => project(v),
        None => vec![1.0 / n as f64; n],
    };
    let mut value = obj.value(&x);
    let mut trace = vec![value];
    let mut converged = false;
    let mut iterations = 0;

    for k in 1..=cfg.max_iters {
        iterations = k;
        let g = obj.gradient(&x);
        let mut t = nominal;
        let mut y = Vec::new();
        let mut y_value = f64::INFINITY;
        for _ in 0..=cfg.step_rule.max_backtracks {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - t * gi).collect();
            y = project(&trial);
            y_value = obj.value(&y);
            let d: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
            let model = value + dot(&g, &d) + dot(&d, &d) / (2.0 * t);
            if y_value <= model + 1e-15 * value.abs().max(1e-300) {
                break;
            }
            t *= cfg.step_rule.shrink;
        }
        let step = norm_diff(&y, &x);
        if y_value <= value {
            x = y;
            value = y_value;
        }
        let stalled = step <= cfg.tol;
        if stalled || k % 25 == 0 {
            active_set_polish(obj, &mut x, &mut value);
        }
        trace.push(value);
        if stalled || k % 25 == 0 {
            if stationarity(obj, &x, nominal) <= cfg.tol {
                converged = true;
                break;
            }
        }
    }
    QpOutcome {
        x,
        value,
        iterations,
        converged,
        trace,
    }
}

fn check_square(cov: &DMatrix<f64>, n: usize) -> Result<()> {
    if cov.nrows() != n || cov.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cov.nrows(),
        });
    }
    Ok(())
}

fn report(out: QpOutcome, status: &str) -> SolveReport {
    let status = if out.converged {
        status.to_string()
    } else {
        format!("{status}: iteration limit reached")
    };
    SolveReport {
        x: Portfolio::new(out.x).expect("solver iterates stay on the simplex"),
        objective_value: out.value,
        iterations: out.iterations,
        converged: out.converged,
        status,
        trace: out.trace,
    }
}

/// Minimizes `x' cov x + c'x` over the simplex. A report with
/// `converged == false` is still returned when the iteration budget runs out.
pub fn min_quadratic_over_simplex(
    cov: &DMatrix<f64>,
    linear: Option<&[f64]>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let n = cov.nrows();
    check_square(cov, n)?;
    if let Some(c) = linear {
        if c.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
    }
    let obj = Quadratic::new(cov, 1.0, linear, 1.0);
    Ok(report(solve_qp(&obj, None, config), "min quadratic"))
}

/// Global minimum variance over the simplex.
pub fn min_variance(cov: &DMatrix<f64>, config: &SolverConfig) -> Result<SolveReport> {
    min_quadratic_over_simplex(cov, None, config)
}

/// Maximum of `x' cov x` over the simplex, attained at a vertex since the
/// objective is convex. Ties resolve to the smallest index.
pub fn max_variance_over_simplex(cov: &DMatrix<f64>) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for i in 0..cov.nrows() {
        if cov[(i, i)] > best.0 {
            best = (cov[(i, i)], i);
        }
    }
    best
}

/// Argmax of `mu' x - rho * x' cov x` over the simplex, warm-started.
pub(crate) fn penalized_return(
    mu: &[f64],
    cov: &DMatrix<f64>,
    rho: f64,
    x0: Option<&[f64]>,
    cfg: &SolverConfig,
) -> QpOutcome {
    let obj = Quadratic::new(cov, rho, Some(mu), -1.0);
    solve_qp(&obj, x0, cfg)
}

/// Lowest-variance portfolio among those with maximal return. Usually the
/// best single asset; a face solve when several assets tie.
pub(crate) fn best_return_portfolio(
    mu: &[f64],
    cov: &DMatrix<f64>,
    cfg: &SolverConfig,
) -> Vec<f64> {
    let n = mu.len();
    let max_mu = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let face: Vec<usize> = (0..n).filter(|&i| mu[i] >= max_mu - 1e-15).collect();
    let mut x = vec![0.0; n];
    if face.len() == 1 {
        x[face[0]] = 1.0;
        return x;
    }
    let sub = DMatrix::from_fn(face.len(), face.len(), |a, b| cov[(face[a], face[b])]);
    let out = solve_qp(&Quadratic::new(&sub, 1.0, None, 1.0), None, cfg);
    for (a, &i) in face.iter().enumerate() {
        x[i] = out.x[a];
    }
    x
}

/// Point on the segment from `inside` (variance <= cap) toward `outside`
/// (variance > cap) whose variance equals the cap.
pub(crate) fn cap_crossing(cov: &DMatrix<f64>, inside: &[f64], outside: &[f64], cap: f64) -> Vec<f64> {
    let d: Vec<f64> = outside.iter().zip(inside).map(|(a, b)| a - b).collect();
    let a = quad_form(cov, &d);
    let b = 2.0 * dot(&mat_vec(cov, inside), &d);
    let c0 = quad_form(cov, inside) - cap;
    let t = if a > 1e-300 {
        let disc = (b * b - 4.0 * a * c0).max(0.0);
        ((-b + disc.sqrt()) / (2.0 * a)).clamp(0.0, 1.0)
    } else if b > 0.0 {
        (-c0 / b).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let x: Vec<f64> = inside
        .iter()
        .zip(&d)
        .map(|(xi, di)| (xi + t * di).max(0.0))
        .collect();
    let s: f64 = x.iter().sum();
    x.into_iter().map(|v| v / s).collect()
}

/// Maximizes `mu' x` subject to `x' cov x <= v_cap` over the simplex.
///
/// When the best-return portfolio satisfies the cap it is returned as is.
/// Otherwise the cap binds and the penalty `rho` in
/// `max mu'x - rho * x'cov x` is bisected until the variance meets the cap;
/// a final segment step lands on it exactly.
pub fn max_return_with_variance_cap(
    mu: &[f64],
    cov: &DMatrix<f64>,
    v_cap: f64,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let n = mu.len();
    check_square(cov, n)?;
    if !(v_cap.is_finite()) {
        return Err(Error::InvalidInput("variance cap must be finite".into()));
    }

    let top = best_return_portfolio(mu, cov, config);
    let top_var = quad_form(cov, &top);
    if top_var <= v_cap {
        let value = dot(mu, &top);
        return Ok(SolveReport {
            x: Portfolio::new(top)?,
            objective_value: value,
            iterations: 0,
            converged: true,
            status: "cap slack at best-return portfolio".into(),
            trace: vec![value],
        });
    }

    let minvar = solve_qp(&Quadratic::new(cov, 1.0, None, 1.0), None, config);
    if minvar.value > v_cap + 1e-12 {
        return Err(Error::InfeasibleCap {
            cap: v_cap,
            min_variance: minvar.value,
        });
    }
    if minvar.value >= v_cap - 1e-12 {
        let value = dot(mu, &minvar.x);
        return Ok(SolveReport {
            x: Portfolio::new(minvar.x)?,
            objective_value: value,
            iterations: minvar.iterations,
            converged: true,
            status: "cap equals minimum variance".into(),
            trace: vec![value],
        });
    }

    let mut iterations = minvar.iterations;
    // outside: variance above the cap; inside: variance at or below it
    let mut outside = (0.0, top.clone());
    let mut inside = (f64::NAN, minvar.x.clone());
    let mut rho = 1.0;
    let mut warm = top.clone();
    let mut bracketed = false;
    for _ in 0..200 {
        let out = penalized_return(mu, cov, rho, Some(&warm), config);
        iterations += out.iterations;
        let v = quad_form(cov, &out.x);
        warm = out.x.clone();
        if v <= v_cap {
            inside = (rho, out.x);
            bracketed = true;
            break;
        }
        outside = (rho, out.x);
        rho *= 2.0;
    }
    if !bracketed {
        // penalty growth never reached the cap; fall back to the min-variance end
        inside = (f64::INFINITY, minvar.x.clone());
    }

    let mut last_trace = Vec::new();
    for _ in 0..200 {
        let v_in = quad_form(cov, &inside.1);
        if (v_in - v_cap).abs() <= 1e-12 || !inside.0.is_finite() {
            break;
        }
        let mid = if outside.0 > 0.0 {
            (outside.0 * inside.0).sqrt()
        } else {
            0.5 * inside.0
        };
        if !(mid > outside.0 && mid < inside.0) {
            break;
        }
        let out = penalized_return(mu, cov, mid, Some(&inside.1), config);
        iterations += out.iterations;
        last_trace = out.trace;
        if quad_form(cov, &out.x) <= v_cap {
            inside = (mid, out.x);
        } else {
            outside = (mid, out.x);
        }
    }

    let x = cap_crossing(cov, &inside.1, &outside.1, v_cap);
    let variance = quad_form(cov, &x);
    let residual = (variance - v_cap).abs();
    let value = dot(mu, &x);
    let converged = residual <= 1e-6;
    if !converged {
        return Err(Error::NotConverged(format!(
            "variance cap residual {residual:e} after bisection"
        )));
    }
    if last_trace.is_empty() {
        last_trace.push(value);
    }
    Ok(SolveReport {
        x: Portfolio::new(x)?,
        objective_value: value,
        iterations,
        converged,
        status: "cap binding".into(),
        trace: last_trace,
    })
}

/// Weighted-sum scalarization of return and variance with risk aversion
/// `lambda`. The report's objective is the minimized scalarized value.
pub fn weighted_sum_optimum(
    mu: &[f64],
    cov: &DMatrix<f64>,
    lambda: f64,
    sign_mode: SignMode,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let n = mu.len();
    check_square(cov, n)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "risk aversion must be positive, got {lambda}"
        )));
    }
    let c_sign = match sign_mode {
        SignMode::Standard => -1.0,
        SignMode::PaperLiteral => 1.0,
    };
    let obj = Quadratic::new(cov, lambda, Some(mu), c_sign);
    let out = solve_qp(&obj, None, config);
    Ok(report(out, &format!("weighted sum ({})", sign_mode.as_str())))
}

/// Maximizes the return-to-variance ratio `mu'x / x'cov x` over the simplex
/// by Dinkelbach iteration, starting from the uniform portfolio. The report's
/// objective is the final ratio and `trace` holds the ratio sequence.
pub fn max_sharpe_dinkelbach(
    mu: &[f64],
    cov: &DMatrix<f64>,
    config: &SolverConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let n = mu.len();
    check_square(cov, n)?;
    if !mu.iter().any(|&m| m > 0.0) {
        return Err(Error::InvalidInput(
            "ratio maximization needs at least one positive expected return".into(),
        ));
    }
    let ratio = |x: &[f64]| -> Result<f64> {
        let v = quad_form(cov, x);
        if v <= 1e-15 {
            return Err(Error::DegenerateRisk);
        }
        Ok(dot(mu, x) / v)
    };

    let mut x = vec![1.0 / n as f64; n];
    let mut q = ratio(&x)?;
    if q <= 0.0 {
        // the subproblem is only convex for a positive ratio
        let i = (0..n)
            .max_by(|&a, &b| mu[a].partial_cmp(&mu[b]).unwrap_or(Ordering::Equal))
            .unwrap_or(0);
        x = vec![0.0; n];
        x[i] = 1.0;
        q = ratio(&x)?;
    }
    let mut qs = vec![q];
    let mut iterations = 0;
    for _ in 0..100 {
        let out = penalized_return(mu, cov, q, Some(&x), config);
        iterations += out.iterations;
        let gap = dot(mu, &out.x) - q * quad_form(cov, &out.x);
        if gap <= 1e-9 {
            // the incumbent is optimal to tolerance; keep the better point
            if gap >= 0.0 && ratio(&out.x)? >= q {
                x = out.x;
                q = ratio(&x)?;
                qs.push(q);
            }
            return Ok(SolveReport {
                x: Portfolio::new(x)?,
                objective_value: q,
                iterations,
                converged: true,
                status: "dinkelbach".into(),
                trace: qs,
            });
        }
        x = out.x;
        let next = ratio(&x)?;
        q = next.max(q);
        qs.push(q);
    }
    Err(Error::NotConverged(
        "dinkelbach iteration limit reached".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn diag(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_row_slice(v))
    }

    const MU2: [f64; 2] = [0.1, 0.05];

    #[test]
    fn projection_examples() {
        let p = project_to_simplex(&[0.3, 0.7]);
        assert_relative_eq!(p.weights()[0], 0.3, epsilon = 1e-15);
        assert_eq!(project_to_simplex(&[2.0, 0.0]).weights(), &[1.0, 0.0]);
        let p = project_to_simplex(&[0.6, 0.6]);
        assert_relative_eq!(p.weights()[0], 0.5, epsilon = 1e-15);
        assert_relative_eq!(p.weights()[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn projection_matches_grid_search() {
        let v = [0.6, 0.6];
        let best = oracle::grid_argmin(2, 1000, |x| {
            (x[0] - v[0]).powi(2) + (x[1] - v[1]).powi(2)
        });
        let p = project_to_simplex(&v);
        assert!((p.weights()[0] - best.0[0]).abs() <= 1e-3);
    }

    #[test]
    fn min_variance_identity_is_uniform() {
        let r = min_variance(&DMatrix::identity(4, 4), &SolverConfig::default()).unwrap();
        assert!(r.converged);
        for w in r.x.weights() {
            assert_relative_eq!(*w, 0.25, epsilon = 1e-9);
        }
        assert_relative_eq!(r.objective_value, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn min_variance_two_asset_diagonal() {
        let r = min_variance(&diag(&[0.04, 0.01]), &SolverConfig::default()).unwrap();
        assert_relative_eq!(r.x.weights()[0], 0.2, epsilon = 1e-9);
        assert_relative_eq!(r.objective_value, 0.008, epsilon = 1e-12);
    }

    #[test]
    fn min_quadratic_random_psd_matches_grid() {
        for seed in 0..5 {
            let cov = oracle::random_covariance(3, seed);
            let r = min_variance(&cov, &SolverConfig::default()).unwrap();
            let (_, grid) = oracle::grid_argmin(3, 200, |x| quad_form(&cov, x));
            assert!(r.objective_value <= grid + 1e-12);
            assert!(grid - r.objective_value <= 1e-4);
        }
    }

    #[test]
    fn linear_term_is_honoured() {
        // x'Ix + c'x with c pushing weight to asset 1
        let c = [0.5, -0.5];
        let r = min_quadratic_over_simplex(&DMatrix::identity(2, 2), Some(&c), &SolverConfig::default())
            .unwrap();
        // stationarity: 2x0 + 0.5 = 2x1 - 0.5, x0 + x1 = 1 -> x0 = 0.25
        assert_relative_eq!(r.x.weights()[0], 0.25, epsilon = 1e-9);
        assert!(min_quadratic_over_simplex(&DMatrix::identity(2, 2), Some(&[1.0]), &SolverConfig::default()).is_err());
    }

    #[test]
    fn descent_trace_is_monotone() {
        let cov = oracle::random_covariance(6, 3);
        let r = min_variance(&cov, &SolverConfig::default()).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn non_converged_report_is_flagged() {
        let cfg = SolverConfig {
            max_iters: 1,
            ..SolverConfig::default()
        };
        let cov = oracle::random_covariance(8, 11);
        let r = min_variance(&cov, &cfg).unwrap();
        if !r.converged {
            assert!(r.status.contains("iteration limit"));
        }
        let bad = SolverConfig {
            max_iters: 0,
            ..SolverConfig::default()
        };
        assert!(min_variance(&cov, &bad).is_err());
    }

    #[test]
    fn cap_slack_returns_best_vertex() {
        let r = max_return_with_variance_cap(&MU2, &diag(&[0.04, 0.01]), 0.05, &SolverConfig::default())
            .unwrap();
        assert_eq!(r.x.weights(), &[1.0, 0.0]);
        assert_relative_eq!(r.objective_value, 0.1);
    }

    #[test]
    fn cap_below_min_variance_is_infeasible() {
        let err = max_return_with_variance_cap(&MU2, &diag(&[0.04, 0.01]), 0.005, &SolverConfig::default())
            .unwrap_err();
        assert!(matches!(err, Error::InfeasibleCap { .. }));
    }

    #[test]
    fn cap_binding_two_asset() {
        let cov = diag(&[0.04, 0.01]);
        let r = max_return_with_variance_cap(&MU2, &cov, 0.02, &SolverConfig::default()).unwrap();
        let x1 = (0.02 + 0.0024f64.sqrt()) / 0.1;
        assert_relative_eq!(r.x.weights()[0], x1, epsilon = 1e-7);
        assert_relative_eq!(r.objective_value, 0.05 + 0.05 * x1, epsilon = 1e-8);
        assert!((quad_form(&cov, r.x.weights()) - 0.02).abs() <= 1e-6);
        // grid oracle at step 1e-4 along the edge
        let (_, best) = oracle::grid_argmin(2, 10_000, |x| {
            if quad_form(&cov, x) <= 0.02 { -dot(&MU2, x) } else { f64::INFINITY }
        });
        assert!((-best - r.objective_value).abs() <= 1e-5);
    }

    #[test]
    fn weighted_sum_two_asset_standard() {
        let cov = diag(&[0.04, 0.01]);
        let r = weighted_sum_optimum(&MU2, &cov, 3.5, SignMode::Standard, &SolverConfig::default())
            .unwrap();
        assert_relative_eq!(r.x.weights()[0], 0.12 / 0.35, epsilon = 1e-8);
        assert!(r.status.contains("standard"));
    }

    #[test]
    fn weighted_sum_paper_literal_loses_return() {
        let cov = diag(&[0.04, 0.01]);
        let cfg = SolverConfig::default();
        let std = weighted_sum_optimum(&MU2, &cov, 3.5, SignMode::Standard, &cfg).unwrap();
        let lit = weighted_sum_optimum(&MU2, &cov, 3.5, SignMode::PaperLiteral, &cfg).unwrap();
        let (grid_x, _) =
            oracle::grid_argmin(2, 10_000, |x| 3.5 * quad_form(&cov, x) + dot(&MU2, x));
        assert!((lit.x.weights()[0] - grid_x[0]).abs() <= 2e-4);
        assert!(lit.x.weights()[0] < 0.2);
        assert!(dot(&MU2, lit.x.weights()) < dot(&MU2, std.x.weights()));
        assert!(lit.status.contains("paper-literal"));
    }

    #[test]
    fn weighted_sum_large_lambda_approaches_min_variance() {
        let cov = oracle::random_covariance(4, 5);
        let mu = [0.02, 0.05, 0.08, 0.11];
        let cfg = SolverConfig::default();
        let ws = weighted_sum_optimum(&mu, &cov, 1e6, SignMode::Standard, &cfg).unwrap();
        let mv = min_variance(&cov, &cfg).unwrap();
        for (a, b) in ws.x.weights().iter().zip(mv.x.weights()) {
            assert!((a - b).abs() <= 1e-4);
        }
        assert!(weighted_sum_optimum(&mu, &cov, 0.0, SignMode::Standard, &cfg).is_err());
    }

    #[test]
    fn sharpe_two_asset_closed_form() {
        let cov = diag(&[0.04, 0.01]);
        let r = max_sharpe_dinkelbach(&MU2, &cov, &SolverConfig::default()).unwrap();
        let w = -1.0 + 1.6f64.sqrt();
        assert_relative_eq!(r.x.weights()[0], w, epsilon = 1e-7);
        let ratio = (0.05 * w + 0.05) / (0.05 * w * w - 0.02 * w + 0.01);
        assert_relative_eq!(r.objective_value, ratio, epsilon = 1e-4);
        assert!((r.objective_value - 7.7028).abs() <= 1e-4);
        let (_, best) = oracle::grid_argmin(2, 10_000, |x| -dot(&MU2, x) / quad_form(&cov, x));
        assert!(r.objective_value >= -best - 1e-9);
    }

    #[test]
    fn sharpe_identity_beats_every_vertex() {
        let mu = [0.03, 0.09, 0.06];
        let r = max_sharpe_dinkelbach(&mu, &DMatrix::identity(3, 3), &SolverConfig::default()).unwrap();
        for (i, m) in mu.iter().enumerate() {
            let _ = i;
            assert!(r.objective_value >= *m - 1e-12);
        }
    }

    #[test]
    fn sharpe_sequence_nondecreasing_and_gap_closed() {
        let cov = oracle::random_covariance(5, 9);
        let mu = [0.02, 0.04, 0.06, 0.08, 0.1];
        let r = max_sharpe_dinkelbach(&mu, &cov, &SolverConfig::default()).unwrap();
        for w in r.trace.windows(2) {
            assert!(w[1] >= w[0]);
        }
        let q = r.objective_value;
        let x = r.x.weights();
        // the final subproblem value at q is within tolerance of zero
        let sub = penalized_return(&mu, &cov, q, Some(x), &SolverConfig::default());
        let gap = dot(&mu, &sub.x) - q * quad_form(&cov, &sub.x);
        assert!(gap.abs() <= 1e-9, "gap {gap}");
    }

    #[test]
    fn sharpe_rejects_nonpositive_returns() {
        let cov = diag(&[0.04, 0.01]);
        assert!(max_sharpe_dinkelbach(&[-0.1, 0.0], &cov, &SolverConfig::default()).is_err());
        let zero = DMatrix::zeros(2, 2);
        assert!(matches!(
            max_sharpe_dinkelbach(&MU2, &zero, &SolverConfig::default()),
            Err(Error::DegenerateRisk)
        ));
    }

    #[test]
    fn max_variance_vertex() {
        assert_eq!(max_variance_over_simplex(&DMatrix::identity(3, 3)), (1.0, 0));
        assert_eq!(max_variance_over_simplex(&diag(&[0.04, 0.01])), (0.04, 0));
        let cov = oracle::random_covariance(5, 2);
        let (v, _) = max_variance_over_simplex(&cov);
        let (_, grid) = oracle::grid_argmin(5, 50, |x| -quad_form(&cov, x));
        assert!(-grid <= v + 1e-12);
    }

    proptest! {
        #[test]
        fn projection_is_feasible_and_optimal(v in prop::collection::vec(-2.0f64..2.0, 1..8)) {
            let p = project(&v);
            let s: f64 = p.iter().sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
            prop_assert!(p.iter().all(|&x| x >= 0.0));
            // KKT: v - p = theta on the support, <= theta elsewhere
            let support: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0.0).collect();
            let theta = v[support[0]] - p[support[0]];
            for i in 0..p.len() {
                if p[i] > 0.0 {
                    prop_assert!((v[i] - p[i] - theta).abs() <= 1e-9);
                } else {
                    prop_assert!(v[i] <= theta + 1e-9);
                }
            }
        }

        #[test]
        fn projection_is_identity_on_simplex(w in prop::collection::vec(0.01f64..1.0, 2..6)) {
            let s: f64 = w.iter().sum();
            let x: Vec<f64> = w.iter().map(|v| v / s).collect();
            let p = project(&x);
            for (a, b) in p.iter().zip(&x) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}
