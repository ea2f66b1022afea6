//! Brute-force reference computations for tests. Nothing here calls into
//! the solvers it is used to check.
#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Visits every point of the simplex grid with spacing `1 / steps`.
pub fn for_each_grid_point(n: usize, steps: usize, mut f: impl FnMut(&[f64])) {
    let mut counts = vec![0usize; n];
    let mut x = vec![0.0; n];
    fn rec(
        i: usize,
        remaining: usize,
        steps: usize,
        counts: &mut Vec<usize>,
        x: &mut Vec<f64>,
        f: &mut dyn FnMut(&[f64]),
    ) {
        let n = counts.len();
        if i == n - 1 {
            counts[i] = remaining;
            for k in 0..n {
                x[k] = counts[k] as f64 / steps as f64;
            }
            f(x);
            return;
        }
        for c in 0..=remaining {
            counts[i] = c;
            rec(i + 1, remaining - c, steps, counts, x, f);
        }
    }
    rec(0, steps, steps, &mut counts, &mut x, &mut f);
}

/// Grid minimizer and minimum of `f` over the simplex.
pub fn grid_argmin(n: usize, steps: usize, mut f: impl FnMut(&[f64]) -> f64) -> (Vec<f64>, f64) {
    let mut best = (vec![0.0; n], f64::INFINITY);
    for_each_grid_point(n, steps, |x| {
        let v = f(x);
        if v < best.1 {
            best = (x.to_vec(), v);
        }
    });
    best
}

pub fn quad(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += x[i] * m[(i, j)] * x[j];
        }
    }
    s
}

pub fn lin(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Random covariance with volatilities in [0.05, 0.3] and a random
/// positive definite correlation.
pub fn random_covariance(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xC0FF_EE);
    let b: DMatrix<f64> = DMatrix::from_fn(n, n + 2, |_, _| rng.random_range(-1.0..1.0));
    let mut g = &b * b.transpose();
    for i in 0..n {
        g[(i, i)] += 0.1;
    }
    let d: Vec<f64> = (0..n).map(|i| g[(i, i)].sqrt()).collect();
    let stds: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..0.3)).collect();
    DMatrix::from_fn(n, n, |i, j| g[(i, j)] / (d[i] * d[j]) * stds[i] * stds[j])
}

/// Random expected returns in [0.02, 0.11].
pub fn random_returns(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xBEEF);
    (0..n).map(|_| rng.random_range(0.02..0.11)).collect()
}

/// Nondominated (max return, min risk) subset by the pairwise definition.
/// Candidates are bucketed by return first (only the lowest risk per return
/// can survive) to keep the quadratic pass affordable on dense grids.
pub fn pareto_pairwise(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut best: std::collections::BTreeMap<u64, (f64, f64)> = Default::default();
    for p in points {
        let e = best.entry(p.0.to_bits()).or_insert(*p);
        if p.1 < e.1 {
            *e = *p;
        }
    }
    let cands: Vec<(f64, f64)> = best.into_values().collect();
    cands
        .iter()
        .copied()
        .filter(|p| {
            !cands
                .iter()
                .any(|q| q.0 >= p.0 && q.1 <= p.1 && (q.0 > p.0 || q.1 < p.1))
        })
        .collect()
}

/// Area dominated by `points` inside the reference box, by rasterizing the
/// union of rectangles over the distinct coordinates.
pub fn hypervolume_by_rectangles(points: &[(f64, f64)], ret_ref: f64, var_ref: f64) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|p| p.0 >= ret_ref && p.1 <= var_ref)
        .collect();
    let mut xs: Vec<f64> = pts.iter().map(|p| p.0).chain([ret_ref]).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).chain([var_ref]).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    ys.dedup();
    let mut area = 0.0;
    for i in 0..xs.len().saturating_sub(1) {
        for j in 0..ys.len().saturating_sub(1) {
            let (cx, cy) = (0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
            if pts.iter().any(|p| p.0 >= cx && p.1 <= cy) {
                area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
            }
        }
    }
    area
}

/// Dense grid search on the 3-simplex (step `1/steps`) followed by local
/// zoom grids around the best few cells, each level a quarter of the
/// previous step. `f` returns `INFINITY` outside the feasible region.
/// Fine enough to resolve constrained optima to ~1e-8 in objective.
pub fn zoom_argmin3(steps: usize, mut f: impl FnMut(&[f64]) -> f64) -> (Vec<f64>, f64) {
    let mut coarse: Vec<(f64, Vec<f64>)> = Vec::new();
    for_each_grid_point(3, steps, |x| {
        let v = f(x);
        if v.is_finite() {
            coarse.push((v, x.to_vec()));
        }
    });
    coarse.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = (Vec::new(), f64::INFINITY);
    for (v0, x0) in coarse.into_iter().take(6) {
        let (mut c, mut cv) = (x0, v0);
        let mut h = 1.0 / steps as f64;
        for _ in 0..8 {
            let q = h / 4.0;
            let (c0, c1) = (c[0], c[1]);
            for i in -8i32..=8 {
                for j in -8i32..=8 {
                    let a = (c0 + i as f64 * q).max(0.0);
                    let b = (c1 + j as f64 * q).max(0.0);
                    let rest = 1.0 - a - b;
                    if rest < 0.0 {
                        continue;
                    }
                    let x = [a, b, rest];
                    let v = f(&x);
                    if v < cv {
                        cv = v;
                        c = x.to_vec();
                    }
                }
            }
            h = q;
        }
        if cv < best.1 {
            best = (c, cv);
        }
    }
    best
}
