//! Scoring robust portfolio sets against the per-regime efficient fronts.
//!
//! Robust points are mapped into each regime's (return, variance) space and
//! compared with that regime's front by 2D hypervolume. The metric is a
//! post-hoc score only; no solver uses it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{dominates, nondominated_filter, portfolio_return, portfolio_variance, ObjectivePoint, Portfolio, RegimeScenario, UncertaintySet};
use crate::pareto::ParetoFront;
use crate::robust::RegretSpec;

/// Reference box `[ret_ref, inf) x (-inf, var_ref]` for hypervolume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypervolumeRef {
    pub ret_ref: f64,
    pub var_ref: f64,
}

impl HypervolumeRef {
    pub fn new(ret_ref: f64, var_ref: f64) -> Self {
        Self { ret_ref, var_ref }
    }

    /// `ret_ref = 0`, `var_ref = 1.1 * max` over regimes of the largest
    /// attainable variance, which for a convex quadratic on the simplex is
    /// the largest diagonal entry.
    pub fn default_for(uncertainty: &UncertaintySet) -> Self {
        let v_max = uncertainty
            .iter()
            .map(|s| {
                let c = s.cov();
                (0..c.nrows()).map(|i| c[(i, i)]).fold(f64::NEG_INFINITY, f64::max)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        Self::new(0.0, 1.1 * v_max)
    }

    pub fn contains(&self, p: &ObjectivePoint) -> bool {
        p.ret >= self.ret_ref && p.risk <= self.var_ref
    }
}

/// Hypervolume with the number of points left out because they fall
/// outside the reference box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hypervolume {
    pub value: f64,
    pub excluded: usize,
}

/// `(mu'x, x' cov x)` for each portfolio under one regime.
pub fn evaluate_under_scenario(
    portfolios: &[Portfolio],
    mu: &[f64],
    scenario: &RegimeScenario,
) -> Result<Vec<ObjectivePoint>> {
    portfolios
        .iter()
        .map(|x| {
            Ok(ObjectivePoint::new(
                portfolio_return(x, mu)?,
                portfolio_variance(x, scenario.cov())?,
            ))
        })
        .collect()
}

/// Area dominated by `points` inside the reference box.
pub fn hypervolume_2d(points: &[ObjectivePoint], reference: &HypervolumeRef) -> Hypervolume {
    let inside: Vec<ObjectivePoint> = points
        .iter()
        .copied()
        .filter(|p| p.ret.is_finite() && p.risk.is_finite() && reference.contains(p))
        .collect();
    let excluded = points.len() - inside.len();
    let mut front = nondominated_filter(inside, |p| *p);
    front.sort_by(|a, b| b.ret.total_cmp(&a.ret));
    // descending return means ascending variance along a nondominated set
    let mut value = 0.0;
    for (i, p) in front.iter().enumerate() {
        let next = front.get(i + 1).map_or(reference.ret_ref, |q| q.ret);
        value += (p.ret - next) * (reference.var_ref - p.risk);
    }
    Hypervolume { value, excluded }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HvRatios {
    pub worst: f64,
    pub worst_scenario: String,
    pub per_scenario: BTreeMap<String, f64>,
}

/// Per-regime ratio `HV(robust set under regime) / HV(regime front)` and
/// its minimum. Both zero counts as ratio 1.
pub fn worst_case_hv_ratio(
    robust: &[Portfolio],
    mu: &[f64],
    fronts: &[(&RegimeScenario, &ParetoFront)],
    reference: &HypervolumeRef,
) -> Result<HvRatios> {
    if fronts.is_empty() {
        return Err(Error::InvalidInput("no regime fronts to compare against".into()));
    }
    let mut per_scenario = BTreeMap::new();
    let mut worst = f64::INFINITY;
    let mut worst_scenario = String::new();
    for (scenario, front) in fronts {
        let label = scenario.label();
        let hv_robust = hypervolume_2d(&evaluate_under_scenario(robust, mu, scenario)?, reference).value;
        let hv_front = hypervolume_2d(&front.objectives(), reference).value;
        let ratio = if hv_front > 0.0 {
            hv_robust / hv_front
        } else if hv_robust == 0.0 {
            1.0
        } else {
            return Err(Error::UndefinedRatio(format!(
                "regime {label}: front hypervolume is zero but robust hypervolume is {hv_robust:e}"
            )));
        };
        if ratio < worst {
            worst = ratio;
            worst_scenario = label.to_string();
        }
        per_scenario.insert(label.to_string(), ratio);
    }
    Ok(HvRatios {
        worst,
        worst_scenario,
        per_scenario,
    })
}

/// Points whose objective vectors are dominated by some front point are
/// counted as "behind" the front.
pub fn count_dominated_by(points: &[ObjectivePoint], front: &[ObjectivePoint]) -> usize {
    points
        .iter()
        .filter(|p| front.iter().any(|q| dominates(q, p)))
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioGap {
    pub label: String,
    pub variance: f64,
    /// `variance - c`; negative means below the benchmark variance.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub ret: f64,
    pub regret: f64,
    pub argmax_scenario: String,
    pub scenarios: Vec<ScenarioGap>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GapCounts {
    pub below: usize,
    pub at: usize,
    pub above: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretReport {
    pub labels: Vec<String>,
    pub rows: Vec<ReportRow>,
    /// Per regime, in set order.
    pub counts: Vec<GapCounts>,
}

/// Gaps within this distance of zero count as "at" the benchmark.
pub const GAP_TOL: f64 = 1e-12;

impl RegretReport {
    pub fn counts_for(&self, label: &str) -> Option<GapCounts> {
        self.labels.iter().position(|l| l == label).map(|i| self.counts[i])
    }

    /// CSV: return, regret, argmax_scenario, then `variance_<label>` and
    /// `gap_<label>` per regime.
    pub fn to_csv(&self) -> String {
        let fmt = crate::data_io::fronts::fmt_float;
        let mut out = String::from("return,regret,argmax_scenario");
        for l in &self.labels {
            out.push_str(&format!(",variance_{l},gap_{l}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{}", fmt(r.ret), fmt(r.regret), r.argmax_scenario));
            for s in &r.scenarios {
                out.push_str(&format!(",{},{}", fmt(s.variance), fmt(s.gap)));
            }
            out.push('\n');
        }
        out
    }
}

/// Tabulates each portfolio's worst-case regret and its variance gap to
/// every regime's benchmark variance.
pub fn regret_report(portfolios: &[Portfolio], mu: &[f64], spec: &RegretSpec) -> Result<RegretReport> {
    let labels: Vec<String> = spec.uncertainty().labels().into_iter().map(String::from).collect();
    let mut counts = vec![GapCounts::default(); labels.len()];
    let mut rows = Vec::with_capacity(portfolios.len());
    for x in portfolios {
        let eval = crate::robust::regret_risk(x, spec)?;
        let scenarios: Vec<ScenarioGap> = spec
            .uncertainty()
            .iter()
            .zip(spec.references())
            .map(|(s, &c)| {
                let v = portfolio_variance(x, s.cov())?;
                Ok(ScenarioGap {
                    label: s.label().to_string(),
                    variance: v,
                    gap: v - c,
                })
            })
            .collect::<Result<_>>()?;
        for (k, g) in scenarios.iter().enumerate() {
            if g.gap < -GAP_TOL {
                counts[k].below += 1;
            } else if g.gap > GAP_TOL {
                counts[k].above += 1;
            } else {
                counts[k].at += 1;
            }
        }
        rows.push(ReportRow {
            ret: portfolio_return(x, mu)?,
            regret: eval.value,
            argmax_scenario: eval.argmax_scenario,
            scenarios,
        });
    }
    Ok(RegretReport { labels, rows, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::{compute_benchmark_set, BenchmarkTechnique};
    use crate::model::AssetUniverse;
    use crate::oracle;
    use crate::pareto::trace_scenario_front;
    use crate::robust::RegretMode;
    use crate::simplex::SolverConfig;
    use nalgebra::{DMatrix, DVector};
    use proptest::prelude::*;

    fn op(ret: f64, risk: f64) -> ObjectivePoint {
        ObjectivePoint::new(ret, risk)
    }

    fn diag(label: &str, v: &[f64]) -> RegimeScenario {
        RegimeScenario::from_covariance(label, DMatrix::from_diagonal(&DVector::from_row_slice(v))).unwrap()
    }

    #[test]
    fn single_rectangle() {
        let hv = hypervolume_2d(&[op(0.05, 0.01)], &HypervolumeRef::new(0.0, 0.05));
        assert!((hv.value - 0.002).abs() < 1e-15);
    }

    #[test]
    fn two_point_decomposition() {
        let r = HypervolumeRef::new(0.0, 0.05);
        let hv = hypervolume_2d(&[op(0.05, 0.01), op(0.10, 0.04)], &r);
        assert_eq!(hv.value, 0.05 * 0.01 + 0.05 * 0.04);
        assert!((hv.value - 0.0025).abs() < 1e-15);
        let with_dominated = hypervolume_2d(&[op(0.05, 0.01), op(0.10, 0.04), op(0.04, 0.03)], &r);
        assert_eq!(with_dominated.value, hv.value);
    }

    #[test]
    fn empty_and_excluded() {
        let r = HypervolumeRef::new(0.0, 0.05);
        assert_eq!(hypervolume_2d(&[], &r).value, 0.0);
        let hv = hypervolume_2d(&[op(-0.01, 0.01), op(0.05, 0.06)], &r);
        assert_eq!(hv, Hypervolume { value: 0.0, excluded: 2 });
    }

    fn pts() -> impl Strategy<Value = Vec<ObjectivePoint>> {
        prop::collection::vec((0.0..0.12f64, 0.0..0.05f64).prop_map(|(a, b)| op(a, b)), 0..25)
    }

    proptest! {
        #[test]
        fn monotone_under_insertion(set in pts(), extra in (0.0..0.12f64, 0.0..0.05f64)) {
            let r = HypervolumeRef::new(0.0, 0.05);
            let before = hypervolume_2d(&set, &r).value;
            let mut more = set.clone();
            more.push(op(extra.0, extra.1));
            prop_assert!(hypervolume_2d(&more, &r).value >= before - 1e-15);
        }

        #[test]
        fn dominance_invariant(set in pts()) {
            let r = HypervolumeRef::new(0.0, 0.05);
            let full = hypervolume_2d(&set, &r).value;
            let nd = nondominated_filter(set.clone(), |p| *p);
            prop_assert!((hypervolume_2d(&nd, &r).value - full).abs() <= 1e-15);
        }

        #[test]
        fn matches_rasterized_union(set in pts()) {
            let r = HypervolumeRef::new(0.0, 0.05);
            let exact = hypervolume_2d(&set, &r).value;
            let tuples: Vec<(f64, f64)> = set.iter().map(|p| (p.ret, p.risk)).collect();
            let raster = oracle::hypervolume_by_rectangles(&tuples, r.ret_ref, r.var_ref);
            prop_assert!((exact - raster).abs() <= 1e-12, "{exact} vs {raster}");
        }
    }

    #[test]
    fn vertex_and_identity_evaluations() {
        let s = diag("A", &[0.01, 0.04]);
        let e = evaluate_under_scenario(&[Portfolio::vertex(2, 1)], &[0.05, 0.1], &s).unwrap();
        assert_eq!(e[0], op(0.1, 0.04));
        assert!(evaluate_under_scenario(&[Portfolio::vertex(3, 1)], &[0.05, 0.1], &s).is_err());
    }

    #[test]
    fn self_comparison_ratio_is_one() {
        let mu = [0.05, 0.1];
        let s = diag("A", &[0.01, 0.04]);
        let cfg = SolverConfig::default();
        let front = trace_scenario_front(&mu, &s, 30, &cfg).unwrap();
        let xs: Vec<Portfolio> = front.points.iter().map(|p| p.x.clone()).collect();
        let r = HypervolumeRef::new(0.0, 0.05);
        let ratios = worst_case_hv_ratio(&xs, &mu, &[(&s, &front)], &r).unwrap();
        assert!((ratios.worst - 1.0).abs() < 1e-9);
        let empty = worst_case_hv_ratio(&[], &mu, &[(&s, &front)], &r).unwrap();
        assert_eq!(empty.worst, 0.0);
    }

    #[test]
    fn two_regime_hand_instance() {
        // vertices only: robust set {e1, e2}; fronts replaced by the same set
        let mu = [0.05, 0.1];
        let a = diag("A", &[0.01, 0.04]);
        let b = diag("B", &[0.02, 0.03]);
        let r = HypervolumeRef::new(0.0, 0.05);
        let xs = [Portfolio::vertex(2, 0), Portfolio::vertex(2, 1)];
        let cfg = SolverConfig::default();
        let fa = trace_scenario_front(&mu, &a, 40, &cfg).unwrap();
        let fb = trace_scenario_front(&mu, &b, 40, &cfg).unwrap();
        let ratios = worst_case_hv_ratio(&xs, &mu, &[(&a, &fa), (&b, &fb)], &r).unwrap();
        // by hand: A -> 0.05*0.04 + 0.05*0.01, B -> 0.05*0.03 + 0.05*0.02
        let hv_a = hypervolume_2d(&evaluate_under_scenario(&xs, &mu, &a).unwrap(), &r).value;
        let hv_b = hypervolume_2d(&evaluate_under_scenario(&xs, &mu, &b).unwrap(), &r).value;
        assert!((hv_a - 0.0025).abs() < 1e-15);
        assert!((hv_b - 0.0025).abs() < 1e-15);
        let front_a = hypervolume_2d(&fa.objectives(), &r).value;
        assert!((ratios.per_scenario["A"] - hv_a / front_a).abs() < 1e-15);
        assert!(ratios.per_scenario.values().all(|&v| v <= 1.0 + 1e-9));
        let min = ratios.per_scenario.values().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(ratios.worst, min);
    }

    #[test]
    fn default_reference_covers_all_vertices() {
        let u = UncertaintySet::new(vec![diag("A", &[0.01, 0.04]), diag("B", &[0.09, 0.02])]).unwrap();
        let r = HypervolumeRef::default_for(&u);
        assert!((r.var_ref - 0.099).abs() < 1e-15);
        assert_eq!(r.ret_ref, 0.0);
    }

    #[test]
    fn report_rows_and_counts() {
        let u = UncertaintySet::new(vec![diag("A", &[0.01, 0.04]), diag("B", &[0.02, 0.03])]).unwrap();
        let universe = AssetUniverse::new(vec!["a".into(), "b".into()], vec![0.05, 0.1]).unwrap();
        let cfg = SolverConfig::default();
        let bench = compute_benchmark_set(&BenchmarkTechnique::Ideal, &universe, &u, &cfg).unwrap();
        let bx = bench.entries[0].benchmark.portfolio.clone();
        let spec = RegretSpec::new(u, bench, RegretMode::Absolute).unwrap();

        let rep = regret_report(&[bx.clone()], universe.mu(), &spec).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(rep.rows[0].scenarios[0].gap.abs() < 1e-9);

        let empty = regret_report(&[], universe.mu(), &spec).unwrap();
        assert!(empty.rows.is_empty());
        assert!(empty.counts.iter().all(|c| *c == GapCounts::default()));

        let xs = vec![bx, Portfolio::vertex(2, 0), Portfolio::vertex(2, 1), Portfolio::uniform(2)];
        let rep = regret_report(&xs, universe.mu(), &spec).unwrap();
        for (k, c) in rep.counts.iter().enumerate() {
            let below = rep.rows.iter().filter(|r| r.scenarios[k].gap < -GAP_TOL).count();
            let above = rep.rows.iter().filter(|r| r.scenarios[k].gap > GAP_TOL).count();
            assert_eq!((c.below, c.above, c.below + c.at + c.above), (below, above, xs.len()));
        }
        // the ideal benchmark is the regime minimum, nothing sits below it
        assert_eq!(rep.counts_for("A").unwrap().below, 0);
        let csv = rep.to_csv();
        assert!(csv.starts_with("return,regret,argmax_scenario,variance_A,gap_A,variance_B,gap_B\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
