//! Scores robust fronts against the regime fronts by worst-case
//! hypervolume ratio, for every practitioner benchmark.
//!
//!     cargo run --release --example hypervolume

use regretfolio::benchmark::{compute_benchmark_set, BenchmarkTechnique};
use regretfolio::data_io::{generate_synthetic, GeneratorSpec};
use regretfolio::evaluation::{worst_case_hv_ratio, HypervolumeRef};
use regretfolio::pareto::trace_scenario_front;
use regretfolio::robust::{trace_robust_front, RegretMode, RegretSpec, RobustConfig};

fn main() -> regretfolio::Result<()> {
    let (universe, regimes) = generate_synthetic(&GeneratorSpec::default())?.to_domain()?;
    let mu = universe.mu();
    let config = RobustConfig::default();
    let reference = HypervolumeRef::default_for(&regimes);

    let fronts = regimes
        .iter()
        .map(|s| trace_scenario_front(mu, s, 40, &config.solver))
        .collect::<regretfolio::Result<Vec<_>>>()?;
    let pairs: Vec<_> = regimes.iter().zip(fronts.iter()).collect();

    for t in BenchmarkTechnique::practitioner_set() {
        let benchmarks = compute_benchmark_set(&t, &universe, &regimes, &config.solver)?;
        let spec = RegretSpec::new(regimes.clone(), benchmarks, RegretMode::Absolute)?;
        let robust: Vec<_> = trace_robust_front(mu, &spec, 30, &config)?
            .into_iter()
            .map(|p| p.x)
            .collect();
        let r = worst_case_hv_ratio(&robust, mu, &pairs, &reference)?;
        let per: Vec<String> = r.per_scenario.iter().map(|(l, v)| format!("{l} {v:.4}")).collect();
        println!("{:<13} worst {:.4} ({})  [{}]", t.name(), r.worst, r.worst_scenario, per.join(", "));
    }
    Ok(())
}
