//! Robust points for one technique, broken down by regime: variance,
//! distance to the benchmark variance, and which regime sets the regret.
//!
//!     cargo run --release --example regret_report [weighted-sum|sharpe|percentile|bounded-risk]

use regretfolio::benchmark::{compute_benchmark_set, BenchmarkTechnique};
use regretfolio::data_io::{generate_synthetic, GeneratorSpec};
use regretfolio::evaluation::regret_report;
use regretfolio::robust::{trace_robust_front, RegretMode, RegretSpec, RobustConfig};

fn main() -> regretfolio::Result<()> {
    let technique: BenchmarkTechnique = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "weighted-sum".into())
        .parse()?;
    let (universe, regimes) = generate_synthetic(&GeneratorSpec::default())?.to_domain()?;
    let config = RobustConfig::default();
    let benchmarks = compute_benchmark_set(&technique, &universe, &regimes, &config.solver)?;
    let spec = RegretSpec::new(regimes.clone(), benchmarks, RegretMode::Absolute)?;

    let front = trace_robust_front(universe.mu(), &spec, 20, &config)?;
    let xs: Vec<_> = front.iter().map(|p| p.x.clone()).collect();
    let report = regret_report(&xs, universe.mu(), &spec)?;
    print!("{}", report.to_csv());
    for label in &report.labels {
        let c = report.counts_for(label).expect("label from report");
        println!("regime {label}: {} below benchmark, {} at, {} above", c.below, c.at, c.above);
    }
    Ok(())
}
