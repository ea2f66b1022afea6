//! Robust fronts for the four practitioner benchmarks on a synthetic
//! 15-asset, 3-regime dataset.
//!
//!     cargo run --release --example robust_front [seed]

use std::time::Instant;

use regretfolio::benchmark::{compute_benchmark_set, BenchmarkTechnique};
use regretfolio::data_io::{generate_synthetic, GeneratorSpec};
use regretfolio::robust::{trace_robust_front, RegretMode, RegretSpec, RobustConfig};

fn main() -> regretfolio::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let (universe, regimes) = generate_synthetic(&GeneratorSpec::with_seed(seed))?.to_domain()?;
    let config = RobustConfig::default();

    for technique in BenchmarkTechnique::practitioner_set() {
        let started = Instant::now();
        let benchmarks = compute_benchmark_set(&technique, &universe, &regimes, &config.solver)?;
        let spec = RegretSpec::new(regimes.clone(), benchmarks, RegretMode::Absolute)?;
        let front = trace_robust_front(universe.mu(), &spec, 30, &config)?;
        println!(
            "{:<14} {:>3} points  regret {:.3e} .. {:.3e}  ({:.1?})",
            technique.name(),
            front.len(),
            front.first().map_or(0.0, |p| p.regret),
            front.last().map_or(0.0, |p| p.regret),
            started.elapsed()
        );
        for p in front.iter().step_by(6) {
            println!("    return {:.4}  regret {:.3e}  worst regime {}", p.ret, p.regret, p.argmax_scenario);
        }
    }
    Ok(())
}
