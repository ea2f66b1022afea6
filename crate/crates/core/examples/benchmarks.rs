//! Every benchmark technique in every regime of the default dataset.
//!
//!     cargo run --example benchmarks

use regretfolio::benchmark::{compute_benchmark_set, BenchmarkTechnique};
use regretfolio::data_io::{generate_synthetic, GeneratorSpec};
use regretfolio::simplex::max_variance_over_simplex;
use regretfolio::SolverConfig;

fn main() -> regretfolio::Result<()> {
    let (universe, regimes) = generate_synthetic(&GeneratorSpec::default())?.to_domain()?;
    let config = SolverConfig::default();

    for s in regimes.iter() {
        let (v_max, _) = max_variance_over_simplex(s.cov());
        println!("regime {}: largest attainable variance {v_max:.4e}", s.label());
    }
    let mut techniques = BenchmarkTechnique::practitioner_set().to_vec();
    techniques.push(BenchmarkTechnique::Ideal);
    for t in techniques {
        let set = compute_benchmark_set(&t, &universe, &regimes, &config)?;
        for e in &set.entries {
            let top = e
                .benchmark
                .portfolio
                .weights()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, w)| format!("{} {:.2}", universe.names()[i], w))
                .unwrap_or_default();
            println!(
                "{:<13} {}  return {:.4}  variance {:.4e}  largest holding {top}",
                t.name(),
                e.label,
                e.benchmark.ret,
                e.benchmark.variance
            );
        }
    }
    Ok(())
}
