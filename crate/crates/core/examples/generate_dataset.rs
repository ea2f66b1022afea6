//! Draws a synthetic dataset, prints its shape and writes it as JSON.
//!
//!     cargo run --example generate_dataset [seed] [path]

use regretfolio::data_io::{generate_synthetic, mean_off_diagonal, GeneratorSpec};

fn main() -> regretfolio::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let path = args.next().unwrap_or_else(|| "dataset.json".into());

    let data = generate_synthetic(&GeneratorSpec::with_seed(seed))?;
    println!("{} assets, returns {:.4} .. {:.4}", data.assets.len(), data.mu[0], data.mu[data.mu.len() - 1]);
    for r in &data.regimes {
        println!("regime {}: mean correlation {:.3}", r.label, mean_off_diagonal(&r.corr));
    }
    data.write(&path)?;

    // the file loads back into validated domain objects
    let (universe, regimes) = regretfolio::data_io::load_dataset(&path)?;
    println!("wrote {path}: {} assets, regimes {:?}", universe.len(), regimes.labels());
    Ok(())
}
