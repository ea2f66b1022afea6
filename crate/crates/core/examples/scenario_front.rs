//! Efficient front of each regime, written as CSV and as one SVG with the
//! fronts overlaid.
//!
//!     cargo run --release --example scenario_front [out_dir]

use std::path::PathBuf;

use regretfolio::data_io::{generate_synthetic, write_front_csv, write_svg_scatter, GeneratorSpec, Series};
use regretfolio::pareto::trace_scenario_front;
use regretfolio::SolverConfig;

fn main() -> regretfolio::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fronts".into()));
    std::fs::create_dir_all(&out)?;
    let (universe, regimes) = generate_synthetic(&GeneratorSpec::default())?.to_domain()?;

    let mut series = Vec::new();
    for s in regimes.iter() {
        let front = trace_scenario_front(universe.mu(), s, 40, &SolverConfig::default())?;
        let (lo, hi) = (&front.points[0], &front.points[front.points.len() - 1]);
        println!(
            "regime {}: {} points, variance {:.3e} at return {:.4} up to {:.3e} at {:.4}",
            s.label(),
            front.points.len(),
            lo.risk,
            lo.ret,
            hi.risk,
            hi.ret
        );
        write_front_csv(&front.points, universe.len(), out.join(format!("front_{}.csv", s.label())))?;
        series.push(Series::new(s.label(), front.points.iter().map(|p| (p.risk, p.ret)).collect()));
    }
    write_svg_scatter(&series, "Regime fronts", "variance", "return", out.join("fronts.svg"))?;
    println!("wrote {}", out.display());
    Ok(())
}
