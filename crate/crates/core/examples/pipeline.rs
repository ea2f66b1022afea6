//! The command-line workflow driven from code: generate, benchmarks,
//! fronts, robust fronts and evaluation, all into one directory.
//!
//!     cargo run --release --example pipeline [out_dir]

use regretfolio::cli::run;

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "pipeline-out".into());
    let data = format!("{out}/dataset.json");
    let mut steps: Vec<Vec<String>> = vec![
        vec!["generate".into(), "--out".into(), data.clone()],
        vec!["benchmarks".into()],
        vec!["front".into()],
        vec!["robust".into(), "--technique".into(), "all".into()],
    ];
    let mut evaluate = vec!["evaluate".to_string()];
    for t in ["bounded-risk", "weighted-sum", "sharpe", "percentile"] {
        evaluate.push("--robust-csv".into());
        evaluate.push(format!("{out}/robust_{t}.csv"));
    }
    steps.push(evaluate);

    for (i, step) in steps.iter_mut().enumerate() {
        if i > 0 {
            step.extend(["--dataset".into(), data.clone(), "--out".into(), out.clone()]);
        }
        let code = run(std::iter::once("regretfolio".to_string()).chain(step.iter().cloned()));
        if code != 0 {
            eprintln!("{} failed with exit code {code}", step[0]);
            std::process::exit(code);
        }
    }
}
