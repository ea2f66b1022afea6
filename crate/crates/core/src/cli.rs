//! Command-line front end: `generate | benchmarks | front | robust | evaluate`.
//!
//! Settings resolve as flags, then an optional JSON config file
//! (`--config`), then built-in defaults. Every command except `generate`
//! writes into the `--out` directory together with a `manifest.json` that
//! records the resolved settings. Exit codes: 0 success, 1 validation or
//! usage, 2 IO, 3 solver failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::benchmark::{compute_benchmark_set, BenchmarkSet, BenchmarkTechnique, DEFAULT_CAP, DEFAULT_FRACTION, DEFAULT_LAMBDA};
use crate::data_io::fronts::fmt_float;
use crate::data_io::{
    front_csv_string, generate_synthetic, load_dataset, mean_off_diagonal, read_front_csv, render_svg_scatter,
    technique_color, GeneratorSpec, Series, PALETTE,
};
use crate::error::{Error, Result};
use crate::evaluation::{evaluate_under_scenario, regret_report, worst_case_hv_ratio, HvRatios, HypervolumeRef};
use crate::model::{AssetUniverse, Portfolio, UncertaintySet};
use crate::pareto::{trace_scenario_front, ParetoFront, DEFAULT_N_POINTS};
use crate::robust::{trace_robust_front, RegretMode, RegretSpec, RobustConfig};
use crate::simplex::{SignMode, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

const DEFAULT_OUT: &str = "regretfolio-out";
const DEFAULT_DATASET_FILE: &str = "dataset.json";
const TECHNIQUES: [&str; 6] = ["bounded-risk", "weighted-sum", "sharpe", "percentile", "ideal", "all"];

/// Maps a library error onto the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Io(_) => EXIT_IO,
        Error::InfeasibleCap { .. }
        | Error::InfeasibleReturn { .. }
        | Error::NotConverged(_)
        | Error::DegenerateRisk
        | Error::DegenerateRange { .. }
        | Error::UndefinedRatio(_) => EXIT_SOLVER,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Debug, Parser)]
#[command(name = "regretfolio", version, about = "Benchmark-regret robust mean-variance portfolio fronts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic dataset (JSON) to --out.
    Generate {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        n_assets: Option<usize>,
    },
    /// Benchmark portfolios per regime, as CSV plus one SVG per regime.
    Benchmarks {
        #[command(flatten)]
        shared: Shared,
    },
    /// Efficient front of one regime (all regimes when --scenario is absent).
    Front {
        #[command(flatten)]
        shared: Shared,
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Robust benchmark-regret fronts, regret reports and overlay SVGs.
    Robust {
        #[command(flatten)]
        shared: Shared,
    },
    /// Hypervolume ratios of robust front CSVs against the regime fronts.
    Evaluate {
        #[command(flatten)]
        shared: Shared,
        /// Robust front CSV; repeat to compare several.
        #[arg(long = "robust-csv", required = true)]
        robust_csv: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
struct Shared {
    /// Optional JSON file with default settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// Output directory (`generate`: output file).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "REGRETFOLIO_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long, value_parser = TECHNIQUES)]
    technique: Option<String>,
    #[arg(long)]
    cap: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    fraction: Option<f64>,
    #[arg(long, value_parser = ["standard", "paper-literal"])]
    sign_mode: Option<String>,
    #[arg(long, value_parser = ["absolute", "signed"])]
    mode: Option<String>,
    /// Number of random starts for the robust solver.
    #[arg(long)]
    multistart: Option<usize>,
    #[arg(long)]
    ref_return: Option<f64>,
    #[arg(long)]
    ref_variance: Option<f64>,
}

/// Contents of a `--config` file. Every key is optional; unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub n_points: Option<usize>,
    pub n_assets: Option<usize>,
    pub scenario: Option<String>,
    pub technique: Option<String>,
    pub cap: Option<f64>,
    pub lambda: Option<f64>,
    pub fraction: Option<f64>,
    pub sign_mode: Option<SignMode>,
    pub mode: Option<RegretMode>,
    pub multistart: Option<usize>,
    pub iterations: Option<usize>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
    pub ref_return: Option<f64>,
    pub ref_variance: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| {
            Error::Parse(format!(
                "{}: line {}, column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })
    }
}

/// Fully resolved settings; recorded in the run manifest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub dataset: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: u64,
    pub n_points: usize,
    pub technique: Option<String>,
    pub cap: f64,
    pub lambda: f64,
    pub fraction: f64,
    pub sign_mode: SignMode,
    pub mode: RegretMode,
    pub multistart: usize,
    pub iterations: usize,
    pub solver: SolverConfig,
    pub ref_return: Option<f64>,
    pub ref_variance: Option<f64>,
}

impl Settings {
    fn resolve(flags: &Shared, cfg: &RunConfig, default_out: &str) -> Result<Self> {
        let robust = RobustConfig::default();
        let solver_default = SolverConfig::default();
        let sign_mode = match &flags.sign_mode {
            Some(s) if s == "paper-literal" => SignMode::PaperLiteral,
            Some(_) => SignMode::Standard,
            None => cfg.sign_mode.unwrap_or_default(),
        };
        let mode = match &flags.mode {
            Some(s) => s.parse()?,
            None => cfg.mode.unwrap_or_default(),
        };
        let technique = flags.technique.clone().or_else(|| cfg.technique.clone());
        if let Some(t) = &technique {
            if !TECHNIQUES.contains(&t.as_str()) {
                return Err(Error::Validation(format!(
                    "unknown technique {t:?} (expected one of {})",
                    TECHNIQUES.join(", ")
                )));
            }
        }
        let solver = SolverConfig {
            max_iters: cfg.max_iters.unwrap_or(solver_default.max_iters),
            tol: cfg.tol.unwrap_or(solver_default.tol),
            seed: flags.seed.or(cfg.seed).unwrap_or(solver_default.seed),
            ..solver_default
        };
        solver.validate()?;
        let s = Self {
            dataset: flags.dataset.clone().or_else(|| cfg.dataset.clone()),
            out: flags
                .out
                .clone()
                .or_else(|| cfg.out.clone())
                .unwrap_or_else(|| PathBuf::from(default_out)),
            seed: solver.seed,
            n_points: flags.n_points.or(cfg.n_points).unwrap_or(DEFAULT_N_POINTS),
            technique,
            cap: flags.cap.or(cfg.cap).unwrap_or(DEFAULT_CAP),
            lambda: flags.lambda.or(cfg.lambda).unwrap_or(DEFAULT_LAMBDA),
            fraction: flags.fraction.or(cfg.fraction).unwrap_or(DEFAULT_FRACTION),
            sign_mode,
            mode,
            multistart: flags.multistart.or(cfg.multistart).unwrap_or(robust.random_starts),
            iterations: cfg.iterations.unwrap_or(robust.iterations),
            solver,
            ref_return: flags.ref_return.or(cfg.ref_return),
            ref_variance: flags.ref_variance.or(cfg.ref_variance),
        };
        if s.n_points < 2 {
            return Err(Error::Validation("--n-points must be at least 2".into()));
        }
        if s.iterations == 0 {
            return Err(Error::Validation("iterations must be positive".into()));
        }
        Ok(s)
    }

    /// The selected techniques with their parameters; `all` (or no
    /// selection) means the four practitioner techniques.
    fn techniques(&self) -> Result<Vec<BenchmarkTechnique>> {
        let names: Vec<&str> = match self.technique.as_deref() {
            None | Some("all") => vec!["bounded-risk", "weighted-sum", "sharpe", "percentile"],
            Some(t) => vec![t],
        };
        names
            .into_iter()
            .map(|n| {
                let t = match n.parse::<BenchmarkTechnique>()? {
                    BenchmarkTechnique::BoundedRisk { .. } => BenchmarkTechnique::BoundedRisk { cap: self.cap },
                    BenchmarkTechnique::WeightedSum { .. } => BenchmarkTechnique::WeightedSum {
                        lambda: self.lambda,
                        sign_mode: self.sign_mode,
                    },
                    BenchmarkTechnique::Percentile { .. } => BenchmarkTechnique::Percentile { fraction: self.fraction },
                    other => other,
                };
                t.validate().map_err(|e| Error::Validation(e.to_string()))?;
                Ok(t)
            })
            .collect()
    }

    fn robust_config(&self) -> RobustConfig {
        RobustConfig {
            solver: self.solver,
            random_starts: self.multistart,
            iterations: self.iterations,
            ..RobustConfig::default()
        }
    }

    fn load(&self) -> Result<(AssetUniverse, UncertaintySet)> {
        let path = self
            .dataset
            .as_ref()
            .ok_or_else(|| Error::Validation("--dataset is required".into()))?;
        load_dataset(path)
    }

    fn reference(&self, uncertainty: &UncertaintySet) -> HypervolumeRef {
        let d = HypervolumeRef::default_for(uncertainty);
        HypervolumeRef::new(self.ref_return.unwrap_or(d.ret_ref), self.ref_variance.unwrap_or(d.var_ref))
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    settings: &'a Settings,
    defaults: Defaults,
    outputs: Vec<String>,
}

#[derive(Serialize)]
struct Defaults {
    cap: f64,
    lambda: f64,
    fraction: f64,
    n_points: usize,
    robust: RobustConfig,
}

/// Collects output files for one run and writes the manifest last.
struct RunDir {
    dir: PathBuf,
    outputs: Vec<String>,
}

impl RunDir {
    fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            outputs: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, contents)?;
        self.outputs.push(name.to_string());
        Ok(path)
    }

    fn finish(mut self, command: &'static str, settings: &Settings) -> Result<()> {
        self.outputs.sort();
        let manifest = Manifest {
            tool: "regretfolio",
            version: env!("CARGO_PKG_VERSION"),
            command,
            settings,
            defaults: Defaults {
                cap: DEFAULT_CAP,
                lambda: DEFAULT_LAMBDA,
                fraction: DEFAULT_FRACTION,
                n_points: DEFAULT_N_POINTS,
                robust: RobustConfig::default(),
            },
            outputs: self.outputs,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        fs::write(self.dir.join("manifest.json"), text)?;
        Ok(())
    }
}

/// Keeps file names portable.
fn file_label(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn scenario_fronts(universe: &AssetUniverse, uncertainty: &UncertaintySet, s: &Settings) -> Result<Vec<ParetoFront>> {
    uncertainty
        .iter()
        .map(|sc| trace_scenario_front(universe.mu(), sc, s.n_points, &s.solver).map_err(|e| e.in_scenario(sc.label())))
        .collect()
}

fn front_series(front: &ParetoFront) -> Series {
    Series::new(
        format!("Pareto front {}", front.label),
        front.points.iter().map(|p| (p.risk, p.ret)).collect(),
    )
    .with_color(PALETTE[0])
    .with_radius(2.5)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn settings_for(shared: &Shared, default_out: &str) -> Result<(Settings, RunConfig)> {
    let cfg = match &shared.config {
        Some(p) => RunConfig::load(p).map_err(|e| match e {
            Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", p.display()))),
            other => other,
        })?,
        None => RunConfig::default(),
    };
    Ok((Settings::resolve(shared, &cfg, default_out)?, cfg))
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Generate { shared, n_assets } => {
            let (s, cfg) = settings_for(&shared, DEFAULT_DATASET_FILE)?;
            cmd_generate(&s, n_assets.or(cfg.n_assets))
        }
        Command::Benchmarks { shared } => cmd_benchmarks(&settings_for(&shared, DEFAULT_OUT)?.0),
        Command::Front { shared, scenario } => {
            let (s, cfg) = settings_for(&shared, DEFAULT_OUT)?;
            cmd_front(&s, scenario.or(cfg.scenario).as_deref())
        }
        Command::Robust { shared } => cmd_robust(&settings_for(&shared, DEFAULT_OUT)?.0),
        Command::Evaluate { shared, robust_csv } => cmd_evaluate(&settings_for(&shared, DEFAULT_OUT)?.0, &robust_csv),
    }
}

fn cmd_generate(s: &Settings, n_assets: Option<usize>) -> Result<()> {
    let spec = GeneratorSpec {
        seed: s.seed,
        n_assets: n_assets.unwrap_or(GeneratorSpec::default().n_assets),
        ..GeneratorSpec::default()
    };
    let data = generate_synthetic(&spec).map_err(|e| Error::Validation(e.to_string()))?;
    if let Some(parent) = s.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    data.write(&s.out)?;
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let (rlo, rhi) = range(&data.mu);
    let (slo, shi) = range(&data.regimes[0].stds);
    println!("wrote {} (seed {})", s.out.display(), s.seed);
    println!("assets: {}", data.assets.len());
    println!("returns: {rlo:.4} .. {rhi:.4}");
    println!("volatilities: {slo:.4} .. {shi:.4}");
    for r in &data.regimes {
        println!("regime {}: mean correlation {:.4}", r.label, mean_off_diagonal(&r.corr));
    }
    Ok(())
}

fn benchmarks_csv(sets: &[BenchmarkSet], n: usize) -> String {
    let mut out = String::from("scenario,technique,return,variance");
    for i in 1..=n {
        out.push_str(&format!(",weight_{i}"));
    }
    out.push('\n');
    for set in sets {
        for e in &set.entries {
            out.push_str(&format!(
                "{},{},{},{}",
                e.label,
                set.technique.name(),
                fmt_float(e.benchmark.ret),
                fmt_float(e.benchmark.variance)
            ));
            for w in e.benchmark.portfolio.weights() {
                out.push_str(&format!(",{}", fmt_float(*w)));
            }
            out.push('\n');
        }
    }
    out
}

fn cmd_benchmarks(s: &Settings) -> Result<()> {
    let techniques = s.techniques()?;
    let (universe, uncertainty) = s.load()?;
    let sets = techniques
        .iter()
        .map(|t| compute_benchmark_set(t, &universe, &uncertainty, &s.solver))
        .collect::<Result<Vec<_>>>()?;
    let fronts = scenario_fronts(&universe, &uncertainty, s)?;

    let mut run = RunDir::create(&s.out)?;
    run.write("benchmarks.csv", &benchmarks_csv(&sets, universe.len()))?;
    for front in &fronts {
        let mut series = vec![front_series(front)];
        for set in &sets {
            let b = set.get(&front.label).expect("benchmark for every regime");
            series.push(
                Series::new(set.technique.name(), vec![(b.variance, b.ret)])
                    .with_color(technique_color(&set.technique))
                    .with_radius(6.0),
            );
        }
        let svg = render_svg_scatter(
            &series,
            &format!("Pareto front and benchmarks, regime {}", front.label),
            "variance",
            "return",
        )?;
        run.write(&format!("benchmarks_{}.svg", file_label(&front.label)), &svg)?;
    }
    for set in &sets {
        for e in &set.entries {
            println!(
                "{:<13} {:<4} return {:.6}  variance {:.6e}",
                set.technique.name(),
                e.label,
                e.benchmark.ret,
                e.benchmark.variance
            );
        }
    }
    run.finish("benchmarks", s)
}

fn cmd_front(s: &Settings, scenario: Option<&str>) -> Result<()> {
    let (universe, uncertainty) = s.load()?;
    let selected: Vec<_> = match scenario {
        Some(label) => vec![uncertainty.get(label).ok_or_else(|| {
            Error::Validation(format!(
                "unknown scenario {label:?}; valid labels: {}",
                uncertainty.labels().join(", ")
            ))
        })?],
        None => uncertainty.iter().collect(),
    };
    let mut run = RunDir::create(&s.out)?;
    for sc in selected {
        let front = trace_scenario_front(universe.mu(), sc, s.n_points, &s.solver).map_err(|e| e.in_scenario(sc.label()))?;
        let name = file_label(sc.label());
        run.write(&format!("front_{name}.csv"), &front_csv_string(&front.points, universe.len())?)?;
        let svg = render_svg_scatter(&[front_series(&front)], &format!("Pareto front, regime {}", sc.label()), "variance", "return")?;
        run.write(&format!("front_{name}.svg"), &svg)?;
        println!(
            "regime {}: {} points ({} targets skipped)",
            sc.label(),
            front.points.len(),
            front.skipped
        );
    }
    run.finish("front", s)
}

fn cmd_robust(s: &Settings) -> Result<()> {
    let techniques = s.techniques()?;
    let (universe, uncertainty) = s.load()?;
    let mu = universe.mu();
    let fronts = scenario_fronts(&universe, &uncertainty, s)?;
    let cfg = s.robust_config();
    let mut run = RunDir::create(&s.out)?;

    for t in &techniques {
        let benchmarks = compute_benchmark_set(t, &universe, &uncertainty, &s.solver)?;
        let spec = RegretSpec::new(uncertainty.clone(), benchmarks, s.mode)?;
        let robust = trace_robust_front(mu, &spec, s.n_points, &cfg)?;
        let name = t.name();
        run.write(&format!("robust_{name}.csv"), &front_csv_string(&robust, universe.len())?)?;
        let xs: Vec<Portfolio> = robust.iter().map(|p| p.x.clone()).collect();
        let report = regret_report(&xs, mu, &spec)?;
        run.write(&format!("regret_report_{name}.csv"), &report.to_csv())?;

        let color = technique_color(t);
        let regret_svg = render_svg_scatter(
            &[Series::new(format!("robust ({name})"), robust.iter().map(|p| (p.regret, p.ret)).collect()).with_color(color)],
            &format!("Robust front, {name} benchmarks"),
            "worst-case regret",
            "return",
        )?;
        run.write(&format!("robust_{name}.svg"), &regret_svg)?;

        for (sc, front) in uncertainty.iter().zip(&fronts) {
            let evaluated = evaluate_under_scenario(&xs, mu, sc)?;
            let b = spec.benchmarks().get(sc.label()).expect("benchmark for every regime");
            let series = vec![
                front_series(front),
                Series::new(format!("robust ({name})"), evaluated.iter().map(|p| (p.risk, p.ret)).collect())
                    .with_color(color),
                Series::new("benchmark", vec![(b.variance, b.ret)])
                    .with_color("#7f7f7f")
                    .with_radius(6.0),
            ];
            let svg = render_svg_scatter(
                &series,
                &format!("Robust solutions in regime {}, {name} benchmarks", sc.label()),
                "variance",
                "return",
            )?;
            run.write(&format!("robust_{name}_{}.svg", file_label(sc.label())), &svg)?;
        }

        let unsettled = robust.iter().filter(|p| !p.converged).count();
        match (robust.first(), robust.last()) {
            (Some(a), Some(b)) => println!(
                "{name}: {} robust points, return {:.4} .. {:.4}, regret {:.4e} .. {:.4e}{}",
                robust.len(),
                a.ret,
                b.ret,
                a.regret,
                b.regret,
                if unsettled > 0 { format!(" ({unsettled} not settled)") } else { String::new() }
            ),
            _ => println!("{name}: no robust points"),
        }
    }
    run.finish("robust", s)
}

#[derive(Serialize)]
struct EvaluationRecord {
    source: String,
    technique: String,
    points: usize,
    ratios: HvRatios,
}

#[derive(Serialize)]
struct EvaluationFile {
    reference: HypervolumeRef,
    results: Vec<EvaluationRecord>,
}

/// Technique used for a CSV's regret report: the flag if it names a single
/// technique, else the `robust_<technique>` file stem, else the ideal
/// benchmark.
fn technique_for(s: &Settings, csv: &Path) -> Result<BenchmarkTechnique> {
    if s.technique.as_deref().is_some_and(|t| t != "all") {
        return Ok(s.techniques()?.remove(0));
    }
    let stem = csv.file_stem().and_then(|x| x.to_str()).unwrap_or("");
    if let Some(name) = stem.strip_prefix("robust_") {
        if let Ok(t) = name.parse::<BenchmarkTechnique>() {
            let resolved = Settings {
                technique: Some(t.name().to_string()),
                ..s.clone()
            };
            return Ok(resolved.techniques()?.remove(0));
        }
    }
    Ok(BenchmarkTechnique::Ideal)
}

fn cmd_evaluate(s: &Settings, csvs: &[PathBuf]) -> Result<()> {
    let (universe, uncertainty) = s.load()?;
    let mu = universe.mu();
    let fronts = scenario_fronts(&universe, &uncertainty, s)?;
    let reference = s.reference(&uncertainty);
    let pairs: Vec<_> = uncertainty.iter().zip(fronts.iter()).collect();
    let mut run = RunDir::create(&s.out)?;
    let mut results = Vec::new();

    for path in csvs {
        let (n, rows) = read_front_csv(path).map_err(|e| match e {
            Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
            other => Error::Validation(format!("{}: {other}", path.display())),
        })?;
        if n != universe.len() {
            return Err(Error::Validation(format!(
                "{}: {n} weight columns for a {}-asset dataset",
                path.display(),
                universe.len()
            )));
        }
        let xs = rows
            .into_iter()
            .map(|r| Portfolio::new(r.weights))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        let ratios = worst_case_hv_ratio(&xs, mu, &pairs, &reference)?;

        let technique = technique_for(s, path)?;
        let benchmarks = compute_benchmark_set(&technique, &universe, &uncertainty, &s.solver)?;
        let spec = RegretSpec::new(uncertainty.clone(), benchmarks, s.mode)?;
        let report = regret_report(&xs, mu, &spec)?;
        let stem = path.file_stem().and_then(|x| x.to_str()).unwrap_or("robust");
        run.write(&format!("regret_report_{}.csv", file_label(stem)), &report.to_csv())?;

        println!("{} ({} points, regret vs {technique}):", path.display(), xs.len());
        for (label, r) in &ratios.per_scenario {
            println!("  regime {label}: hypervolume ratio {r:.6}");
        }
        println!("  worst case: {:.6} (regime {})", ratios.worst, ratios.worst_scenario);
        results.push(EvaluationRecord {
            source: path.display().to_string(),
            technique: technique.name().to_string(),
            points: xs.len(),
            ratios,
        });
    }

    if results.len() > 1 {
        let mut order: Vec<&EvaluationRecord> = results.iter().collect();
        order.sort_by(|a, b| b.ratios.worst.total_cmp(&a.ratios.worst));
        let line: Vec<String> = order
            .iter()
            .map(|r| format!("{} ({:.6})", r.source, r.ratios.worst))
            .collect();
        println!("ordering by worst-case ratio: {}", line.join(" > "));
    }
    let file = EvaluationFile { reference, results };
    run.write("evaluation.json", &(serde_json::to_string_pretty(&file).expect("serializes") + "\n"))?;
    run.finish("evaluate", s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_disjoint() {
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), EXIT_IO);
        assert_eq!(exit_code(&Error::InfeasibleCap { cap: 0.0, min_variance: 1.0 }), EXIT_SOLVER);
        assert_eq!(
            exit_code(&Error::InfeasibleCap { cap: 0.0, min_variance: 1.0 }.in_scenario("C")),
            EXIT_SOLVER
        );
        assert_eq!(exit_code(&Error::Validation("x".into())), EXIT_VALIDATION);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_VALIDATION);
    }

    #[test]
    fn flags_override_config_override_defaults() {
        let cfg: RunConfig = serde_json::from_str(r#"{"n_points": 12, "cap": 0.01, "seed": 5}"#).unwrap();
        let flags = Shared {
            n_points: Some(7),
            ..Shared::default()
        };
        let s = Settings::resolve(&flags, &cfg, DEFAULT_OUT).unwrap();
        assert_eq!(s.n_points, 7);
        assert_eq!(s.cap, 0.01);
        assert_eq!(s.seed, 5);
        assert_eq!(s.lambda, DEFAULT_LAMBDA);
        assert_eq!(s.out, PathBuf::from(DEFAULT_OUT));
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"n_point": 3}"#).is_err());
    }

    #[test]
    fn technique_selection() {
        let mut s = Settings::resolve(&Shared::default(), &RunConfig::default(), DEFAULT_OUT).unwrap();
        assert_eq!(s.techniques().unwrap().len(), 4);
        s.technique = Some("bounded-risk".into());
        s.cap = 0.005;
        assert_eq!(s.techniques().unwrap(), vec![BenchmarkTechnique::BoundedRisk { cap: 0.005 }]);
        s.cap = -1.0;
        assert!(s.techniques().is_err());
    }

    #[test]
    fn usage_errors_exit_one_and_help_exits_zero() {
        assert_eq!(run(["regretfolio", "frobnicate"]), EXIT_VALIDATION);
        assert_eq!(run(["regretfolio", "robust", "--technique", "nope"]), EXIT_VALIDATION);
        assert_eq!(run(["regretfolio", "--help"]), EXIT_OK);
        assert_eq!(run(["regretfolio", "front"]), EXIT_VALIDATION);
    }

    #[test]
    fn file_labels_are_sanitized() {
        assert_eq!(file_label("C/1 x"), "C_1_x");
    }
}
