use std::fs;
use std::path::Path;

use regretfolio::cli::run;
use regretfolio::data_io::{load_dataset, parse_dataset, DatasetFile};

fn cli(args: &[&str]) -> i32 {
    run(std::iter::once("regretfolio").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A small 5-asset dataset so the slower commands stay quick.
fn small_dataset(dir: &Path) -> std::path::PathBuf {
    let p = dir.join("data.json");
    assert_eq!(cli(&["generate", "--out", s(&p), "--seed", "5", "--n-assets", "5"]), 0);
    p
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a.json"), tmp.path().join("b.json"));
    assert_eq!(cli(&["generate", "--out", s(&a), "--seed", "9"]), 0);
    assert_eq!(cli(&["generate", "--out", s(&b), "--seed", "9"]), 0);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());

    let file: DatasetFile = parse_dataset(&text).unwrap();
    assert_eq!(file.assets.len(), 15);
    assert_eq!(file.to_json(), text);
    let (u, set) = load_dataset(&a).unwrap();
    assert_eq!((u.len(), set.labels()), (15, vec!["C", "N", "G"]));
}

#[test]
fn infeasible_cap_exits_with_solver_code() {
    let tmp = tempfile::tempdir().unwrap();
    let data = small_dataset(tmp.path());
    let out = tmp.path().join("out");
    let code = cli(&[
        "benchmarks", "--dataset", s(&data), "--out", s(&out), "--technique", "bounded-risk", "--cap", "1e-7",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn unknown_scenario_and_bad_flags_exit_with_validation_code() {
    let tmp = tempfile::tempdir().unwrap();
    let data = small_dataset(tmp.path());
    let out = tmp.path().join("out");
    assert_eq!(cli(&["front", "--dataset", s(&data), "--out", s(&out), "--scenario", "X"]), 1);
    assert_eq!(cli(&["robust", "--dataset", s(&data), "--technique", "nope"]), 1);
    assert_eq!(cli(&["front", "--out", s(&out)]), 1);
}

#[test]
fn missing_dataset_file_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("none.json");
    assert_eq!(cli(&["benchmarks", "--dataset", s(&missing), "--out", s(tmp.path())]), 2);
}

#[test]
fn config_file_supplies_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let data = small_dataset(tmp.path());
    let out = tmp.path().join("cfg-out");
    let cfg = tmp.path().join("run.json");
    fs::write(
        &cfg,
        format!(
            r#"{{"dataset": {:?}, "out": {:?}, "n_points": 7, "scenario": "N"}}"#,
            s(&data),
            s(&out)
        ),
    )
    .unwrap();
    assert_eq!(cli(&["front", "--config", s(&cfg)]), 0);
    let csv = fs::read_to_string(out.join("front_N.csv")).unwrap();
    assert_eq!(csv.lines().count(), 8);
    assert!(out.join("manifest.json").is_file());

    fs::write(&cfg, r#"{"unknown_key": 1}"#).unwrap();
    assert_eq!(cli(&["front", "--config", s(&cfg)]), 1);
}

#[test]
fn evaluate_self_comparison_with_one_regime() {
    let tmp = tempfile::tempdir().unwrap();
    let full = small_dataset(tmp.path());
    let mut file = parse_dataset(&fs::read_to_string(&full).unwrap()).unwrap();
    file.regimes.truncate(1);
    let data = tmp.path().join("one.json");
    fs::write(&data, file.to_json()).unwrap();

    let out = tmp.path().join("out");
    assert_eq!(cli(&["front", "--dataset", s(&data), "--out", s(&out), "--n-points", "15"]), 0);
    let front_csv = out.join("front_C.csv");
    let code = cli(&[
        "evaluate", "--dataset", s(&data), "--out", s(&out), "--n-points", "15", "--robust-csv", s(&front_csv),
        "--technique", "ideal",
    ]);
    assert_eq!(code, 0);
    let eval: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("evaluation.json")).unwrap()).unwrap();
    let text = eval.to_string();
    assert!(text.contains("per_scenario"), "{text}");
    let ratio = eval["results"][0]["ratios"]["worst"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 1e-6, "ratio {ratio}");
}

#[test]
fn robust_writes_reports_and_overlays() {
    let tmp = tempfile::tempdir().unwrap();
    let data = small_dataset(tmp.path());
    let out = tmp.path().join("out");
    let code = cli(&[
        "robust", "--dataset", s(&data), "--out", s(&out), "--technique", "weighted-sum", "--n-points", "10",
    ]);
    assert_eq!(code, 0);
    for f in [
        "robust_weighted-sum.csv",
        "regret_report_weighted-sum.csv",
        "robust_weighted-sum.svg",
        "robust_weighted-sum_C.svg",
        "manifest.json",
    ] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
    let report = fs::read_to_string(out.join("regret_report_weighted-sum.csv")).unwrap();
    assert!(report.starts_with("return,regret,argmax_scenario,variance_C,gap_C"));
}
