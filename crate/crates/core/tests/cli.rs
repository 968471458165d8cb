//! End-to-end checks of the command-line interface: formats, exit codes,
//! determinism, and CSV round-tripping.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diamondlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn diamondlab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn bounds_json_matches_closed_form() {
    let out = run(&[
        "bounds", "--g1", "1", "--g2", "1", "--h1", "1", "--h2", "1", "--beta", "0", "--n0", "1",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ub_both = v["report"]["ub_both"].as_f64().unwrap();
    assert!((ub_both - 1.5 * 2.0 * std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(v["decision"]["kind"], "BothRelays");
}

#[test]
fn bounds_csv_round_trips() {
    let out = run(&[
        "bounds", "--g1", "0.7", "--g2", "0.3", "--h1", "0.9", "--h2", "0.4", "--beta", "0.6",
        "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    assert_eq!(header[0], "ub_relay1");
    assert_eq!(*header.last().unwrap(), "decision");

    // parsing the printed values reproduces them bit-exactly
    let json = run(&[
        "bounds", "--g1", "0.7", "--g2", "0.3", "--h1", "0.9", "--h2", "0.4", "--beta", "0.6",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    for (name, printed) in header.iter().zip(&row).take(header.len() - 1) {
        let reparsed: f64 = printed.parse().unwrap();
        let reference = v["report"][*name].as_f64().unwrap();
        assert_eq!(reparsed.to_bits(), reference.to_bits(), "column {name}");
    }
}

#[test]
fn invalid_gain_exits_2_and_names_flag() {
    let out = run(&[
        "bounds", "--g1", "0", "--g2", "1", "--h1", "1", "--h2", "1", "--beta", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("g1"), "stderr: {err}");
}

#[test]
fn missing_scene_exits_2() {
    let out = run(&[
        "region-map",
        "--scene",
        "/nonexistent/scene.json",
        "--beta",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn region_map_single_cell() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    std::fs::write(
        &scene,
        r#"{"source":[0,0],"dest":[2,0],"relay1":[1,0.5],
            "grid_bounds":[0.5,-1,1.5,0],"grid_resolution":1}"#,
    )
    .unwrap();
    let out = run(&[
        "region-map",
        "--scene",
        scene.to_str().unwrap(),
        "--beta",
        "0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("x,y,decision"));
}

#[test]
fn default_scene_has_three_decision_labels() {
    let scene = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenes/default.json");
    let out = run(&[
        "region-map",
        "--scene",
        scene.to_str().unwrap(),
        "--beta",
        "0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut labels: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    labels.sort_unstable();
    labels.dedup();
    assert!(labels.len() >= 3, "labels: {labels:?}");
}

#[test]
fn ratio_curve_empty_betas_exits_2() {
    let out = run(&["ratio-curve", "--betas", "", "--grid", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ratio_curve_small_grid() {
    let out = run(&["ratio-curve", "--betas", "0.5,1.0", "--grid", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("beta,worst_ratio"));
    for line in text.lines().skip(1) {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let (ratio, env_high) = (fields[1], fields[7]);
        assert!(ratio <= 2.0 + 1e-9);
        assert!(ratio <= env_high + 1e-9);
    }
}

#[test]
fn sim_sync_deterministic_given_seed() {
    let args = [
        "sim-sync", "--mode", "p2p", "--bits", "20", "--beta", "0.3", "--delta", "1.0", "--trials",
        "2000", "--seed", "33",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["window"].as_u64().unwrap(), 64);
    assert_eq!(v["rng_algorithm"], "chacha12+ziggurat");
}

#[test]
fn sim_sync_result_independent_of_thread_count() {
    let args = [
        "sim-sync", "--mode", "diamond", "--bits", "20", "--beta", "0.3", "--delta", "0.8",
        "--trials", "20000", "--seed", "5",
    ];
    let one = bin().args(args).args(["--threads", "1"]).output().unwrap();
    let four = bin().args(args).args(["--threads", "4"]).output().unwrap();
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn lp_check_is_deterministic_and_passes() {
    let a = run(&["lp-check", "--trials", "200", "--seed", "9"]);
    let b = run(&["lp-check", "--trials", "200", "--seed", "9"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("result: PASS"));
}

#[test]
fn lp_check_zero_trials_exits_2() {
    let out = run(&["lp-check", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "bounds",
        "--g1",
        "1",
        "--g2",
        "0.5",
        "--h1",
        "1",
        "--h2",
        "0.5",
        "--beta",
        "1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("ub_relay1"));
}
