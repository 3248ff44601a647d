use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn powertour(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powertour"))
        .args(args)
        .env("POWERTOUR_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = powertour(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn exit_codes() {
    assert_eq!(powertour(&["tour", "--bogus"]).status.code(), Some(1));
    assert_eq!(powertour(&["verify", "no-such-suite"]).status.code(), Some(1));
    assert_eq!(powertour(&["tour", "--algo", "greedy", "/nonexistent.json"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cube = gen_to(dir.path(), "c.json", &["uniform", "--k", "3", "--n", "20"]);
    assert_eq!(powertour(&["tour", "--algo", "newman2d", &cube]).status.code(), Some(1));
    assert_eq!(powertour(&["bench", "--algos", "newman2d", "--k", "3"]).status.code(), Some(1));
    assert_eq!(powertour(&["--help"]).status.code(), Some(0));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let a = powertour(&["gen", "uniform", "--k", "3", "--n", "100", "--seed", "42"]);
    let b = powertour(&["gen", "uniform", "--k", "3", "--n", "100", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["k"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 100);

    let dir = tempfile::tempdir().unwrap();
    let csv = gen_to(dir.path(), "u.csv", &["uniform", "--k", "3", "--n", "100", "--seed", "42"]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 100);
    assert!(text.lines().all(|l| l.split(',').count() == 3));
}

#[test]
fn cube_vertices_are_distinct() {
    let out = powertour(&["gen", "cube-vertices", "--k", "30", "--n", "1000", "--seed", "7"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let points = v["points"].as_array().unwrap();
    let distinct: HashSet<String> = points.iter().map(|p| p.to_string()).collect();
    assert_eq!(distinct.len(), 1000);
    assert!(points.iter().all(|p| p.as_array().unwrap().iter().all(|x| x == 0.0 || x == 1.0)));
}

#[test]
fn oracle_on_the_even_weight_code() {
    let dir = tempfile::tempdir().unwrap();
    let code = gen_to(dir.path(), "code.json", &["k4-even-weight"]);
    let out = powertour(&["tour", "--algo", "oracle", "--k", "4", &code, "--no-timing"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let s = v["tour"]["cost"]["S_k"].as_f64().unwrap();
    assert!((s - 32.0).abs() < 1e-9);
    assert_eq!(v["tour"]["order"].as_array().unwrap().len(), 8);
}

#[test]
fn newman_on_the_five_point_set() {
    let dir = tempfile::tempdir().unwrap();
    let five = gen_to(dir.path(), "five.json", &["figure1-five"]);
    let out = powertour(&["tour", "--algo", "newman2d", &five, "--no-timing"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!((v["tour"]["cost"]["S_k"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    let checks = v["report"]["algorithms"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "newman" && c["pass"] == true));
}

#[test]
fn mst_tour_report_at_k6() {
    let dir = tempfile::tempdir().unwrap();
    let pts = gen_to(dir.path(), "p.json", &["uniform", "--k", "6", "--n", "200", "--seed", "3"]);
    let out = powertour(&["tour", "--algo", "mst-sekanina", "--k", "6", &pts, "--no-timing"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let certified = v["report"]["bounds"]["certified"].as_f64().unwrap();
    assert!((certified - 15.357_953_166_968_595).abs() < 1e-12);
    assert!(v["tour"]["cost"]["s_k"].as_f64().unwrap() <= certified);
    assert!(v.get("timestamp").is_none());
}

#[test]
fn two_phase_includes_the_phase_report() {
    let dir = tempfile::tempdir().unwrap();
    let pts = gen_to(dir.path(), "cl.json", &["clustered", "--k", "4", "--n", "120", "--seed", "1"]);
    let out = powertour(&["tour", "--algo", "two-phase", &pts, "--no-timing"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["phase_report"]["tree_count"].as_u64().unwrap() >= 1);
    assert_eq!(v["k"], 4);
}

#[test]
fn no_timing_output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let pts = gen_to(dir.path(), "p.json", &["uniform", "--k", "3", "--n", "50"]);
    let args = ["tour", "--algo", "two-phase", pts.as_str(), "--no-timing"];
    assert_eq!(powertour(&args).stdout, powertour(&args).stdout);
    let bench = ["bench", "--k", "3,4", "--n", "10,20", "--trials", "2", "--no-timing"];
    let a = powertour(&bench);
    assert!(a.status.success());
    assert_eq!(a.stdout, powertour(&bench).stdout);
    let verify = ["verify", "lemma1", "--trials", "20", "--no-timing"];
    assert_eq!(powertour(&verify).stdout, powertour(&verify).stdout);
}

#[test]
fn bench_rows_and_columns() {
    let out = powertour(&["bench", "--no-timing"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,n,algo,seed,S_k,s_k,time_ms"));
    assert_eq!(lines.count(), 18);

    let out = powertour(&["bench", "--trend", "--k", "3..5", "--n", "40", "--trials", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,n,trials,mean_s_k,mean_s_k_over_sqrt_k\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn verify_suites_pass() {
    for (suite, trials) in [("tight-examples", "1"), ("lemma5", "2000"), ("lemma7", "1"), ("bincode", "20")] {
        let out = powertour(&["verify", suite, "--trials", trials, "--no-timing"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        let v = stdout_json(&out);
        assert_eq!(v["pass"], true);
        assert_eq!(v["suite"], suite);
    }
    let out = powertour(&["verify", "bounds-sweep", "--k", "3..8", "--n", "2..200", "--trials", "50", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
}
