//! End-to-end runs of the `decayspace` binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decayspace"))
        .args(args)
        .current_dir(dir)
        .env_remove("DECAYSPACE_TOL")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn analyze_threepoint() {
    let dir = tempfile::tempdir().unwrap();
    let gen = bin(&["generate", "--family", "threepoint", "--params", r#"{"q": 65536}"#, "--out", "three_q16.json"], dir.path());
    assert_eq!(gen.status.code(), Some(0));
    let out = bin(&["analyze", "--space", "three_q16.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let zeta = r["results"]["metricity"]["zeta"].as_f64().unwrap();
    assert!(zeta > 5.0 && zeta < 6.0);
    assert!(r["results"]["metricity"]["phi_mult"].as_f64().unwrap() < 2.0);
    assert_eq!(r["config"]["space"], "three_q16.json");
    assert_eq!(r["config"]["tol"], 1e-9);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    bin(&["generate", "--family", "threepoint", "--params", r#"{"q": 4}"#, "--out", "s.json"], dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_decayspace"))
        .args(["analyze", "--space", "s.json"])
        .current_dir(dir.path())
        .env("DECAYSPACE_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(json(&out)["config"]["tol"], 1e-6);
}

#[test]
fn capacity_on_k3() {
    let dir = tempfile::tempdir().unwrap();
    let params = r#"{"graph": {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}}"#;
    bin(&["generate", "--family", "equidecay-graph", "--params", params, "--out", "k3_equidecay.json"], dir.path());
    let out = bin(&["capacity", "--system", "k3_equidecay.json", "--oracle", "on"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let res = &r["results"]["result"];
    assert_eq!(res["selected"].as_array().unwrap().len(), 1);
    assert_eq!(res["opt"], 1);
    assert_eq!(res["ratio"], 1.0);
    assert_eq!(r["results"]["audit"].as_array().unwrap().len(), 1);
}

#[test]
fn partition_and_fading_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sys = r#"{"space": {"mode": "node-space", "n": 6, "f": [
        [0, 1, 100, 101, 400, 401], [1, 0, 99, 100, 399, 400], [100, 99, 0, 1, 300, 301],
        [101, 100, 1, 0, 299, 300], [400, 399, 300, 299, 0, 1], [401, 400, 301, 300, 1, 0]]},
        "links": [[0, 1], [2, 3], [4, 5]], "beta": 1, "noise": 0, "power": {"kind": "uniform", "P": 1}}"#;
    std::fs::write(dir.path().join("sys.json"), sys).unwrap();
    for kind in ["signal", "separation", "onezetasep", "amicable"] {
        let out = bin(&["partition", "--system", "sys.json", "--kind", kind, "--zeta", "1", "--tau", "0.5", "--eta", "2"], dir.path());
        assert_eq!(out.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["results"]["kind"], kind);
    }
    bin(&["generate", "--family", "star", "--params", r#"{"k": 4, "r": 1}"#, "--out", "star.json"], dir.path());
    let out = bin(&["fading", "--space", "star.json", "--r", "1", "--C", "1"], dir.path());
    assert!(out.status.code() == Some(0) || out.status.code() == Some(1));
    let r = json(&out);
    let gamma = r["results"]["fading"]["gamma"].as_f64().unwrap();
    assert!(gamma >= 1.0 + 4.0 / 17.0 - 1e-12);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"mode": "node-space", "n": 2, "f": [[0, 1], [1"#).unwrap();
    let out = bin(&["analyze", "--space", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    assert_eq!(bin(&["analyze", "--space", "missing.json"], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["analyze", "--space", "bad.json", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["generate", "--family", "moon"], dir.path()).status.code(), Some(2));
    assert_eq!(bin(&["generate", "--family", "welzl", "--params", r#"{"n": 3, "eps": 0.5}"#], dir.path()).status.code(), Some(2));
}

#[test]
fn violations_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("neg.json"), r#"{"mode": "node-space", "n": 2, "f": [[0, -1], [1, 0]]}"#).unwrap();
    let out = bin(&["validate", "--space", "neg.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["violations"][0]["kind"], "non-negativity");
    assert_eq!(json(&out)["verdicts"][0]["invariant"], "space.axioms");
}

#[test]
fn verify_user_files() {
    let dir = tempfile::tempdir().unwrap();
    bin(&["generate", "--family", "welzl", "--params", r#"{"n": 3, "eps": 0.25}"#, "--out", "w.json"], dir.path());
    std::fs::write(dir.path().join("m.csv"), "0,1,4\n1,0,1\n4,1,0\n").unwrap();
    let out = bin(&["verify", "--corpus", "."], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let names: Vec<&str> = r["results"]["items"].as_array().unwrap().iter().map(|i| i["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["m.csv", "w.json"]);
}

#[test]
fn report_round_trips() {
    let cmd = decayspace_cli::Command::Verify(decayspace_cli::VerifyArgs {
        corpus: "builtin".into(),
        seed: 3,
        tol: 1e-9,
        out: None,
    });
    let decayspace_cli::Outcome::Report(report) = decayspace_cli::run(&cmd).unwrap() else {
        panic!("verify yields a report");
    };
    let text = report.to_json().unwrap();
    let back: decayspace_cli::AnalysisReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, *report);
    assert_eq!(back.to_json().unwrap(), text);
}
