use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

/// Runs with `--json`, expects exit 0, and returns the parsed report.
fn json_ok(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn boxed_count_prints_twenty() {
    let out = run(&["count", "boxed", "-r", "2", "-s", "2", "-t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "20\n");
}

#[test]
fn triangle_is_strictly_metric() {
    let out = run(&[
        "metrize",
        "test",
        "--mode",
        "strict",
        path_str(&fixture("triangle.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("strictly-metric: yes\n"));
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"n\": 3,\n \"paths\": [ {\"vertices\": [1, 2]}, ]\n}").unwrap();
    let out = run(&["check", path_str(&path)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains("line 2, column"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["check", path_str(&fixture("triangle_detour.json"))])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["induce", path_str(&fixture("four_cycle_unit.json"))])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["count", "boxed", "-r", "2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn eight_point_example_has_no_integral_witness() {
    let report = json_ok(&["verify", "paper-example"]);
    assert_eq!(report["identity-exact"], true);
    assert_eq!(report["realizable"], false);
    assert_eq!(report["integral-witness"], "not-found");
}

#[test]
fn resume_round_trip() {
    let dir = TempDir::new().unwrap();
    let line = fixture("line4.json");
    let extracted = json_ok(&["resume", "extract", path_str(&line)]);
    let f = write(&dir, "resume.json", &extracted["resume"]);
    let recovered = json_ok(&["resume", "recover", &f]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&line).unwrap()).unwrap();
    assert_eq!(recovered["system"], original);

    let all = json_ok(&["resume", "all", path_str(&line)]);
    for (i, r) in all["resumes"].as_array().unwrap().iter().enumerate() {
        let f = write(&dir, &format!("r{i}.json"), r);
        assert_eq!(json_ok(&["resume", "recover", &f])["system"], original);
    }
}

#[test]
fn realize_then_induce() {
    let dir = TempDir::new().unwrap();
    let line = fixture("line4.json");
    let realized = json_ok(&["metrize", "realize", path_str(&line)]);
    assert_eq!(realized["reproduces-system"], true);
    let w = write(&dir, "w.json", &realized["weights"]);
    let induced = json_ok(&["induce", &w]);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&line).unwrap()).unwrap();
    assert_eq!(induced["system"], original);
}

#[test]
fn witness_round_trip() {
    let dir = TempDir::new().unwrap();
    let triples = fixture("eight_point_triples.json");
    let computed = json_ok(&["metrize", "witness", path_str(&triples)]);
    assert_eq!(computed["witness-valid"], true);
    let w = write(&dir, "alpha.json", &computed["witness"]);
    assert_eq!(
        json_ok(&["metrize", "witness", path_str(&triples), "--check", &w])["witness-valid"],
        true
    );
    let printed = fixture("eight_point_witness.json");
    assert_eq!(
        json_ok(&["metrize", "witness", path_str(&triples), "--check", path_str(&printed)])["witness-valid"],
        true
    );
}

#[test]
fn closure_round_trip() {
    let dir = TempDir::new().unwrap();
    let first = json_ok(&["closure", "--system", path_str(&fixture("line4.json"))]);
    let c = write(&dir, "c.json", &first["closure"]);
    let second = json_ok(&["closure", &c]);
    assert_eq!(first["closure"], second["closure"]);
}

#[test]
fn generated_systems_verify() {
    let dir = TempDir::new().unwrap();
    let diam2 = json_ok(&["gen", "diam2", path_str(&fixture("four_cycle.json"))]);
    assert_eq!(diam2["count"], 4);
    for (i, sys) in diam2["systems"].as_array().unwrap().iter().enumerate() {
        let f = write(&dir, &format!("d{i}.json"), sys);
        assert_eq!(json_ok(&["metrize", "test", "--mode", "metric", &f])["metric"], true);
    }
    let d2 = json_ok(&["count", "d2", path_str(&fixture("four_cycle.json"))]);
    assert_eq!(d2["value"], "4");

    let bip = json_ok(&["--seed", "3", "gen", "bipartite", "--h", "3"]);
    let w = write(&dir, "bw.json", &bip["certified"]["weights"]);
    assert_eq!(json_ok(&["induce", &w])["system"], bip["certified"]["system"]);
    let fixed = json_ok(&["gen", "bipartite", "--h", "3", "--choices", "121"]);
    assert_eq!(fixed["choices"], "121");

    let gnp = json_ok(&["--seed", "5", "gen", "gnp-matching", "--n", "8"]);
    let w = write(&dir, "gw.json", &gnp["certified"]["weights"]);
    let s = write(&dir, "gs.json", &gnp["certified"]["system"]);
    assert_eq!(json_ok(&["induce", &w])["system"], gnp["certified"]["system"]);
    assert_eq!(json_ok(&["metrize", "test", &s])["strictly-metric"], true);

    let mono = json_ok(&["gen", "monotone", "--n", "3"]);
    assert_eq!(mono["count"], json_ok(&["count", "monotone", "--n", "3"])["value"]);
    for (i, m) in mono["monotone"].as_array().unwrap().iter().enumerate() {
        let f = write(&dir, &format!("m{i}.json"), &m["system"]);
        assert_eq!(json_ok(&["metrize", "test", &f])["strictly-metric"], true);
    }

    let join = json_ok(&["gen", "join", "--n", "3"]);
    let g = write(&dir, "join.json", &join["graph"]);
    assert_eq!(json_ok(&["count", "d2", &g])["value"], "27");
}

#[test]
fn vc_round_trip() {
    let dir = TempDir::new().unwrap();
    let fam = json_ok(&["vc", "family", path_str(&fixture("line4.json"))]);
    assert_eq!(fam["maximum-class"], true);
    let f = write(&dir, "fam.json", &fam["family"]);
    assert_eq!(json_ok(&["vc", "dim", &f])["value"], 2);

    let built = json_ok(&["vc", "build", "--n", "8", "--d", "2"]);
    assert_eq!(built["vc-dimension"], 2);
    assert_eq!(built["sets"], 1 + 8 + 28);
    let f = write(&dir, "built.json", &built["build"]["family"]);
    assert_eq!(json_ok(&["vc", "dim", &f])["value"], 2);
}

#[test]
fn consistent_count_matches_listing() {
    let report = json_ok(&["count", "consistent", "--n", "4", "--list"]);
    assert_eq!(
        report["value"].as_u64().unwrap() as usize,
        report["systems"].as_array().unwrap().len()
    );
}

#[test]
fn output_is_reproducible() {
    for args in [
        vec!["--seed", "11", "gen", "gnp-matching", "--n", "16"],
        vec![
            "--seed",
            "2",
            "--tsv",
            "vc",
            "build",
            "--n",
            "8",
            "--d",
            "2",
            "--chooser",
            "random",
        ],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
    let a = run(&["--seed", "1", "gen", "bipartite", "--h", "4"]).stdout;
    let b = run(&["--seed", "2", "gen", "bipartite", "--h", "4"]).stdout;
    assert_ne!(a, b);
}

#[test]
fn tsv_output() {
    let out = run(&["--tsv", "count", "sym", "-r", "2", "-t", "2", "--brute"]);
    assert_eq!(stdout(&out), "formula\t10\nbrute-force\t10\n");
}

#[test]
fn tsv_writes_rationals_as_fractions() {
    let out = run(&[
        "--tsv",
        "metrize",
        "test",
        "--mode",
        "strict",
        path_str(&fixture("triangle.json")),
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("strictly-metric\tyes\n"), "{text}");
    assert!(text.contains("\"1/1\""), "{text}");
}
