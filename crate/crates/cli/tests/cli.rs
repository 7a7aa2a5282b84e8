use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorstress"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn certify_icosahedron_with_verification() {
    let text = stdout(&["certify", "catalog:icosahedron", "-r", "5", "--verify"]);
    assert!(text.starts_with("certificate: generically 3-stress free\nCERT 5 12 "));
    assert!(text.ends_with("replay ok\n"));
}

#[test]
fn rigidity_of_the_octahedron() {
    let report = json(&["rigidity", "catalog:octahedron", "-d", "3"]);
    assert_eq!(report["results"]["stress_dim"], 0);
    assert_eq!(report["results"]["is_rigid"], true);
    assert_eq!(report["seeds"].as_array().unwrap().len(), 3);
}

#[test]
fn no_k5_minor_in_k4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.txt");
    fs::write(&path, "4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    assert_eq!(stdout(&["minor", path.to_str().unwrap(), "--pattern", "K5"]), "none\n");
}

#[test]
fn linkless_reports_obstruction() {
    let r = json(&["linkless", "catalog:K6"]);
    assert_eq!(r["results"]["linkless"], false);
    assert_eq!(r["results"]["obstruction"]["member"], "K6");
    let r = json(&["linkless", "catalog:petersen"]);
    assert_eq!(r["results"]["obstruction"]["member"], "petersen");
    assert_eq!(json(&["linkless", "catalog:K5"])["results"]["linkless"], true);
}

#[test]
fn seeded_runs_reproduce() {
    let a = json(&["shift", "catalog:W5", "--kind", "exterior", "--seed", "17"]);
    let b = json(&["shift", "catalog:W5", "--kind", "exterior", "--seed", "17"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["seeds"], b["seeds"]);
    assert_eq!(a["results"]["edges"].as_array().unwrap().len(), 10);
}

#[test]
fn certificate_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.txt");
    let graph = dir.path().join("g.txt");
    fs::write(&graph, stdout(&["catalog", "dump", "W6"])).unwrap();
    stdout(&["certify", graph.to_str().unwrap(), "-r", "5", "--out", cert.to_str().unwrap()]);
    assert_eq!(stdout(&["replay", graph.to_str().unwrap(), cert.to_str().unwrap()]), "replay ok\n");
    let text = fs::read_to_string(&cert).unwrap();
    let tampered: String = text.replacen("C 1 2 2", "C 1 2 1", 1);
    assert_ne!(tampered, text);
    fs::write(&cert, tampered).unwrap();
    let out = stdout(&["replay", graph.to_str().unwrap(), cert.to_str().unwrap()]);
    assert!(out.starts_with("replay failed at C 1 2"), "{out}");
}

#[test]
fn surface_and_mader() {
    let r = json(&["surface", "catalog:K8", "--genus", "1"]);
    assert_eq!(r["results"]["obstructed"], true);
    assert_eq!(r["results"]["heawood"], 7);
    let r = json(&["surface", "catalog:figure1_torus", "--genus", "1", "--kind", "exterior"]);
    assert_eq!(r["results"]["obstructed"], false);
    let m = json(&["mader", "catalog:K2,2,2,2,2", "-r", "6"]);
    assert_eq!(m["results"]["bound"], 30);
    assert_eq!(m["results"]["pass"], false);
}

#[test]
fn catalog_commands() {
    let list = stdout(&["catalog", "list"]);
    assert!(list.lines().any(|l| l.starts_with("figure1_torus\tn=10\te=30")));
    assert!(stdout(&["catalog", "dump", "K2,2,2,2,2"]).starts_with("10 40\n"));
}

#[test]
fn errors_exit_nonzero() {
    assert!(!run(&["rigidity", "/no/such/file", "-d", "2"]).status.success());
    assert!(!run(&["catalog", "dump", "nothing"]).status.success());
    assert!(!run(&["certify", "catalog:K4", "-r", "9"]).status.success());
    assert!(!run(&["surface", "catalog:K4", "--genus", "0"]).status.success());
    assert!(!run(&["shift", "catalog:K4", "--kind", "both"]).status.success());
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 2\n1 2\n").unwrap();
    let out = run(&["rigidity", bad.to_str().unwrap(), "-d", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("header announces 2 edges"));
}
