//! The `bubblestar` binary end to end.

use std::fs;
use std::process::Command;

use bubblestar::tpath::TPathWitness;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bubblestar"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn witness_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for n in ["3", "4", "5", "6"] {
        let file = dir.path().join(format!("bs{}.json", n));
        let file = file.to_str().unwrap();
        let (code, _, err) = run(&["witness", "--n", n, "--seed", "9", "--out", file]);
        assert_eq!(code, 0, "{}", err);
        let (code, out, err) = run(&["verify", "--n", n, "--file", file]);
        assert_eq!(code, 0, "{}", err);
        assert!(out.starts_with("ok: "), "{}", out);
    }
}

#[test]
fn tampered_witness_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.json");
    let file = file.to_str().unwrap();
    assert_eq!(run(&["witness", "--n", "5", "--terminals", "12345,54321,21435", "--out", file]).0, 0);

    let mut w: TPathWitness = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    let shared = w.t_paths[0][1];
    let last = w.t_paths.len() - 1;
    w.t_paths[last].insert(1, shared);
    fs::write(file, serde_json::to_string(&w).unwrap()).unwrap();
    let (code, _, err) = run(&["verify", "--n", "5", "--file", file]);
    assert_eq!(code, 2);
    assert!(err.contains("error:"), "{}", err);

    fs::write(file, "{ not json").unwrap();
    let (code, _, err) = run(&["verify", "--n", "5", "--file", file]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed"), "{}", err);
}

#[test]
fn web_from_another_triple_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(run(&["witness", "--n", "4", "--seed", "1", "--out", a]).0, 0);
    assert_eq!(run(&["witness", "--n", "4", "--seed", "2", "--out", b]).0, 0);
    let mut wa: TPathWitness = serde_json::from_str(&fs::read_to_string(a).unwrap()).unwrap();
    let wb: TPathWitness = serde_json::from_str(&fs::read_to_string(b).unwrap()).unwrap();
    wa.web = wb.web;
    fs::write(a, serde_json::to_string(&wa).unwrap()).unwrap();
    let (code, _, err) = run(&["verify", "--n", "4", "--file", a]);
    assert_eq!(code, 2);
    assert!(err.contains("web:"), "{}", err);
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["witness", "--n", "2"],
        vec!["witness", "--n", "4", "--terminals", "1234,1234,4321"],
        vec!["witness", "--n", "4", "--terminals", "12345,1234,4321"],
        vec!["witness", "--n", "4", "--terminals", "1234,4321"],
        vec!["oracle", "--n", "5"],
        vec!["pi3", "--n", "8..3"],
        vec!["verify", "--n", "4", "--file", "/nonexistent/witness.json"],
        vec!["frobnicate"],
    ] {
        let (code, _, _) = run(&args);
        assert_eq!(code, 1, "{:?}", args);
    }
}

#[test]
fn generate_writes_every_edge_once() {
    let (code, out, _) = run(&["generate", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 24 * 5 / 2);
    let (code, out, _) = run(&["generate", "--n", "3", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.trim_start().starts_with("graph"));
    assert_eq!(out.matches(" -- ").count(), 9);
}

#[test]
fn oracle_and_audit() {
    let (code, out, _) = run(&["oracle", "--n", "3", "--terminals", "123,231,312"]);
    assert_eq!(code, 0);
    assert!(out.contains("max T-paths 1"), "{}", out);
    let (code, out, _) = run(&["oracle", "--n", "3", "--terminals", "123,213,132"]);
    assert_eq!(code, 0);
    assert!(out.contains("max T-paths 2"), "{}", out);
    let (code, out, _) = run(&["oracle", "--n", "4", "--seed", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("max T-paths 3"), "{}", out);
    let (code, out, _) = run(&["audit", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"), "{}", out);
}

#[test]
fn repeated_runs_print_the_same_bytes() {
    let a = bin().args(["witness", "--n", "6", "--seed", "77"]).output().unwrap();
    let b = bin().args(["witness", "--n", "6", "--seed", "77"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
