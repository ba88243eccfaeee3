use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fizzle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fizzle")).args(args).output().unwrap()
}

fn fizzle_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fizzle"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn prove_worked_polynomial() {
    let o = fizzle(&["prove", "x^2+3*x", "--at", "1", "--limit", "auto"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("Choose delta = min{1, eps/6}."));
    assert!(s.contains("t^2 + 5t"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corroborated"));
}

#[test]
fn prove_latex_and_errata_flag() {
    let o = fizzle(&["prove", "(x+1)/((x-1)*(x^2+1))", "--at", "2", "--format", "latex"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("\\documentclass{article}"));
    assert!(s.contains("\\paragraph{Notes.}"));
    let o = fizzle(&["prove", "(x+1)/((x-1)*(x^2+1))", "--at", "2", "--no-errata"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("Notes."));
}

#[test]
fn prove_json_then_check() {
    let o = fizzle(&["prove", "(2*x+1)/(3*x-4)", "--at", "inf", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["witness"]["schema"], "fizzle-witness/1");
    assert_eq!(v["report"]["status"], "corroborated");

    let path = tmp("infinity-witness.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let checked = fizzle(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&checked), 0);
    assert!(stdout(&checked).starts_with("status: corroborated"));

    let bare = v["witness"].to_string();
    let from_stdin = fizzle_stdin(&["check", "-", "--format", "json"], &bare);
    assert_eq!(code(&from_stdin), 0);
    assert_eq!(json(&from_stdin)["status"], "corroborated");
}

#[test]
fn check_audits_a_replacement_delta() {
    let o = fizzle(&["prove", "x^2+3*x", "--at", "1", "--format", "json"]);
    let witness = json(&o)["witness"].to_string();
    let doubled = fizzle_stdin(&["check", "-", "--delta", "min{1, eps/3}"], &witness);
    assert_eq!(code(&doubled), 1);
    assert!(stdout(&doubled).starts_with("status: violations"));
}

#[test]
fn check_rejects_bad_documents() {
    let path = tmp("old-schema.json");
    let o = fizzle(&["prove", "x", "--at", "0", "--format", "json"]);
    let old = json(&o)["witness"].to_string().replace("fizzle-witness/1", "fizzle-witness/0");
    std::fs::write(&path, old).unwrap();
    let checked = fizzle(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&checked), 2);
    assert!(String::from_utf8_lossy(&checked.stderr).contains("schema mismatch"));
    assert_eq!(code(&fizzle(&["check", tmp("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn falsify_termwise_threshold() {
    let o = fizzle(&[
        "falsify",
        "x^2+3*x",
        "--at",
        "1",
        "--limit",
        "4",
        "--delta",
        "min{(eps/2)^(1/2), (eps/10)^(1/2)}",
    ]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "counterexample");
    assert_eq!(v["counterexample"]["eps"], "1");
    assert_eq!(v["counterexample"]["t"], "1/5");
}

#[test]
fn falsify_without_counterexample() {
    let o = fizzle(&["falsify", "(2*x+1)/(3*x-4)", "--at", "inf", "--delta", "min{3/8, 9*eps/14}"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "no counterexample at budget");
}

#[test]
fn eval_values() {
    let o = fizzle(&["eval", "(2*x+1)/(3*x-4)", "--at", "inf"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2/3\n");
    let o = fizzle(&["eval", "x*sin(2*x-2) + 3", "--at", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["limit"], "3");
    let o = fizzle(&["eval", "-x^2", "--at", "-3/2"]);
    assert_eq!(stdout(&o), "-9/4\n");
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["prove", "x^-1", "--at", "1"], 2),
        (&["prove", "tan(x)", "--at", "1"], 2),
        (&["prove", "x"], 2),
        (&["prove", "x", "--at", "1", "--samples", "2"], 2),
        (&["prove", "x", "--at", "one"], 2),
        (&["falsify", "x", "--at", "0", "--delta", "eps - 1"], 2),
        (&["falsify", "x", "--at", "0", "--delta", "min{-1, eps}"], 2),
        (&["prove", "1/(x-1)", "--at", "1"], 3),
        (&["prove", "x^2", "--at", "1", "--limit", "5"], 3),
        (&["eval", "1/(x-1)", "--at", "1"], 3),
        (&["eval", "sin(x)", "--at", "1"], 3),
        (&["prove", "x^2", "--at", "inf"], 3),
        (&["prove", "sin(x)", "--at", "1", "--sin-degree", "1"], 4),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&fizzle(args)), *expected, "{args:?}");
    }
}

#[test]
fn identical_flags_give_identical_bytes() {
    let runs: &[&[&str]] = &[
        &["prove", "sin(x)", "--at", "1", "--format", "json", "--seed", "9"],
        &["falsify", "1/(1+x)", "--at", "0", "--limit", "1", "--delta", "min{1/2, 2*eps}", "--seed", "3"],
    ];
    for args in runs {
        let a = fizzle(args);
        let b = fizzle(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
        assert_eq!(a.status, b.status, "{args:?}");
    }
}
