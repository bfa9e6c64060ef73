use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use tempfile::TempDir;

fn ncprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncprob"))
        .args(args)
        .env_remove("NCPROB_MAX_DEGREE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

const BERNOULLI: &str = r#"{"letters": 1, "max_degree": 4, "moments": {"a1.a1": "1", "a1.a1.a1.a1": 1}}"#;

#[test]
fn boolean_reduced_coproduct_is_canonical() {
    let v = stdout_json(&ncprob(&["coproduct", "--type", "b", "--input", "a1.a2.a3", "--reduced"]));
    let rows: Vec<(String, String, String)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let s = |k: &str| r[k].as_str().unwrap().to_string();
            (s("left"), s("right"), s("coeff"))
        })
        .collect();
    let expected = [
        ("a1", "a2.a3"),
        ("a2", "[a1|a3]"),
        ("a3", "a1.a2"),
        ("[a1|a3]", "a2"),
        ("a1.a2", "a3"),
        ("a2.a3", "a1"),
    ];
    assert_eq!(rows.len(), expected.len());
    for ((l, r, c), (el, er)) in rows.iter().zip(expected) {
        assert_eq!((l.as_str(), r.as_str(), c.as_str()), (el, er, "1"));
    }
}

#[test]
fn free_coproduct_has_the_negative_bar_term() {
    let v = stdout_json(&ncprob(&["coproduct", "--type", "f", "--input", "a1.a2.a3.a4"]));
    let hit = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["left"] == "[a1|a3]" && r["right"] == "[a2|a4]")
        .expect("term present");
    assert_eq!(hit["coeff"], "-1");
}

#[test]
fn word_input_renders_left_leg_as_word() {
    let v = stdout_json(&ncprob(&["coproduct", "--type", "full", "--input", "a1.a2.a3"]));
    assert!(v.as_array().unwrap().iter().any(|r| r["left"] == "a1.a3" && r["right"] == "a2"));
    let v = stdout_json(&ncprob(&["coproduct", "--type", "prec", "--input", "[a1|a2]", "--reduced"]));
    assert!(v.as_array().unwrap().iter().all(|r| r["left"] != "1" && r["right"] != "1"));
}

#[test]
fn monotone_h3_vanishes_on_unit_moments() {
    let dir = TempDir::new().unwrap();
    let state = write(
        &dir,
        "s.json",
        r#"{"letters": 1, "max_degree": 3, "moments": {"a1": "1", "a1.a1": "1", "a1.a1.a1": "1"}}"#,
    );
    let v = stdout_json(&ncprob(&[
        "cumulants", "--kind", "monotone", "--state", state.to_str().unwrap(), "--max-degree", "3",
    ]));
    assert_eq!(v["unit"], "excluded");
    assert_eq!(v["cumulants"]["a1.a1.a1"], "0");
    assert_eq!(v["cumulants"]["a1"], "1");
}

#[test]
fn bernoulli_self_convolutions() {
    let dir = TempDir::new().unwrap();
    let s = write(&dir, "b.json", BERNOULLI);
    let s = s.to_str().unwrap();
    for (kind, m4) in [("free", "6"), ("boolean", "4"), ("monotone", "5")] {
        let v = stdout_json(&ncprob(&[
            "convolve", "--kind", kind, "--state1", s, "--state2", s, "--max-degree", "4",
        ]));
        assert_eq!(v["moments"]["a1.a1"], "2", "{kind}");
        assert_eq!(v["moments"]["a1.a1.a1.a1"], m4, "{kind}");
    }
}

#[test]
fn moments_from_semicircle_cumulants() {
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "c.json",
        r#"{"letters": 1, "max_degree": 4, "unit": "excluded", "cumulants": {"a1.a1": "1"}}"#,
    );
    let v = stdout_json(&ncprob(&["moments", "--kind", "free", "--cumulants", c.to_str().unwrap()]));
    assert_eq!(v["moments"]["a1.a1.a1.a1"], "2");
    assert_eq!(v["moments"]["a1.a1.a1"], "0");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ not json");
    let state = write(&dir, "s.json", BERNOULLI);
    let (bad, state) = (bad.to_str().unwrap(), state.to_str().unwrap());
    let code = |out: Output| {
        assert!(out.stdout.is_empty(), "partial output: {}", String::from_utf8_lossy(&out.stdout));
        out.status.code().unwrap()
    };
    assert_eq!(code(ncprob(&["cumulants", "--kind", "free", "--state", bad, "--max-degree", "2"])), 2);
    assert_eq!(code(ncprob(&["coproduct", "--type", "m", "--input", "b1"])), 2);
    assert_eq!(code(ncprob(&["cumulants", "--kind", "free", "--state", state, "--max-degree", "6"])), 3);
    assert_eq!(code(ncprob(&["moments", "--kind", "free", "--cumulants", state])), 4);
    assert_eq!(code(ncprob(&["verify", "everything"])), 5);
    let capped = Command::new(env!("CARGO_BIN_EXE_ncprob"))
        .args(["coproduct", "--type", "f", "--input", "a1.a2.a3.a4"])
        .env("NCPROB_MAX_DEGREE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(capped), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "group-laws", "--max-degree", "3", "--trials", "3", "--seed", "5"];
    let (a, b) = (ncprob(&args), ncprob(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn worked_examples_suite_passes() {
    let out = ncprob(&["verify", "paper-examples"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("PASS  Δ_f(a1a2a3a4)"));
}

#[test]
fn group_laws_suite_passes_at_degree_five() {
    let out = ncprob(&["verify", "group-laws", "--max-degree", "5", "--trials", "20", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

/// The smoke run finishes quickly; its only failures are the two
/// left-sided pre-Lie statements for δ_m, which do not hold for the
/// coproduct as defined (the right-sided versions pass).
#[test]
fn smoke_run_of_all_suites() {
    let start = Instant::now();
    let out = ncprob(&["verify", "all", "--max-degree", "3", "--trials", "2"]);
    assert!(start.elapsed() < Duration::from_secs(10));
    let text = String::from_utf8_lossy(&out.stdout);
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(
        failed,
        [
            "FAIL  left co-pre-Lie identity a_m = (τ⊗id)a_m  (14 checked)",
            "FAIL  left pre-Lie relation for α⊳β = (α⊗β)∘δ_m  (2 checked)",
        ],
        "{text}"
    );
    assert_eq!(out.status.code(), Some(1));
}
