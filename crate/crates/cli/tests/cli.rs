use std::process::{Command, Output};

use serde_json::Value;

fn semifield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semifield"))
        .args(args)
        .env_remove("SEMIFIELD_SIZE_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = semifield(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn census_counts() {
    let d = json(&["census", "q=2", "m=3", "j=1"]);
    assert_eq!(d["schema"], "semifield/1");
    assert_eq!(d["count"], 2);
    assert_eq!(d["formula_count"], 2);
    assert_eq!(d["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_across_generators() {
    let d = json(&[
        "classify", "q=2", "n=3", "m=2", "j1=1", "a1=w", "j2=2", "a2=w",
    ]);
    assert_eq!(d["status"], "NotIsomorphic");
    assert_eq!(d["reason"], "cross-generator-rule");
}

#[test]
fn classify_same_generator_gives_witness() {
    let d = json(&["classify", "q=2", "n=2", "m=2", "j1=1", "a1=w", "a2=w^2"]);
    assert_eq!(d["status"], "Isomorphic");
    assert_eq!(d["reason"], "criterion");
    assert!(d["witness"]["k"].is_string());
}

#[test]
fn mrd_pipeline_writes_code_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let out = semifield(&[
        "mrd",
        "q=2",
        "m=2",
        "a=ω",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d["code"]["codewords"].as_array().unwrap().len(), 16);
    assert_eq!(d["code"]["verified"]["min_rank_distance"], 2);
    assert_eq!(d["code"]["verified"]["mrd"], true);
    assert_eq!(d["expanded"]["verified"]["min_rank_distance"], 4);
}

#[test]
fn mrd_rejects_zero_divisor_algebras() {
    let out = semifield(&["mrd", "q=2", "m=2", "a=1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_reproducible() {
    let args = ["constacyclic", "q=2", "n=3", "m=2", "a=w"];
    let a = semifield(&args);
    let b = semifield(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let d: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(!d["codes"].as_array().unwrap().is_empty());
}

#[test]
fn tuple_and_power_notation_agree() {
    let a = json(&["algebra", "q=2", "n=2", "m=2", "a=(0,1)"]);
    let b = json(&["algebra", "q=2", "n=2", "m=2", "a=w"]);
    assert_eq!(a, b);
    assert_eq!(a["division"], true);
}

#[test]
fn text_format() {
    let out = semifield(&["--format", "text", "field", "q=2", "n=2"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("order: 4"), "{s}");
}

#[test]
fn parametrize_quadratic() {
    let d = json(&["parametrize", "q=3", "m=2"]);
    let sets = d["sets"].as_array().unwrap();
    assert_eq!(sets.len(), 2);
    assert_eq!(sets[0]["members"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(semifield(&["field", "q=6"]).status.code(), Some(1));
    assert_eq!(
        semifield(&["census", "q=2", "m=3", "x=1"]).status.code(),
        Some(1)
    );
    assert_eq!(semifield(&["nonsense"]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_semifield"))
        .args(["field", "q=2", "n=10"])
        .env("SEMIFIELD_SIZE_CAP", "64")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(semifield(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_single_criterion() {
    let d = json(&["verify", "criterion=1"]);
    assert_eq!(d["passed"], 1);
    assert_eq!(d["failed"], 0);
    assert_eq!(
        semifield(&["verify", "criterion=99"]).status.code(),
        Some(1)
    );
}
