use std::process::Command;

fn coiso(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_coiso")).args(args).output().expect("binary runs");
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn reduce_reports_dimension_one() {
    let (code, out, _) = coiso(&["--model", &fixture("m2_dirac.json"), "--format", "json", "reduce", "--triple", "m2dirac"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["outputs"]["reduced"]["dim"], 1);
    assert_eq!(v["command"], "reduce");
}

#[test]
fn commute_check_on_cliff() {
    let (code, out, _) = coiso(&["--model", &fixture("cliff.json"), "commute-check", "--bimodule", "cliff_id"]);
    assert_eq!(code, Some(0), "{out}");
    assert!(out.contains("checks passed"));
}

#[test]
fn coherence_sweep_passes_ten_of_ten() {
    let (code, out, _) = coiso(&["--format", "json", "coherence", "--seed", "0", "--iters", "10"]);
    assert_eq!(code, Some(0));
    assert!(out.contains("\"passed\": \"10/10\""));
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = coiso(&["reduce", "--triple", "nope"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("unresolved triple"));
    let (code, _, _) = coiso(&["coherence"]);
    assert_eq!(code, Some(2));
    let dir = std::env::temp_dir().join(format!("coiso-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"algebras": {"A": {"dim": 1, "unit": [1], "structure": [[0, 0, 0, "2"]]}}}"#).unwrap();
    let (code, _, err) = coiso(&["--model", bad.to_str().unwrap(), "validate"]);
    assert_eq!(code, Some(2));
    assert!(err.contains("algebras.A"), "{err}");
}

#[test]
fn explicit_bimodule_model() {
    // k as a bimodule over unred(k), written out by hand
    let text = r#"{
      "algebras": {"k": {"builtin": "k"}},
      "triples": {"t": {"unred": "k"}},
      "bimodules": {"e": {"left": "t", "right": "t",
        "tot": {"dim": 1, "lact": [[[1]]], "ract": [[[1]]]},
        "n": {"dim": 1, "lact": [[[1]]], "ract": [[[1]]]},
        "zero": [[1]], "iota": [[1]]}}
    }"#;
    let dir = std::env::temp_dir().join(format!("coiso-cli1-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("m.json");
    std::fs::write(&p, text).unwrap();
    let (code, out, err) = coiso(&["--model", p.to_str().unwrap(), "morita-verify", "--triple", "t", "--n", "1"]);
    assert_eq!(code, Some(0), "{out}{err}");
    let (code, out, _) = coiso(&["--model", p.to_str().unwrap(), "tensor", "e", "e"]);
    assert_eq!(code, Some(0), "{out}");
}

#[test]
fn env_field_applies_without_model() {
    let out = Command::new(env!("CARGO_BIN_EXE_coiso")).env("COISO_FIELD", "F3").args(["reduce", "--triple", "t2dirac"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("reduce over F3"));
}
