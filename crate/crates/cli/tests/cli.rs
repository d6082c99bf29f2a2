use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn lexpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexpoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &[u8]) -> serde_json::Value {
    serde_json::from_slice(out).expect("valid JSON")
}

#[test]
fn reduced_basis_of_e1() {
    let out = lexpoint(&["gb", "--reduced", fixture("E1.json").to_str().unwrap()]);
    assert!(out.status.success());
    let doc = json(&out.stdout);
    assert_eq!(doc["polys"], serde_json::json!(["x1^2 - x1", "x1*x2", "x2^2 - x2"]));
    assert_eq!(doc["flavor"], "reduced");
}

#[test]
fn minimal_basis_is_the_default() {
    let out = lexpoint(&["gb", fixture("E1.json").to_str().unwrap()]);
    assert!(out.status.success());
    let doc = json(&out.stdout);
    assert_eq!(doc["polys"][2], "x2^2 + x1*x2 - x2");
    assert_eq!(doc["flavor"], "minimal");
}

#[test]
fn staircase_of_e2() {
    let out = lexpoint(&["stdmon", fixture("E2.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out.stdout), serde_json::json!(["1", "x1", "x2", "x3"]));
}

#[test]
fn verify_e2_passes_every_check() {
    let out = lexpoint(&["verify", fixture("E2.json").to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out.stdout);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.len() >= 4);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn specialize_e2() {
    let out = lexpoint(&["specialize", fixture("E2.json").to_str().unwrap(), "--alpha", "1,0"]);
    assert!(out.status.success());
    let doc = json(&out.stdout);
    assert_eq!(doc["level"], 2);
    assert_eq!(doc["stable"], true);
    assert_eq!(doc["fiber_gb_match"], true);
    assert_eq!(doc["images"][3], "x3");
}

#[test]
fn output_is_deterministic() {
    let path = fixture("E2.json");
    for sub in ["gb", "indices", "triangular"] {
        let a = lexpoint(&[sub, path.to_str().unwrap()]);
        let b = lexpoint(&["--jobs", "3", sub, path.to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{sub}");
    }
}

#[test]
fn errors_are_json_with_status_2() {
    let dir = std::env::temp_dir().join(format!("lexpoint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (r#"{"field": "Fp:4", "n": 1, "points": [[0]]}"#, "invalid_document"),
        (r#"{"field": "Q", "n": 2, "points": [["0"]]}"#, "arity_mismatch"),
        (r#"{"field": "Q", "n": 1, "points": [["1/0"]]}"#, "zero_denominator"),
        (r#"{"field": "Q", "n": 1, "points": [["1"], ["1"]]}"#, "duplicate_point"),
    ];
    for (i, (doc, kind)) in cases.iter().enumerate() {
        let path = dir.join(format!("case{i}.json"));
        std::fs::write(&path, doc).unwrap();
        let out = lexpoint(&["gb", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{doc}");
        let err = json(&out.stderr);
        assert_eq!(err["error"], *kind, "{doc}: {err}");
        assert!(err["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
    let out = lexpoint(&["stdmon", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "io");
}

#[test]
fn bench_prints_csv() {
    let out = lexpoint(&["bench", "--seed", "7", "--dims", "2", "--sizes", "6", "--reps", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "field,n,points,construction_us,buchberger_moller_us,agree");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("Fp:32003,2,") && lines[1].ends_with(",true"));
}
