use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sasakian"));
    c.env_remove("SASAKIAN_SEED");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const VERIFY: [&str; 11] = ["verify", "--n1", "1", "--n2", "1", "--alpha", "0.3+1.2i", "--samples", "64", "--seed", "7"];

#[test]
fn verify_passes_and_is_byte_stable() {
    let (code, first, _) = run(&VERIFY);
    assert_eq!(code, 0);
    let (_, second, _) = run(&VERIFY);
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert!(v["results"].as_array().unwrap().len() > 20);
}

#[test]
fn seed_from_environment() {
    let with_flag = run(&["verify", "--samples", "8", "--seed", "42"]).1;
    let out = bin().args(["verify", "--samples", "8"]).env("SASAKIAN_SEED", "42").output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), with_flag);
    assert_ne!(run(&["verify", "--samples", "8", "--seed", "43"]).1, with_flag);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = run(&["cohomology", "--n1", "1", "--n2", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "cohomology");
}

#[test]
fn model_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp1.model");
    std::fs::write(&path, "transverse-model v1\nn 1\ndim 0 0 1\ndim 1 1 1\nlefschetz 0 0\n2/3\nend\n").unwrap();
    let (code, out, err) = run(&["cohomology", "--model", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries = v["results"][0]["value"]["entries"].as_array().unwrap();
    let total: u64 = entries.iter().map(|e| e["h"].as_u64().unwrap()).sum();
    assert_eq!(total, 4);

    std::fs::write(&path, "transverse-model v1\nn 1\ndim 0 0 1\ndim 1 1 1\nlefschetz 0 0\n0\nend\n").unwrap();
    let (code, _, err) = run(&["cohomology", "--model", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not injective"), "{err}");
}

#[test]
fn usage_errors() {
    for args in [&["verify", "--alpha", "2"][..], &["verify", "--bogus"], &[]] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{err}");
    }
}

#[test]
fn failing_suite_exits_one() {
    let (code, out, _) = run(&["verify", "--n1", "0", "--n2", "0", "--samples", "16"]);
    // S¹ × S¹ is Kähler, so the witness searches cannot succeed, and every
    // almost complex structure on a surface is integrable
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["passed"] == Value::Bool(false))
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["nijenhuis-corrupted-control", "nonkahler-witness-j-cem", "nonkahler-witness-j-alpha"]);
}
