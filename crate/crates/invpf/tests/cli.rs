//! End-to-end runs of the `invpf` binary: exit codes and JSON shape.

use std::process::Command;

fn invpf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_invpf")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(invpf(&["analyze", "x1^3+x2^3+x3^3"]).0, 0);
    let (code, _, err) = invpf(&["analyze", "x1^3+x1*x2"]);
    assert_eq!(code, 2, "{}", err);
    assert_eq!(invpf(&["frobnicate"]).0, 2);
    assert_eq!(invpf(&["verify", "NOPE:*"]).0, 1);
    assert_eq!(invpf(&["verify", "ELL:*"]).0, 0);
}

#[test]
fn json_is_versioned() {
    let (code, out, _) = invpf(&["--json", "--vars", "w,x,y,z", "pf", "--lambda", "w^4+x^4+y^4+z^4"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], invpf::cli::JSON_SCHEMA);
    assert_eq!(v["operator"]["order"], 3);
    let (code, _, err) = invpf(&["--json", "analyze", "x1^5+"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["schema"], invpf::cli::JSON_SCHEMA);
    assert!(v["error"].as_str().unwrap().contains("parse"));
}

#[test]
fn oracle_ledger_is_written() {
    let path = std::env::temp_dir().join(format!("invpf-ledger-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, err) = invpf(&["oracle", "x1^3+x2^3+x3^3", "--emit-ledger", p]);
    assert_eq!(code, 0, "{}", err);
    assert!(out.contains("agrees      yes"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "oracle-ledger");
    std::fs::remove_file(&path).unwrap();
}
