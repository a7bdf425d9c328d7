use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spanmack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanmack")).args(args).output().unwrap()
}

fn fixture(name: &str, body: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const SWAP: &str = r#"{"group": "C2", "set": {"size": 2, "act": [[0, 1], [1, 0]]}}"#;

#[test]
fn burnside_table_of_s3() {
    let out = spanmack(&["burnside", "table", "--group", "S3"]);
    assert!(out.status.success());
    let v = json(&out);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert!(table.iter().all(|r| r.as_array().unwrap().len() == 4));
}

#[test]
fn double_coset_check() {
    let out = spanmack(&["span", "dc-check", "--group", "S3", "--subgroup", "C2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["terms"], 2);
    assert_eq!(v["agrees"], true);
}

#[test]
fn cell_check_and_exit_codes() {
    let good = fixture("good.json", &format!(r#"{{"src": {SWAP}, "dst": {SWAP}, "alpha": [0, 1], "theta": [[0, 1], [0, 1]]}}"#));
    assert!(spanmack(&["cell", "check", "--cell", &good]).status.success());
    let bad = fixture("bad.json", &format!(r#"{{"src": {SWAP}, "dst": {SWAP}, "alpha": [0, 1], "theta": [[0, 0], [0, 0]]}}"#));
    let out = spanmack(&["cell", "check", "--cell", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
    let broken = fixture("broken.json", "{\"src\": \n [1, 2");
    let out = spanmack(&["cell", "check", "--cell", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn group_formats_are_accepted() {
    let table = fixture("c2.json", r#"{"order": 2, "mul": [[0, 1], [1, 0]]}"#);
    assert!(spanmack(&["burnside", "table", "--group", &table]).status.success());
    let perms = fixture("s3.json", r#"{"perm_gens": [[1, 0, 2], [1, 2, 0]], "degree": 3}"#);
    let v = json(&spanmack(&["burnside", "table", "--group", &perms]));
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    assert_eq!(spanmack(&["burnside", "table", "--group", "Q7"]).status.code(), Some(2));
}

#[test]
fn deflativity_exit_status() {
    assert!(spanmack(&["mackey", "deflative", "--mackey", "omega"]).status.success());
    let out = spanmack(&["mackey", "deflative", "--mackey", "cardinality"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["witness"].is_object());
}

#[test]
fn kan_extension_and_base_change() {
    let functor = r#"{"src": {"group": "C2"}, "dst": {"group": "e"}, "obj": [0], "mor": [0, 0]}"#;
    let f = fixture("collapse.json", functor);
    let d = fixture("regular.json", r#"{"sets": [2], "maps": [[0, 1], [1, 0]]}"#);
    let out = spanmack(&["deriv", "kan", "--functor", &f, "--diagram", &d]);
    assert!(out.status.success());
    assert_eq!(json(&out)["diagram"]["sets"], serde_json::json!([1]));
    let id = r#"{"src": {"group": "e"}, "dst": {"group": "e"}, "obj": [0], "mor": [0]}"#;
    let sq = fixture(
        "square.json",
        &format!(r#"{{"left": {functor}, "right": {id}, "diagram": {{"sets": [2], "maps": [[0, 1], [1, 0]]}}}}"#),
    );
    let out = spanmack(&["deriv", "base-change", "--square", &sq]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn max_order_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_spanmack"))
        .args(["burnside", "table", "--group", "S4"])
        .env("SPANMACK_MAX_ORDER", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds limit 12"));
}
