use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn wsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsuper")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, v.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example_pyramid() -> Value {
    json!({"shift": [[0, 1, 1], [0, 0, 0], [1, 1, 0]], "ell": 4, "signs": "101"})
}

#[test]
fn pyramid_data_of_the_example() {
    let dir = TempDir::new().unwrap();
    let shift = write(&dir, "shift.json", &json!([[0, 1, 1], [0, 0, 0], [1, 1, 0]]));
    let out = wsuper(&["--json", "pyramid", "--shift", s(&shift), "--ell", "4", "--signs", "101"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["p"], json!([2, 3, 4]));
    assert_eq!(v["column_heights"], json!([-1, -1, -1, 0]));
    assert_eq!(v["d0"], json!(32));
    assert_eq!(v["d1"], json!(26));
    assert_eq!(v["good_pair"], json!(true));
    let again = wsuper(&["--json", "pyramid", "--shift", s(&shift), "--ell", "4", "--signs", "101"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn invalid_shift_matrix_is_rejected() {
    let dir = TempDir::new().unwrap();
    let shift = write(&dir, "shift.json", &json!([[0, 1], [1, 0]]));
    let out = wsuper(&["--json", "pyramid", "--shift", s(&shift), "--ell", "2", "--signs", "00"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "invalid_input");
}

#[test]
fn module_eval_of_the_worked_tableau() {
    let dir = TempDir::new().unwrap();
    let t = write(
        &dir,
        "t.json",
        &json!({"pyramid": example_pyramid(), "rows": [["-2", "-2"], ["1", "1", "1"], ["3", "-2", "-2", "-2"]]}),
    );
    let out = wsuper(&["--json", "module-eval", "--tableau", s(&t)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["column_connected"], json!(true));
    assert_eq!(v["symbolic_check"], json!(true));
    let ev = &v["eigenvalues"];
    assert_eq!(ev["a[1][1]"], "2");
    assert_eq!(ev["a[1][2]"], "1");
    assert_eq!(ev["a[2][3]"], "1");
    assert_eq!(ev["a[3][3]"], "-11");
    assert_eq!(ev["a[3][4]"], "-4");
}

#[test]
fn module_eval_of_a_non_column_connected_tableau() {
    let dir = TempDir::new().unwrap();
    let t = write(
        &dir,
        "t.json",
        &json!({"pyramid": example_pyramid(), "rows": [["0", "0"], ["1", "1", "1"], ["0", "0", "0", "0"]]}),
    );
    let out = wsuper(&["--json", "module-eval", "--tableau", s(&t)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["column_connected"], json!(false));
    assert_eq!(v["symbolic_check"], Value::Null);
}

#[test]
fn classify_small_pools() {
    let dir = TempDir::new().unwrap();
    let single = write(&dir, "single.json", &json!({"shift": [[0]], "ell": 1, "signs": "0"}));
    let out = wsuper(&["--json", "classify", "--pyramid", s(&single), "--pool", "0"]);
    assert_eq!(json_of(&out)["count"], json!(1));
    let out = wsuper(&["--json", "classify", "--pyramid", s(&single), "--pool", "-1,0,1/2"]);
    assert_eq!(json_of(&out)["count"], json!(3));
    let py = write(&dir, "py.json", &example_pyramid());
    let out = wsuper(&["--json", "classify", "--pyramid", s(&py), "--pool", "-1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], json!(12));
    assert_eq!(v["classes"].as_array().unwrap().len(), 12);
}

#[test]
fn solve_round_trip_and_non_split() {
    let dir = TempDir::new().unwrap();
    let py = write(&dir, "py.json", &example_pyramid());
    let ev = write(&dir, "ev.json", &json!({"a[1][1]": "2", "a[1][2]": "1", "a[2][1]": "3", "a[3][1]": "-1"}));
    let out = wsuper(&["--json", "solve", "--pyramid", s(&py), "--eigenvalues", s(&ev)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["mode"], "exact");
    let t = write(&dir, "t.json", &v["tableau"]);
    let back = json_of(&wsuper(&["--json", "module-eval", "--tableau", s(&t)]));
    assert_eq!(back["column_connected"], json!(true));
    assert_eq!(back["eigenvalues"]["a[3][1]"], "-1");
    assert_eq!(back["eigenvalues"]["a[2][1]"], "3");

    let numeric = json_of(&wsuper(&["--json", "solve", "--pyramid", s(&py), "--eigenvalues", s(&ev), "--numeric"]));
    assert_eq!(numeric["mode"], "numeric");
    for row in numeric["rows"].as_array().unwrap() {
        for z in row.as_array().unwrap() {
            assert!(z["im"].as_f64().unwrap().abs() < 1e-8);
        }
    }

    let row = write(&dir, "row.json", &json!({"shift": [[0]], "ell": 2, "signs": "0"}));
    let irrational = write(&dir, "irr.json", &json!({"a[1][1]": "0", "a[1][2]": "-2"}));
    let out = wsuper(&["--json", "solve", "--pyramid", s(&row), "--eigenvalues", s(&irrational)]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["error"]["kind"], "non_split");
}

#[test]
fn dims_in_characteristic_five() {
    let dir = TempDir::new().unwrap();
    let py = write(&dir, "py.json", &example_pyramid());
    let out = wsuper(&["--json", "dims", "--pyramid", s(&py), "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["dimension"], json!((5u128.pow(16) * 2u128.pow(13)).to_string()));
}

#[test]
fn wgen_verify_selected_relations() {
    let dir = TempDir::new().unwrap();
    let py = write(&dir, "py.json", &example_pyramid());
    let out = wsuper(&["--json", "wgen-verify", "--pyramid", s(&py), "--max-level", "2", "--relations", "3.2,3.4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["ok"], json!(true));
    assert!(!v["relations"].as_array().unwrap().is_empty());
    let out = wsuper(&["--json", "wgen-verify", "--pyramid", s(&py), "--relations", "9.9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn errors_and_usage() {
    let out = wsuper(&["--json", "dims", "--pyramid", "/nonexistent/py.json", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["code"], json!(2));
    let out = wsuper(&["dims", "--pyramid", "/nonexistent/py.json", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_input");
    assert_eq!(wsuper(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(wsuper(&["--help"]).status.code(), Some(0));
}
