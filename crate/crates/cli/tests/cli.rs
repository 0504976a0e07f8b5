use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chevalley")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn kernel_suite_passes() {
    let out = run(&["verify", "kernel", "--system", "A2", "--ring", "gf:3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["kernel_dimension"], 0);
    assert_eq!(v["summary"]["control_kernel_dimension"], 1);
}

#[test]
fn lemma2_d4() {
    let out = run(&["verify", "lemma2", "--system", "D4", "--count", "100", "--seed", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["round_trips"], "100/100");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["verify", "lemma3", "--system", "A3", "--count", "3", "--seed", "9", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn e8_roots() {
    let out = run(&["roots", "--system", "E8", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["roots"].as_array().unwrap().len(), 240);
    assert_eq!(v["n"], 248);
    assert_eq!(v["maximal_root"], serde_json::json!([2, 3, 4, 6, 5, 4, 3, 2]));
    let plain = String::from_utf8(run(&["roots", "--system", "E8"]).stdout).unwrap();
    assert!(plain.starts_with("E8: rank 8, 240 roots, dimension 248"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["roots", "--system", "B3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "lemma2", "--ring", "zmod:6^2"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "--system", "A2"]).status.code(), Some(2));
}

#[test]
fn failing_suite_exits_1() {
    let out = run(&["verify", "marked", "--system", "D4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn decompose_identity() {
    let dir = std::env::temp_dir().join(format!("chevalley-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("id.json");
    let rows: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| i64::from(i == j)).collect()).collect();
    std::fs::write(&path, serde_json::json!({ "n": 8, "ring": "zmod:3^2", "rows": rows }).to_string()).unwrap();
    let out = run(&["decompose", "--system", "A2", "--input", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let f = &json(&out)["factors"];
    assert_eq!(f["lambda"], 1);
    assert!(f["t"].as_array().unwrap().iter().all(|x| x == 0));
}
