use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn edfn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edfn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn curve_sample_count() {
    let text = stdout(&edfn(&[
        "curve",
        "--h",
        "8",
        "--t",
        "1",
        "--samples",
        "101",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 102);
    assert!(lines[0].starts_with("p,gamma_closed,ed_closed,branch,covered"));
}

#[test]
fn curve_single_point() {
    let text = stdout(&edfn(&["curve", "--h", "5", "--t", "1", "--p", "1/2"]));
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..5], &["1/2", "1/4", "1/4", "a=0", "true"]);
}

#[test]
fn curve_default_grid_has_special_points() {
    let text = stdout(&edfn(&["curve", "--h", "8", "--t", "1", "--no-search"]));
    // 201 uniform points plus p_0 = 1/3
    assert_eq!(text.lines().count(), 1 + 202);
    assert!(text.lines().any(|l| l.starts_with("1/3,")));
    assert!(text.lines().any(|l| l.contains(",,a=1,false,")));
}

#[test]
fn curve_range_error_is_json() {
    let out = edfn(&["curve", "--h", "3", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "out_of_range");
    assert!(err["message"].as_str().unwrap().contains("= 4"));
}

#[test]
fn curve_is_byte_stable_and_json_parses() {
    let args = ["curve", "--h", "13", "--t", "2"];
    assert_eq!(stdout(&edfn(&args)), stdout(&edfn(&args)));
    let v = json(&edfn(&[
        "curve",
        "--h",
        "13",
        "--t",
        "2",
        "--format",
        "json",
        "--samples",
        "5",
    ]));
    assert_eq!(v["p0"], "1/3");
    assert_eq!(v["samples"].as_array().unwrap().len(), 5);
    assert_eq!(v["samples"][0]["gamma"], v["samples"][0]["gamma_closed"]);
}

#[test]
fn g_of_k11() {
    let v = json(&edfn(&[
        "g",
        "--crg",
        &data("k11.json"),
        "--p",
        "1/3",
        "--mode",
        "exact",
    ]));
    assert_eq!(v["g"], "2/9");
    assert_eq!(v["mode"], "exact");
    let v = json(&edfn(&[
        "g",
        "--crg",
        &data("k11.json"),
        "--p",
        "1/3",
        "--numeric",
    ]));
    assert!((v["g"].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-9);
}

#[test]
fn embed_cycle_into_gray_cycles() {
    let v = json(&edfn(&[
        "embed",
        "--h",
        "8",
        "--t",
        "1",
        "--crg",
        &data("tri.json"),
    ]));
    assert_eq!(v["embeds"], false);
    let v = json(&edfn(&[
        "embed",
        "--h",
        "8",
        "--t",
        "1",
        "--crg",
        &data("square.json"),
        "--timeout",
        "5",
    ]));
    assert_eq!(v["embeds"], true);
    assert_eq!(v["phi"].as_array().unwrap().len(), 8);
}

#[test]
fn spectrum_of_graph_file() {
    let v = json(&edfn(&["spectrum", "--graph", &data("c5.json")]));
    assert_eq!(v["extreme"], serde_json::json!([[0, 2], [1, 1], [2, 0]]));
    let text = stdout(&edfn(&[
        "spectrum",
        "--graph",
        &data("c5.json"),
        "--format",
        "csv",
        "--p",
        "1/2",
    ]));
    assert_eq!(text.lines().nth(1).unwrap(), "1/2,1/4,0,2,0.5,0.25");
}

#[test]
fn maxpoint_h7() {
    let v = json(&edfn(&["maxpoint", "--h", "7", "--t", "1"]));
    assert!((v["p_star"].as_f64().unwrap() - (2f64.sqrt() - 1.0)).abs() < 1e-9);
}

#[test]
fn verify_passes_and_writes_file() {
    let path = std::env::temp_dir().join(format!("edfn-verify-{}.json", std::process::id()));
    let out = edfn(&[
        "verify",
        "--suite",
        "all",
        "--h-max",
        "40",
        "--t-max",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["passed"], true);
    assert!(v["asserted_p_cores"].as_u64().unwrap() >= 10);
}

#[test]
fn bad_inputs() {
    let out = edfn(&["g", "--crg", &data("k11.json"), "--p", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = edfn(&["g", "--crg", &data("missing.json"), "--p", "1/2"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "io");
    let out = edfn(&["curve", "--h", "8", "--t", "1", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
