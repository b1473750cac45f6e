use std::process::{Command, Output};

use serde_json::Value;

fn chromaroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromaroot"))
        .args(args)
        .env_remove("CHROMAROOT_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn poly_of_triangle() {
    let out = chromaroot(&["poly", "Bw"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], "t^3-3*t^2+2*t");
    assert_eq!(v["coeffs"], serde_json::json!([0, 2, -3, 1]));
}

#[test]
fn bad_input_exits_two() {
    let out = chromaroot(&["poly", "zz!"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graph6"));
    let out = chromaroot(&["--out", "svg", "poly", "Bw"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let out = chromaroot(&["enumerate", "--max-n", "11"]);
    assert!(out.status.success());
    let v = json(&out);
    let graphs = v.as_array().or_else(|| v["graphs"].as_array()).expect("list of graphs");
    assert_eq!(graphs.len(), 12);
}

#[test]
fn csv_output() {
    let out = chromaroot(&["--out", "csv", "classify", "Bw"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value"));
    assert!(text.contains("is_gentri,true"));
}

#[test]
fn minor_of_counterexample_pair() {
    let out = chromaroot(&["minor", "H??HmJw", "J??@e?NLEO_"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["minor"], true);
    assert_eq!(v["double_subdivision_order"], false);
}

#[test]
fn roots_of_explicit_polynomial() {
    let out = chromaroot(&["roots", "--poly", "t^2-2", "--lo", "1", "--hi", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    let root = &v["roots"][0];
    assert!(root["approx"].as_str().unwrap().starts_with("1.41421356"));
}

#[test]
fn constants_writes_svg_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("constants.svg");
    let out = chromaroot(&["--out", "svg", "-o", svg.to_str().unwrap(), "constants"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));

    let js = dir.path().join("constants.json");
    let out = chromaroot(&["-o", js.to_str().unwrap(), "constants"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert!(v["checks"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn cache_file_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("memo.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_chromaroot"))
            .args(["poly", "J??@e?NLEO_"])
            .env("CHROMAROOT_CACHE", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(cache.exists());
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn omega_scan_small() {
    let out = chromaroot(&["omega", "--class", "K1", "--max-n", "9"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stdout.is_empty());
}
