use std::process::{Command, Output};

use serde_json::Value;

fn modwzw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modwzw"))
        .args(args)
        .env_remove("MODWZW_CACHE_DIR")
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn extend_su2_level_four_has_three_classes() {
    let out = modwzw(&["extend", "A1", "--level", "4", "--group", "center"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "extend");
    assert_eq!(v["result"]["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["extended_fusion_all_simple_currents"], true);
    assert_eq!(v["input"]["level"], "4");
    assert!(v["residuals"].as_object().unwrap().values().all(|r| r["pass"] == true));
}

#[test]
fn check_su2_level_two_passes() {
    let out = modwzw(&["check", "A1", "--level", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["residuals"]["simple currents = center"]["pass"], true);
}

#[test]
fn e8_level_two_hits_the_weyl_cap() {
    let out = modwzw(&["modular-data", "E8", "--level", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"]["code"], "weyl-cap");
    assert!(v.get("result").is_none());
}

#[test]
fn parse_errors_are_reported_as_json() {
    let out = modwzw(&["modular-data", "Q7", "--level", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "parse");
    let out = modwzw(&["modular-data", "A1"]);
    assert_eq!(json(&out)["error"]["code"], "parse");
    let out = modwzw(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_and_not_implemented_codes() {
    let out = modwzw(&["orbifold", "A1", "--level", "2", "--shift", "2"]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["error"]["code"], "precondition");
    let out = modwzw(&["extend", "A1", "--level", "2"]);
    assert_eq!(json(&out)["error"]["code"], "precondition");
}

#[test]
fn output_is_deterministic() {
    let args = ["orbifold", "A1", "--level", "4", "--shift", "1"];
    let a = modwzw(&args);
    let b = modwzw(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_defaults_to_csv() {
    let out = modwzw(&["sweep", "A1", "--level", "2-3", "--insertions", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    // 3 + 4 labels give C(5,3) + C(6,3) multisets.
    assert_eq!(rows.len(), 10 + 20);
    assert!(rows.iter().all(|r| &r[5] == "true" && &r[6] == "true"));
}

#[test]
fn orbifold_trace_through_the_cli() {
    let out = modwzw(&[
        "trace", "A1", "--level", "2", "--conjecture", "2", "--shift", "1", "--insertions", "(1),(1),(2)",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["rank"], 1);
}

#[test]
fn boundary_report_counts() {
    let out = modwzw(&["boundary", "A1", "--level", "2", "--shift", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["boundary_labels"].as_array().unwrap().len(), 6);
}
