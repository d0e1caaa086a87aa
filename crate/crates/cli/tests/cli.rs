//! End-to-end runs of the `linset` binary: output schemas, worked values
//! and the exit-status contract (0 pass, 1 disagreement, 2 usage error).

use std::process::{Command, Output};

fn linset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_case_three_json() {
    let out = linset(&["classify", "--p", "2", "--e", "1", "--b", "2", "--format", "json"]);
    let json = stdout_json(&out);
    assert_eq!(json["case"], 3);
    assert_eq!(json["size"], 9);
    assert_eq!(json["scattered"], false);
    assert_eq!(json["actual_spectrum"]["1"], 6);
    assert_eq!(json["actual_spectrum"]["2"], 3);
    assert_eq!(json["predicted_spectrum"], json["actual_spectrum"]);
    assert_eq!(json["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
}

#[test]
fn classify_pseudoregulus_is_scattered() {
    let out = linset(&["classify", "--p", "2", "--e", "1", "--b", "0", "--format", "json"]);
    let json = stdout_json(&out);
    assert_eq!(json["case"], 1);
    assert_eq!(json["size"], 15);
    assert_eq!(json["scattered"], true);
}

#[test]
fn classify_csv_has_fixed_columns() {
    let out = linset(&["classify", "--p", "2", "--e", "1", "--b", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,b_code,case,size,w1,w2,norm_invariant_code,class_rep_code"
    );
    assert_eq!(lines.next().unwrap(), "2,2,3,9,6,3,6,2");
}

#[test]
fn classify_rejects_out_of_range_code() {
    let out = linset(&["classify", "--p", "2", "--e", "1", "--b", "70000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn classify_rejects_non_prime_characteristic() {
    let out = linset(&["classify", "--p", "6", "--e", "1", "--b", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_equivalence_pair() {
    let out = linset(&[
        "classify", "--p", "2", "--e", "1", "--b", "2", "--c", "4", "--format", "json",
    ]);
    let json = stdout_json(&out);
    // g and g² are PGL-inequivalent but PΓL-equivalent
    assert_eq!(json["equivalence"]["pgl"], false);
    assert_eq!(json["equivalence"]["pgammal"], true);
}

#[test]
fn census_q3_pgl_counts() {
    let out = linset(&["census", "--p", "3", "--e", "1", "--group", "pgl", "--format", "json"]);
    let json = stdout_json(&out);
    assert_eq!(json["q"], 3);
    assert_eq!(json["group"], "PGL");
    let count = |case: u64| {
        json["classes"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["case"] == case)
            .count()
    };
    assert_eq!((count(1), count(2), count(3)), (3, 1, 3));
}

#[test]
fn census_q2_pgammal_single_scattered_class() {
    let out = linset(&["census", "--p", "2", "--e", "1", "--group", "pgammal", "--format", "json"]);
    let json = stdout_json(&out);
    let scattered = json["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["case"] == 1)
        .count();
    assert_eq!(scattered, 1, "only b = 0 is scattered at q = 2");
}

#[test]
fn census_q5_pgl_ten_scattered_classes() {
    let out = linset(&["census", "--p", "5", "--e", "1", "--group", "pgl", "--format", "json"]);
    let json = stdout_json(&out);
    let scattered = json["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["case"] == 1)
        .count();
    assert_eq!(scattered, 10, "q(q−1)/2 at q = 5");
}

#[test]
fn verify_weights_passes() {
    let out = linset(&["verify", "weights", "--p", "2", "--e", "1", "--format", "json"]);
    let json = stdout_json(&out);
    assert_eq!(json["passed"], true);
    assert_eq!(json["reports"][0]["check"], "weights");
    assert_eq!(json["reports"][0]["pairs_tested"], 16);
    assert_eq!(json["reports"][0]["failures"], serde_json::json!([]));
}

#[test]
fn verify_orbits_passes_at_q2() {
    let out = linset(&["verify", "orbits", "--p", "2", "--e", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_orbits_rejects_oversized_field() {
    let out = linset(&["verify", "orbits", "--p", "5", "--e", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size guard"));
}

#[test]
fn verify_geometry_passes() {
    let out = linset(&["verify", "geometry", "--p", "2", "--e", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"));
}

#[test]
fn verify_all_csv_lists_every_check() {
    let out = linset(&["verify", "all", "--p", "2", "--e", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,q,pairs_tested,agreements,failures"));
    for check in [
        "weights",
        "orbit census counts",
        "oracle agreement",
        "gl-class-one matrix identity",
        "graph subspace census",
        "subgeometry fixed-point scans",
        "projection reproduces linear set",
        "scattered spread and special line",
    ] {
        assert!(text.contains(check), "missing report for {check}");
    }
}

#[test]
fn modulus_override_is_honored() {
    // x⁴+x³+1 is the other primitive quartic over GF(2); the generator
    // packs differently so the worked values shift with it
    let out = linset(&[
        "classify", "--p", "2", "--e", "1", "--modulus", "1,0,0,1,1", "--b", "2", "--format",
        "json",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["modulus"], serde_json::json!([1, 0, 0, 1, 1]));
    assert_eq!(json["size"], 9, "case sizes do not depend on the modulus");
    let out = linset(&["classify", "--p", "2", "--e", "1", "--modulus", "1,1,1,1,1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2), "non-primitive modulus rejected");
}

#[test]
fn env_variables_supply_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_linset"))
        .args(["classify", "--format", "json"])
        .env("LINSET_P", "2")
        .env("LINSET_E", "1")
        .env("LINSET_B", "2")
        .output()
        .expect("binary runs");
    let json = stdout_json(&out);
    assert_eq!(json["case"], 3);
}
