use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plsheaf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

const BOX01: &str = r#"{"dim": 1, "terms": [{"cells": [[{"coeffs": ["1"], "rel": ">=", "rhs": "0"},
                                                    {"coeffs": ["1"], "rel": "<=", "rhs": "1"}]]}]}"#;

#[test]
fn hc_of_half_open_interval_vanishes() {
    let set = file(
        "halfopen.json",
        r#"{"dim": 1, "cells": [[{"coeffs": ["1"], "rel": ">=", "rhs": "0"}, {"coeffs": ["1"], "rel": "<", "rhs": "1"}]]}"#,
    );
    let o = bin(&["hc", "--set", &set]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), serde_json::json!({"dims": {}}));
}

#[test]
fn hc_of_punctured_plane() {
    let set = file(
        "punctured.json",
        r#"{"dim": 2, "cells": [[{"coeffs": ["1", "0"], "rel": "<", "rhs": "0"}],
                                 [{"coeffs": ["1", "0"], "rel": ">", "rhs": "0"}],
                                 [{"coeffs": ["0", "1"], "rel": "<", "rhs": "0"}],
                                 [{"coeffs": ["0", "1"], "rel": ">", "rhs": "0"}]]}"#,
    );
    let o = bin(&["hc", "--set", &set]);
    assert_eq!(stdout(&o), serde_json::json!({"dims": {"1": 1, "2": 1}}));
}

#[test]
fn stalk_of_box_under_nh_transform() {
    let obj = file("box01.json", BOX01);
    let o = bin(&["stalk", "--object", &obj, "--kernel", "nhfs", "--point", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), serde_json::json!({"dims": {"0": 1}}));
    // t below min(0, y): empty fiber.
    let o = bin(&["stalk", "--object", &obj, "--kernel", "nhfs", "--point", "-1,-2"]);
    assert_eq!(stdout(&o), serde_json::json!({"dims": {}}));
}

#[test]
fn stalk_with_kernel_document_matches_builtin() {
    let obj = file("box01-k.json", BOX01);
    // k_{{(x, y, t) : x·y ≤ t}} cannot be written without coupling, so use
    // the plain half-plane kernel {x ≤ y} and compare with a direct count.
    let kernel = file(
        "le.json",
        r#"{"n1": 1, "n2": 1, "terms": [{"cells": [[{"coeffs": ["1", "-1"], "rel": "<=", "rhs": "0"}]]}]}"#,
    );
    let at = |y: &str| stdout(&bin(&["stalk", "--object", &obj, "--kernel", &kernel, "--point", y]));
    assert_eq!(at("1/2"), serde_json::json!({"dims": {"0": 1}}));
    assert_eq!(at("-1"), serde_json::json!({"dims": {}}));
    assert_eq!(at("3"), serde_json::json!({"dims": {"0": 1}}));
}

#[test]
fn verify_examples() {
    let o = bin(&["verify", "--scenario", "fex-closed-cone-dim1", "--samples", "100", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout(&o);
    assert_eq!(doc["status"], "PASS");
    assert_eq!(doc["reports"][0]["status"], "PASS");
    assert!(doc["reports"][0]["samples"].as_u64().unwrap() >= 100);

    let o = bin(&["verify", "--scenario", "negative-shift-bug", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &stdout(&o)["reports"][0];
    assert_eq!(r["status"], "FAIL");
    assert_ne!(r["counterexample"]["expected"], r["counterexample"]["actual"]);
}

#[test]
fn verify_output_is_reproducible_and_can_go_to_a_file() {
    let args = ["verify", "--scenario", "conefou-closed-box", "--samples", "40", "--seed", "9"];
    let (a, b) = (bin(&args), bin(&args));
    assert_eq!(a.stdout, b.stdout);
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report.json");
    let mut with_out = args.to_vec();
    let out_s = out.display().to_string();
    with_out.extend(["--out", &out_s]);
    let c = bin(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);

    let t = stdout(&bin(&["verify", "--scenario", "conefou-closed-box", "--samples", "5", "--timings"]));
    assert!(t["reports"][0]["wall_time_ms"].as_f64().is_some());
    assert!(stdout(&a)["reports"][0].get("wall_time_ms").is_none());
}

#[test]
fn verify_list_names_every_scenario() {
    let doc = stdout(&bin(&["verify", "--list"]));
    let names: Vec<&str> = doc.as_array().unwrap().iter().map(|s| s["scenario"].as_str().unwrap()).collect();
    for want in ["fex-closed-cone-dim1", "fex-closed-cone-dim2", "conefou-closed-box", "negative-shift-bug"] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn transform_against_prediction() {
    // k_{[0,1]} under the nh transform is k_{{t ≥ min(0, y)}}.
    let obj = file("box01-t.json", BOX01);
    let good = file(
        "pred-good.json",
        r#"{"dim": 2, "terms": [{"cells": [[{"coeffs": ["0", "1"], "rel": ">=", "rhs": "0"}],
                                             [{"coeffs": ["-1", "1"], "rel": ">=", "rhs": "0"}]]}]}"#,
    );
    let bad = file("pred-bad.json", r#"{"dim": 2, "terms": [{"cells": [[{"coeffs": ["0", "1"], "rel": ">=", "rhs": "0"}]]}]}"#);
    let o = bin(&["transform", "--object", &obj, "--kind", "nhfs", "--grid", "-2:2:5", "--predict", &good]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = bin(&["transform", "--object", &obj, "--kind", "nhfs", "--grid", "-2:2:5", "--predict", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o)["reports"][0]["status"], "FAIL");

    // Conification of a closed ray is itself.
    let ray = file("ray.json", r#"{"dim": 1, "terms": [{"cells": [[{"coeffs": ["1"], "rel": ">=", "rhs": "0"}]]}]}"#);
    let o = bin(&["transform", "--object", &ray, "--kind", "cone", "--grid", "-3:3:13", "--predict", &ray]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn pw_certificates() {
    let o = bin(&["pw", "--shape", "box", "--radius", "1", "--dim", "1", "--grid", "41", "--ymax", "20", "--orders", "0..4", "--quad", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = stdout(&o);
    assert_eq!(doc["certificates"].as_array().unwrap().len(), 5);
    assert!(doc["certificates"].as_array().unwrap().iter().all(|c| c["verdict"] == "BOUNDED"));

    let o = bin(&[
        "pw", "--shape", "box", "--kind", "indicator", "--radius", "1", "--dim", "1", "--ymax", "60", "--orders", "0..4",
        "--sigma-radius", "1/2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o)["certificates"].as_array().unwrap().iter().all(|c| c["verdict"] == "UNBOUNDED"));

    let o = bin(&["pw", "--shape", "simplex", "--radius", "1", "--dim", "2", "--grid", "7", "--orders", "0,1", "--quad", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["pw", "--shape", "box", "--radius", "1", "--dim", "1", "--quad", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_format_errors_exit_2() {
    assert_eq!(bin(&["hc", "--set", "x.json", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["nosuch"]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--scenario", "nosuch"]).status.code(), Some(2));
    assert_eq!(bin(&["hc", "--set", "/nonexistent/x.json"]).status.code(), Some(2));

    let broken = file("broken.json", "{\"dim\": 1,\n \"cells\": [[{\"coeffs\": [\"1\"], \"rel\": \"<\"}]]}");
    let o = bin(&["hc", "--set", &broken]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("broken.json:2:") && err.contains("rhs"), "{err}");

    let obj = file("box01-e.json", BOX01);
    let o = bin(&["stalk", "--object", &obj, "--kernel", "fs", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["stalk", "--object", &obj, "--kernel", "fs", "--point", "1/0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}
