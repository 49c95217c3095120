use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lctkit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().expect("exit code"), v)
}

#[test]
fn howald_threshold() {
    let (code, v) = json(&["lct", "x^2, y^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "lct");
    assert_eq!(v["result"], "5/6");
    assert_eq!(v["certificates"]["mu"], "6/5");
}

#[test]
fn staircase_threshold() {
    let (_, v) = json(&["lct", "x^6, x^5*y, x^3*y^2, x^2*y^3, x*y^4, y^6"]);
    assert_eq!(v["result"], "2/5");
}

#[test]
fn nu_of_a_product() {
    let (code, v) = json(&["nu", "--char", "5", "--e", "2", "x*y"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], 24);
}

#[test]
fn nu_over_a_parameter_field() {
    let (code, v) = json(&["nu", "--char", "2", "--parametric", "--e", "3", "x^2 + t*y^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], 3);
    let (code, v) = json(&["nu", "--char", "2", "--e", "3", "x^2 + t*y^2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn golden_examples_match() {
    let (code, v) = json(&["paper-examples"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["all_match"], true);
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let (code, v) = json(&["lct", "x^2, q"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["position"], 5);
    let (code, _) = json(&["lct", "x + y"]);
    assert_eq!(code, 2);
}

#[test]
fn computation_errors_exit_one() {
    let (code, v) = json(&["mult", "x*y"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "not_primary");
}

#[test]
fn budget_reports_a_lower_bound() {
    let (code, v) = json(&["nu", "--char", "2", "--e", "3", "--budget", "1", "x^2+y^3, x*y"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "budget_exceeded");
    assert_eq!(v["error"]["lower_bound"], 1);
}

#[test]
fn output_is_byte_stable() {
    let args = ["check-bound", "x^3, x*y, y^3, z^4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let (_, v) = json(&args);
    assert_eq!(v["certificates"]["e"], "13/12");
    assert_eq!(v["certificates"]["c"], "5/4");
}

#[test]
fn multiplicities_and_sigma() {
    let (_, v) = json(&["mixed", "x^2, y^3, z^4"]);
    assert_eq!(v["result"], serde_json::json!([1, 2, 6, 24]));
    let (_, v) = json(&["sigma", "--j", "2", "x^2, x*y"]);
    assert_eq!(v["result"], "infinity");
    let (_, v) = json(&["mult", "x^2, y^3"]);
    assert_eq!(v["result"], 6);
    let (_, v) = json(&["dp", "x^2, y^3"]);
    assert_eq!(v["result"], "5/6");
}

#[test]
fn classifier_finds_the_swap() {
    let (_, v) = json(&["classify", "x^3, y^2"]);
    assert_eq!(v["result"], "witness");
    assert_eq!(v["certificates"]["degrees"], serde_json::json!([2, 3]));
    assert_eq!(v["certificates"]["variables"], serde_json::json!(["y", "x"]));
    let (_, v) = json(&["classify", "x^3, x*y, y^3, z^4"]);
    assert_eq!(v["result"], "not_applicable");
}

#[test]
fn brackets_and_colons() {
    let (_, v) = json(&["fpt-bracket", "--char", "3", "--e", "2", "x^2, y^3"]);
    assert_eq!(v["certificates"]["monotone"], true);
    for entry in v["result"].as_array().unwrap() {
        assert_eq!(entry["contains_limit"], true);
    }
    let (_, v) = json(&["colon-check", "3", "4", "5", "--weights", "1,1/2,1/3", "--level", "3/2"]);
    assert_eq!(v["certificates"]["all_agree"], true);
}

#[test]
fn degeneration_from_vectors_and_blocks() {
    let (code, v) = json(&["degenerate", "--degrees", "2,3,4,5", "--vector", "1,0,0,2@2", "--vector", "0,2,0,2@3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["m"], 2);
    assert_eq!(v["result"]["layers"][0]["t"], "-1/10");
    assert_eq!(v["result"]["layers"][1]["t"], "1175/1");

    let (code, v) = json(&["degenerate", "--char", "5", "--blocks", "x^2; y^3 + x*y*z; z^7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["initial_forms"][1][0], "x*y*z + y^3");

    let (code, v) = json(&["degenerate", "--degrees", "2,3,4,5", "--vector", "0,2,0,2@3"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "invalid_degeneration");
}

#[test]
fn lojasiewicz_and_closure() {
    let (_, v) = json(&["lojasiewicz", "x^2, y^3"]);
    assert_eq!(v["result"], 3);
    let (_, v) = json(&["closure", "x^2, y^2"]);
    assert_eq!(v["result"], "x^2, x*y, y^2");
}
