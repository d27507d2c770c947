use std::process::{Command, Output};

use serde_json::Value;

fn sparsest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sparsest")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generators_term_counts() {
    let out = sparsest(&["generators", "--matrix", "generic:3x3", "--family", "minors", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["generators"][0]["terms"], 6);

    let out = sparsest(&["generators", "--family", "pfaffians", "--matrix", "skew:4", "--t", "4"]);
    let v = json(&out);
    assert_eq!((v["count"].as_u64(), v["generators"][0]["terms"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(sparsest(&["generators", "--matrix", "generic:3x3", "--t", "5"]).status.code(), Some(2));
    assert_eq!(sparsest(&["generators", "--spec", "{not json"]).status.code(), Some(2));
    assert_eq!(sparsest(&["generators", "--spec", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(sparsest(&["search", "--matrix", "generic:3x3", "--d-max", "2"]).status.code(), Some(2));
    assert_eq!(sparsest(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn search_minors_and_pfaffians() {
    let out = sparsest(&["search", "--matrix", "generic:3x3", "--t", "3", "--d-max", "3", "--k-max", "6", "--p", "32003"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "found");
    assert_eq!(v["k"], 6);
    assert_eq!(v["classification"]["shape"], "monomial_times_power_of_minor");
    assert_eq!(v["classification"]["frobenius_e"], 0);

    let out = sparsest(&["search", "--matrix", "skew:5", "--family", "pfaffians", "--t", "4", "--d-max", "2", "--k-max", "3"]);
    let v = json(&out);
    assert_eq!(v["k"], 3);
    assert_eq!(v["classification"]["shape"], "monomial_times_power_of_pfaffian");
}

#[test]
fn explicit_spec_binomial() {
    let spec = r#"{"family":"explicit","nvars":3,"field":{"p":0},
        "generators":["x(1)^2 - 2*x(1)*x(3) + x(3)^2","3*x(1) - x(2) - 2*x(3)"]}"#;
    let out = sparsest(&["binomial", "--spec", spec, "--d-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["binomial"], "x(1)^3 - x(2)*x(3)^2");
}

#[test]
fn resource_cap_exits_3() {
    let out = sparsest(&["search", "--matrix", "generic:3x3", "--d-min", "13", "--d-max", "13", "--k-max", "6"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"], "resource_cap");
}

#[test]
fn certificates_are_byte_identical_across_workers() {
    let args = ["search", "--matrix", "generic:3x4", "--t", "3", "--d-max", "3", "--k-max", "6", "--collect-all"];
    let one = sparsest(&[&["--workers", "1"], &args[..]].concat());
    let eight = sparsest(&[&["--workers", "8"], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("sparsest-cli-{}.json", std::process::id()));
    let out = sparsest(&["s3", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["count"], 1);
    let _ = std::fs::remove_file(path);
}

#[test]
fn verify_paper_and_fault_injection() {
    let out = sparsest(&["verify-paper", "--level", "smoke", "--only", "1,2,8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let out = sparsest(&["verify-paper", "--only", "2", "--fault", "unsigned-pfaffian"]);
    assert_eq!(out.status.code(), Some(4));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("pfaffian_squared_is_det"), "{stderr}");
    assert!(stderr.contains("sparsest verify-paper"), "{stderr}");
}

#[test]
fn lemma_commands() {
    let out = sparsest(&["gin", "--p", "2", "--lemma", "3,2,3,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["matches"], true);

    let out = sparsest(&["borel", "--nvars", "2", "--monomial", "x(1)^2", "--monomial", "x(2)^2", "--p", "2"]);
    assert_eq!(json(&out)["borel_fixed"], true);
    let out = sparsest(&["borel", "--nvars", "2", "--monomial", "x(1)^2", "--monomial", "x(2)^2"]);
    assert_eq!(json(&out)["borel_fixed"], false);

    let out = sparsest(&["prop-linear", "--n", "4", "--r", "2", "--d-max", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let out = sparsest(&["sample", "--matrix", "generic:3x4", "--rank", "2", "--count", "3"]);
    let v = json(&out);
    assert!(v["samples"].as_array().unwrap().iter().all(|s| s["rank"].as_u64().unwrap() <= 2));
}
