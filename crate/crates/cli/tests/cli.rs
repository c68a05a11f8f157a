use std::path::PathBuf;
use std::process::Command;

use monogen_cli::{builtin_suite, run, run_scenario, run_text, Flags, EXIT_CONFIG, EXIT_OK};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn json() -> Flags {
    Flags { json: true, ..Flags::default() }
}

#[test]
fn bundled_example_passes() {
    let out = run(&scenario("example_a1.json"), &Flags::default());
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("28 of 28 asserted checks passed"), "{}", out.stdout);
}

#[test]
fn non_monic_tower_is_a_configuration_error() {
    let text = r#"{ "name": "bad", "field": { "p": 2 },
        "tower": [{ "label": "y", "poly": "x*y^2+1" }],
        "elements": { "s": "y" }, "task": { "kind": "disc", "element": "s" } }"#;
    let out = run_text(text, &Flags::default());
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.stderr.starts_with("error:"), "{}", out.stderr);
}

#[test]
fn unknown_keys_and_tasks_are_rejected() {
    let extra = r#"{ "name": "x", "field": { "p": 2 }, "colour": 1,
        "task": { "kind": "verify-a1", "m_max": 1 } }"#;
    assert_eq!(run_text(extra, &json()).code, EXIT_CONFIG);
    let task = r#"{ "name": "x", "field": { "p": 2 }, "task": { "kind": "plot" } }"#;
    assert_eq!(run_text(task, &json()).code, EXIT_CONFIG);
    assert_eq!(run(&scenario("missing.json"), &json()).code, EXIT_CONFIG);
}

#[test]
fn flags_override_the_scenario() {
    let out =
        run(&scenario("counterexample.json"), &Flags { mmax: Some(2), seed_eta: Some("x^2+x+1".into()), ..json() });
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["parameters"][0][1], "x^2+x+1");
    assert_eq!(v["result"]["parameters"][1][1], "2");
    // a flag that has no meaning for the task is a configuration error
    let out = run(&scenario("bounds.json"), &Flags { bx: Some(3), ..json() });
    assert_eq!(out.code, EXIT_CONFIG);
    // x is not prime to x, so the seed violates the hypotheses
    let out = run(&scenario("counterexample.json"), &Flags { seed_eta: Some("x".into()), ..json() });
    assert_eq!(out.code, EXIT_CONFIG);
}

#[test]
fn search_report_has_patterns() {
    let out = run(&scenario("search_sym.json"), &Flags { bx: Some(20), ..json() });
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["task"], "search");
    let pairs = v["result"]["search"]["pairs"].as_array().unwrap();
    let ms: Vec<u64> = pairs.iter().map(|p| p["m"].as_u64().unwrap()).collect();
    assert_eq!(ms, [1, 2, 7, 8, 14]);
    assert_eq!(v["result"]["patterns_consistent"], true);
    assert!(v["result"]["search"]["closure_violations"].as_array().unwrap().is_empty());
}

#[test]
fn places_flag_changes_the_base_ring() {
    // over F_3[x, 1/x], x^2 is a unit
    let out = run(&scenario("addendum.json"), &Flags { places: Some(vec!["x".into()]), ..json() });
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["verdict"], "both_units");
}

#[test]
fn builtin_suites_run() {
    for s in ["a1", "b"] {
        let out = run_scenario(builtin_suite(s).unwrap(), &json());
        assert_eq!(out.code, EXIT_OK, "{s}: {}", out.stderr);
    }
    assert!(builtin_suite("c").is_err());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_monogen");
    let ok = Command::new(bin).args(["run", scenario("disc.json").to_str().unwrap(), "--json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["result"]["discriminant"], "x^12");
    let bad = Command::new(bin).args(["run", "/nonexistent.json"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_CONFIG));
    let usage = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_CONFIG));
    let v = Command::new(bin).args(["verify", "counterexample", "--mmax", "2"]).output().unwrap();
    assert_eq!(v.status.code(), Some(EXIT_OK));
}
