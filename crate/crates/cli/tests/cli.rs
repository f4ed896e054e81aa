use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvecheck"))
        .args(args)
        .env_remove("CURVECHECK_THREADS")
        .output()
        .expect("spawn curvecheck")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn validator() -> jsonschema::Validator {
    let raw = include_str!("../schemas/report.schema.json");
    let schema: Value = serde_json::from_str(raw).unwrap();
    jsonschema::draft7::new(&schema).expect("schema compiles")
}

/// Runs with `--json`, checks the exit code, validates against the schema
/// and checks that a second run is byte-identical.
fn json(args: &[&str], expected_code: i32) -> Value {
    let mut full: Vec<&str> = args.to_vec();
    full.push("--json");
    let first = run(&full);
    assert_eq!(code(&first), expected_code, "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
    let second = run(&full);
    assert_eq!(first.stdout, second.stdout, "{args:?} output is not byte-stable");
    let doc: Value = serde_json::from_slice(&first.stdout).expect("valid JSON");
    let v = validator();
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    assert_eq!(doc["schema_version"], "1");
    doc
}

#[test]
fn classify_bolza_mod_3_is_ordinary() {
    let doc = json(&["classify", "y^2 = x^5 - x mod 3", "--e", "2"], 0);
    let r = &doc["results"];
    assert_eq!(r["genus"], 2);
    assert_eq!(r["p_rank_verdict"], "ordinary");
    assert_eq!(r["point_counts"][0]["status"], "neither");
    assert_eq!(r["crosscheck"]["consistent"], true);
}

#[test]
fn classify_bolza_mod_5_is_superspecial() {
    let doc = json(&["classify", "y^2 = x^5 - x mod 5", "--e", "2"], 0);
    let r = &doc["results"];
    assert_eq!(r["p_rank_verdict"], "superspecial");
    let status = r["point_counts"][0]["status"].as_str().unwrap();
    assert!(status == "maximal" || status == "minimal", "{status}");
    assert_eq!(r["hasse_witt"]["stable_rank"], 0);
}

#[test]
fn classify_rejects_bad_curves() {
    let out = run(&["classify", "y^2 = x^5 - x mod 4"]);
    assert_eq!(code(&run(&["classify", "y^2 = x^5 + x + 1 mod 2"])), 1);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
    assert!(out.stdout.is_empty());
}

#[test]
fn classify_other_models() {
    let doc = json(&["classify", "y^4 = x^3 - x mod 3", "--e", "1,2"], 0);
    assert_eq!(doc["results"]["kind"], "artin-schreier-quotient");
    assert_eq!(doc["results"]["hasse_witt"], Value::Null);
    let doc = json(&["classify", "y^3 = x^4 + 1 mod 7"], 0);
    assert_eq!(doc["results"]["kind"], "general");
    assert_eq!(doc["results"]["genus"], Value::Null);
    let doc = json(&["classify", "y^2 = x^2 + 1 mod 3"], 0);
    assert_eq!(doc["results"]["genus"], 0);
    assert_eq!(doc["results"]["p_rank_verdict"], Value::Null);
    assert!(!doc["results"]["notes"].as_array().unwrap().is_empty());
}

#[test]
fn rep_examples() {
    let doc = json(&["rep", "--p", "5", "--m", "2"], 0);
    assert_eq!(doc["results"]["verdict"], "absolutely-irreducible");
    assert_eq!(doc["results"]["dim"], 2);
    assert_eq!(doc["inputs"]["seed"], 0);

    let doc = json(&["rep", "--p", "5", "--m", "3"], 0);
    assert_eq!(doc["results"]["verdict"], "reducible");
    assert_eq!(doc["results"]["witness"]["dim"], 1);

    assert_eq!(code(&run(&["rep", "--p", "5", "--m", "4"])), 1);
}

#[test]
fn rep_hermitian_uses_degree_four_field() {
    let doc = json(&["rep", "--p", "3", "--m", "4"], 0);
    assert_eq!(doc["results"]["field"], "F_3^4");
    assert_eq!(doc["results"]["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn search_tame_outside() {
    let doc = json(&["search", "--spec", "tame-outside", "--p-max", "200"], 0);
    assert_eq!(doc["results"]["primes"], serde_json::json!([2, 3, 5, 7]));
    let doc = json(&["search", "--spec", "mersenne", "--p-max", "10000"], 0);
    assert_eq!(doc["results"]["primes"], serde_json::json!([]));
    assert_eq!(code(&run(&["search", "--spec", "nonsense"])), 1);
}

#[test]
fn hurwitz_examples() {
    let doc = json(&["hurwitz", "--gy", "0", "--order", "2", "--ram", "2:1,2:1,2:1,2:1,2:1,2:1"], 0);
    assert_eq!(doc["results"]["outcome"], "solved");
    assert_eq!(doc["results"]["unknown"], "g_X");
    assert_eq!(doc["results"]["value"], "2");

    let doc = json(&["hurwitz", "--gx", "2", "--gy", "0", "--order", "2", "--ram", "2:1"], 2);
    assert_eq!(doc["results"]["outcome"], "inconsistent");

    assert_eq!(code(&run(&["hurwitz", "--gy", "0", "--order", "2", "--ram", "2:1,,2:1"])), 1);
    assert_eq!(code(&run(&["hurwitz", "--gy", "0", "--order", "2", "--ram", "2-1"])), 1);
    assert_eq!(code(&run(&["hurwitz", "--order", "2", "--ram", "2:1"])), 1);
}

#[test]
fn bounds_aut_ordinary_g100() {
    let doc = json(&["bounds", "--kind", "aut-ordinary", "--g", "100"], 0);
    let value: u64 = doc["results"]["value"].as_str().unwrap().parse().unwrap();
    assert!(389_000 < value && value <= 390_000, "{value}");
    assert!(doc["results"]["comparisons"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn bounds_kinds_and_errors() {
    let doc = json(&["bounds", "--kind", "fine-cor", "--q", "5", "--g", "10", "--c", "0", "--d", "2"], 0);
    assert_eq!(doc["results"]["formula_id"], "fine-cor");
    let doc = json(&["bounds", "--kind", "max-fine", "--q", "9", "--g", "12"], 0);
    assert!(doc["results"]["value"].as_str().unwrap().parse::<u64>().is_ok());
    json(&["bounds", "--kind", "case-IV-final", "--p", "3", "--n", "2"], 0);

    let mismatch = run(&["bounds", "--kind", "fine-cor", "--q", "5", "--g", "12", "--c", "0", "--d", "2"]);
    assert_eq!(code(&mismatch), 2);
    assert_eq!(code(&run(&["bounds", "--kind", "max-fine"])), 1);
    assert_eq!(code(&run(&["bounds", "--kind", "bogus", "--q", "3"])), 1);
}

#[test]
fn large_bounds_are_strings() {
    let doc = json(&["bounds", "--kind", "max-rough", "--q", "1000003"], 0);
    let v = &doc["results"]["value"];
    assert!(v.is_string());
    assert!(v.as_str().unwrap().len() > 16);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&[])), 1);
}

#[test]
fn thread_override_does_not_change_output() {
    let args = ["search", "--spec", "tame-inside", "--json"];
    let base = run(&args);
    let single = Command::new(env!("CARGO_BIN_EXE_curvecheck"))
        .args(args)
        .env("CURVECHECK_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(base.stdout, single.stdout);
}
