use std::path::Path;
use std::process::{Command, Output};

use ringlab_core::report::{text_properties, RingReport};
use serde_json::Value;

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .env_remove("RINGLAB_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn default_corpus() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus/default.corpus")
        .display()
        .to_string()
}

#[test]
fn check_json_and_text_agree() {
    for expr in ["Z4", "T(2,Z2)", "M(2,Z2)", "grpring(Z2,C3)"] {
        let json = ringlab(&["check", expr]);
        assert_eq!(json.status.code(), Some(0), "{expr}");
        let report: RingReport = serde_json::from_str(&stdout(&json)).unwrap();
        let text = ringlab(&["check", expr, "--format", "text"]);
        assert_eq!(text.status.code(), Some(0));
        assert_eq!(text_properties(&stdout(&text)), report.properties, "{expr}");
    }
}

#[test]
fn check_reports_t2_values() {
    let o = ringlab(&["check", "T(2,Z2)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["properties"]["uu"], true);
    assert_eq!(v["properties"]["abelian"], false);
    assert_eq!(v["properties"]["ncunc"], false);
    assert_eq!(v["sets"]["units"]["size"], 2);
}

#[test]
fn classify_accepts_all_reference_forms() {
    let by_label = stdout(&ringlab(&["classify", "Z4", "--element", "3"]));
    let by_prefix = stdout(&ringlab(&["classify", "Z4", "--element", "label:3"]));
    let by_index = stdout(&ringlab(&["classify", "Z4", "--element", "idx:3"]));
    assert_eq!(by_label, by_prefix);
    assert_eq!(by_label, by_index);
    let v: Value = serde_json::from_str(&by_label).unwrap();
    assert_eq!(v["unit"], true);
    assert_eq!(v["inverse"], "3");
    assert_eq!(v["decompositions"]["nil_clean"][0]["idempotent"], "1");
    assert_eq!(v["decompositions"]["nil_clean"][0]["other"], "2");
}

#[test]
fn classify_e11_in_t2_shows_two_nil_clean_decompositions() {
    let o = ringlab(&["classify", "T(2,Z2)", "--element", "[[1,0],[0,0]]"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["decompositions"]["nil_clean"].as_array().unwrap().len(),
        2
    );
    assert_eq!(v["uniquely_nil_clean"], false);
}

#[test]
fn verify_group_ring_is_consistent() {
    let o = ringlab(&["verify", "Z2", "--group", "C2", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v.as_array().unwrap();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|x| x["consistent"] == true));

    let o = ringlab(&["verify", "grpring(Z2,C2)", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn unknown_theorem_lists_known_ids() {
    let o = ringlab(&["verify", "Z4", "--theorem", "no-such-theorem"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("known ids"), "{err}");
}

#[test]
fn exit_codes_for_bad_input_and_size_cap() {
    let parse = ringlab(&["check", "Z(4"]);
    assert_eq!(parse.status.code(), Some(2));
    let unknown = ringlab(&["classify", "Z4", "--element", "label:7"]);
    assert_eq!(unknown.status.code(), Some(2));
    let big = ringlab(&["check", "M(4,Z2)"]);
    assert_eq!(big.status.code(), Some(3));

    let capped = Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(["check", "Z16"])
        .env("RINGLAB_MAX_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn corpus_output_is_independent_of_job_count() {
    let path = default_corpus();
    let one = ringlab(&["corpus", &path, "--jobs", "1", "--stable-output"]);
    let four = ringlab(&["corpus", &path, "--jobs", "4", "--stable-output"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert!(v["generated_at"].is_null());
}

#[test]
fn corpus_errors_set_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let capped = dir.path().join("capped.corpus");
    std::fs::write(&capped, "big | M(4,Z2) | uu=false\n").unwrap();
    let o = ringlab(&["corpus", capped.to_str().unwrap(), "--stable-output"]);
    assert_eq!(o.status.code(), Some(3));

    let malformed = dir.path().join("malformed.corpus");
    std::fs::write(&malformed, "z4 | Z4 | uu=maybe\n").unwrap();
    let o = ringlab(&["corpus", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
