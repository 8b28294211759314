use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn latkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latkit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = latkit(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn analyze_hochschild() {
    let r = json(&["analyze", "--gen", "hoch", "3"]);
    assert_eq!(r["dimension"]["value"], 3);
    assert_eq!(r["extremal"], true);
    assert_eq!(r["semidistributive"], true);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys[..4], ["n", "length", "jirr", "mirr"]);
}

#[test]
fn analyze_chain_file() {
    let r = json(&["analyze", &data("chain5.json")]);
    assert_eq!(r["dimension"]["value"], 1);
    assert_eq!(r["shellability"]["verdict"], "shellable");
}

#[test]
fn analyze_non_extremal_script() {
    let r = json(&["analyze", "--script", &data("non_extremal_script.json")]);
    assert_eq!(r["extremal"], false);
    assert_eq!(r["shellability"]["verdict"], "not_shellable");
    assert_eq!(r["certificate"]["extremal"], false);
}

#[test]
fn shell_facet_graph_of_script() {
    let r = json(&["shell", "--fa", "--script", &data("non_extremal_script.json")]);
    let pair = r["disjoint_source_sets"].as_array().unwrap();
    assert_eq!(pair.len(), 2);
    assert_eq!(r["chains"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_labelling_suite() {
    let o = latkit(&["verify", "labelling", "--seed", "7", "--count", "500"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("labelling: 500/500 pass"));
}

#[test]
fn verify_is_independent_of_jobs() {
    let a = latkit(&["verify", "doubling", "--seed", "3", "--count", "40", "--jobs", "1"]);
    let b = latkit(&["verify", "doubling", "--seed", "3", "--count", "40", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

#[test]
fn unknown_suite_is_an_input_error() {
    let o = latkit(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn export_galois_dot_of_hochschild() {
    let o = latkit(&["export", "--gen", "hoch", "3", "--format", "dot_galois"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("digraph galois {"));
    assert_eq!(text.matches("->").count(), 5);
    assert_eq!(text, stdout(&latkit(&["export", "--gen", "hoch", "3", "--format", "dot_galois"])));
}

#[test]
fn export_chain_hasse_is_a_path() {
    let text = stdout(&latkit(&["export", &data("chain5.json"), "--format", "dot_hasse"]));
    for i in 0..5 {
        assert!(text.contains(&format!("n{i} -> n{};", i + 1)));
    }
    assert_eq!(text.matches("->").count(), 5);
}

#[test]
fn export_json_roundtrip() {
    let dir = std::env::temp_dir().join(format!("latkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("tam.json");
    let file = file.to_str().unwrap();
    let o = latkit(&["export", "--gen", "ptam", "1,2,1", "--format", "json", "-o", file]);
    assert!(o.status.success());
    let a = json(&["analyze", file]);
    let b = json(&["analyze", "--gen", "ptam", "1,2,1"]);
    assert_eq!(a, b);
    assert_eq!(a["n"], 10);
    assert_eq!(a["dimension"]["value"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unsupported_export_format() {
    let o = latkit(&["export", "--gen", "hoch", "2", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wrong_json_shape_reports_position() {
    let o = latkit(&["analyze", &data("plain_arrow.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn bad_flags_exit_with_input_error() {
    assert_eq!(latkit(&["analyze", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(latkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn tafs_check_failure_is_an_assertion() {
    let o = latkit(&["tafs", "check", &data("plain_arrow.json")]);
    assert_eq!(o.status.code(), Some(2));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["ok"], false);
}

#[test]
fn tafs_counterexample_report() {
    let r = json(&["tafs", "counterexample"]);
    assert_eq!(r["sd"], true);
    assert_eq!(r["chi"], 4);
    assert_eq!(r["grotzsch"], true);
    assert_eq!(r["admits_tafs"], false);
}

#[test]
fn dimension_methods() {
    assert_eq!(json(&["dim", "--gen", "boolean", "3"])["chi"], 3);
    assert_eq!(json(&["dim", "--method", "oracle", "--gen", "boolean", "2"])["dim"], 2);
    assert_eq!(json(&["dim", "--method", "bounds", "--gen", "hoch", "4"])["lower"], 4);
}

#[test]
fn double_with_certificate() {
    let r = json(&["double", "--script", &data("non_extremal_script.json"), "--certify"]);
    assert_eq!(r["lattice"]["n"], 11);
    assert_eq!(r["verdicts"]["extremal"], false);
    assert_eq!(r["certificate"]["congruence_uniform"], true);
}

#[test]
fn galois_then_reconstruct() {
    let dir = std::env::temp_dir().join(format!("latkit-galois-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g.json");
    let g = stdout(&latkit(&["galois", "--gen", "words", "2", "3"]));
    std::fs::write(&file, g).unwrap();
    let l = json(&["reconstruct", file.to_str().unwrap()]);
    assert_eq!(l["n"], 25);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn labelling_table() {
    let o = latkit(&["labelling", "--gen", "boolean", "2", "--chain", "0,1,3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("edge\tg1\tg1'\tg2\tg2'"));
}

#[test]
fn canonical_join_graph_of_boolean_lattice_is_complete() {
    let r = json(&["cjg", "--gen", "boolean", "3"]);
    assert_eq!(r["edges"].as_array().unwrap().len(), 3);
}
