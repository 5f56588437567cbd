mod common;

use std::process::{Command, Output};

use common::scene_path;

fn qprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qprop"))
        .args(args)
        .env_remove("QPROP_EPS")
        .output()
        .expect("binary runs")
}

fn scene(name: &str) -> String {
    scene_path(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("qprop-test-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_valid_scene() {
    let o = qprop(&["check", &scene("sigma_z.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("status: pass"));
}

#[test]
fn check_reports_sum_residual() {
    let o = qprop(&["check", &scene("bad_sum.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("do not sum to the identity"), "{out}");
    assert!(out.contains("residual 1.414e0"), "{out}");
}

#[test]
fn check_malformed_is_input_error() {
    let o = qprop(&["check", &scene("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 7"), "{}", stderr(&o));
}

#[test]
fn check_missing_file_is_input_error() {
    let o = qprop(&["check", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_case_table() {
    let o = qprop(&["eval", &scene("case_table.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let values: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(values.len(), 5);
    let got: Vec<&str> = values
        .iter()
        .map(|v| v["value"].as_str().unwrap())
        .collect();
    assert_eq!(got, ["TRUE", "FALSE", "FALSE", "FALSE", "TRUE"]);
    assert_eq!(values[0]["measure"], 1);
    assert_eq!(values[1]["measure"], 0);
}

#[test]
fn eval_supervaluation_pattern() {
    let o = qprop(&["eval", &scene("two_contexts.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[4].contains(r#""value":"INDEFINITE""#));
    assert!(lines[4].contains(r#""measure":"undefined""#));
    assert!(lines[5].contains(r#""value":"TRUE""#));
    assert!(lines[6].contains(r#""value":"FALSE""#));
}

#[test]
fn eval_gap_queries() {
    let o = qprop(&["eval", &scene("se_context.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let gaps: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| v["semantics"] == "gap")
        .collect();
    assert_eq!(gaps.len(), 4);
    for g in gaps {
        assert_eq!(g["value_set"], serde_json::json!(["TRUE", "FALSE"]));
    }
}

#[test]
fn eval_is_deterministic() {
    for format in ["json", "table"] {
        let a = qprop(&["eval", &scene("two_contexts.json"), "--format", format]);
        let b = qprop(&["eval", &scene("two_contexts.json"), "--format", format]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn eval_empty_query_list() {
    let o = qprop(&["eval", &scene("sigma_z.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn eval_rejects_unknown_semantics_and_names() {
    let unknown = write_temp(
        "semantics.json",
        r#"{"schema":1,"dimension":2,"queries":[{"semantics":"modal","expression":"a","state":"s"}]}"#,
    );
    assert_eq!(qprop(&["eval", &unknown]).status.code(), Some(2));

    let unresolved = write_temp(
        "names.json",
        r#"{"schema":1,"dimension":2,
            "states":[{"name":"s","amplitudes":[[1,0],[0,0]]}],
            "queries":[{"semantics":"hilbert","expression":"ghost","state":"s"}]}"#,
    );
    let o = qprop(&["eval", &unresolved]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("ghost"), "{}", stderr(&o));
}

#[test]
fn eval_bad_expression_is_input_error() {
    let path = write_temp(
        "expr.json",
        r#"{"schema":1,"dimension":2,
            "states":[{"name":"s","amplitudes":[[1,0],[0,0]]}],
            "projectors":[{"name":"p","axis":[0,0,1],"sign":"+"}],
            "queries":[{"semantics":"hilbert","expression":"p & (","state":"s"}]}"#,
    );
    assert_eq!(qprop(&["eval", &path]).status.code(), Some(2));
}

#[test]
fn lattice_listings() {
    let o = qprop(&[
        "lattice",
        &scene("sigma_z.json"),
        "--context",
        "Z",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4]["elements"], 4);
    assert_eq!(lines[4]["boolean"], true);

    let o = qprop(&["lattice", &scene("se_context.json"), "--context", "SE"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("16 elements"));
    assert!(out.contains("Boolean: pass"));
    assert!(out.contains("4096/4096 triples distributive"));

    let o = qprop(&["lattice", &scene("sigma_z.json"), "--context", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn demo_defaults_and_guards() {
    let o = qprop(&["demo", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["passed"], true);
    for s in report["states"].as_array().unwrap() {
        assert_eq!(s["probabilities"]["pr_e1"], 0.5);
        assert_eq!(s["probabilities"]["method"], "indifference");
    }

    let o = qprop(&["demo", "--n-env", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dimension 16"));

    let o = qprop(&["demo", "--u-prime", "z", "--u-double-prime", "z"]);
    assert_eq!(o.status.code(), Some(1));

    let o = qprop(&["demo", "--u-prime", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eps_flag_beats_environment() {
    let run = |env: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_qprop"))
            .args(args)
            .env("QPROP_EPS", env)
            .output()
            .unwrap()
    };
    assert_eq!(run("junk", &["demo"]).status.code(), Some(2));
    assert_eq!(run("0.5", &["demo"]).status.code(), Some(2));
    assert_eq!(
        run("junk", &["demo", "--eps", "1e-10"]).status.code(),
        Some(0)
    );
    assert_eq!(run("1e-10", &["demo"]).status.code(), Some(0));
}

#[test]
fn garbage_input_never_panics() {
    for text in [
        "",
        "null",
        "[]",
        "{",
        "{\"schema\":1}",
        "\u{0}\u{1}binary",
        "{\"schema\":1,\"dimension\":0}",
    ] {
        let path = write_temp("garbage.json", text);
        for cmd in ["check", "eval"] {
            let o = qprop(&[cmd, &path]);
            let code = o.status.code();
            assert!(
                matches!(code, Some(1) | Some(2)),
                "{cmd} on {text:?}: {code:?}"
            );
            assert!(!stderr(&o).contains("panicked"), "{}", stderr(&o));
        }
    }
}
