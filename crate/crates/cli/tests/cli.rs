//! End-to-end tests for the `motzkin` binary: byte-exact JSON output,
//! determinism across repeated runs, stream routing, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_motzkin"))
}

fn fixture(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("motzkin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn c5() -> PathBuf {
    fixture("c5.edges", "1 2\n2 3\n3 4\n4 5\n1 5\n")
}

fn k3() -> PathBuf {
    fixture("k3.edges", "1 2\n1 3\n2 3\n")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const CRITICAL_C5_GOLDEN: &str = r#"{
  "command": "critical",
  "input": {
    "format": "edges",
    "m": 5,
    "n": 5
  },
  "result": {
    "alpha": 2,
    "contracted_n": 5,
    "contraction_trace": [],
    "critical_edges": [
      [
        1,
        2
      ],
      [
        1,
        5
      ],
      [
        2,
        3
      ],
      [
        3,
        4
      ],
      [
        4,
        5
      ]
    ],
    "graph": {
      "edges": [
        [
          1,
          2
        ],
        [
          1,
          5
        ],
        [
          2,
          3
        ],
        [
          3,
          4
        ],
        [
          4,
          5
        ]
      ],
      "n": 5
    },
    "twin_pairs": []
  },
  "schema_version": "1"
}
"#;

#[test]
fn critical_c5_matches_frozen_golden() {
    let input = c5();
    let out = run(&["--input", input.to_str().unwrap(), "critical"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), CRITICAL_C5_GOLDEN);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let input = k3();
    let args = ["--input", input.to_str().unwrap(), "level", "--r", "2"];
    let first = run(&args);
    assert!(first.status.success());
    for _ in 0..2 {
        let again = run(&args);
        assert_eq!(first.stdout, again.stdout);
    }
}

#[test]
fn json_goes_to_output_file_and_summary_to_stdout() {
    let input = c5();
    let dest = fixture("routed.json", "");
    let out = run(&[
        "--input",
        input.to_str().unwrap(),
        "--output",
        dest.to_str().unwrap(),
        "critical",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("alpha = 2"), "summary missing: {stdout}");
    assert_eq!(std::fs::read_to_string(&dest).unwrap(), CRITICAL_C5_GOLDEN);

    // Without --output the JSON owns stdout and the summary moves to stderr.
    let direct = run(&["--input", input.to_str().unwrap(), "critical"]);
    assert_eq!(String::from_utf8(direct.stdout).unwrap(), CRITICAL_C5_GOLDEN);
    assert!(String::from_utf8(direct.stderr).unwrap().starts_with("alpha = 2"));
}

#[test]
fn report_has_expected_sections() {
    let input = c5();
    let out = run(&["--input", input.to_str().unwrap(), "report", "--rmax", "3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["command"], "report");
    assert_eq!(doc["input"]["n"], 5);
    let result = &doc["result"];
    for key in ["combinatorics", "verdict", "hierarchy", "consistency"] {
        assert!(!result[key].is_null(), "missing section {key}");
    }
    assert_eq!(result["verdict"]["status"], "NoFiniteConvergence");
    assert_eq!(result["consistency"]["consistent"], true);
    assert!(result["hierarchy"]["attained_level"].is_null());
    let levels = result["hierarchy"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2); // r = 2, 3
    assert_eq!(levels[1]["status"], "Optimal");
}

#[test]
fn decide_verdict_shape() {
    let input = c5();
    let out = run(&["--input", input.to_str().unwrap(), "decide", "--form", "ms"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["status"], "NoFiniteConvergence");
    assert_eq!(doc["result"]["theorem"], "twin-contracted-criticality");
    assert_eq!(doc["result"]["witness"]["kind"], "CriticalEdgeOfContraction");
}

#[test]
fn certify_round_trip_exits_zero() {
    let input = k3();
    let level_out = fixture("k3_level.json", "");
    let out = run(&[
        "--input",
        input.to_str().unwrap(),
        "--output",
        level_out.to_str().unwrap(),
        "level",
        "--r",
        "2",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&level_out).unwrap()).unwrap();
    let cert = &doc["result"]["certificate"];
    assert!(!cert.is_null());
    let cert_path = fixture("k3_cert.json", &serde_json::to_string(cert).unwrap());

    let verify = run(&[
        "--input",
        input.to_str().unwrap(),
        "certify",
        "--cert",
        cert_path.to_str().unwrap(),
    ]);
    assert!(verify.status.success());
    let vdoc: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
    assert_eq!(vdoc["result"]["verification"]["pass"], true);

    // The same certificate against the wrong graph is a precondition error.
    let wrong = run(&[
        "--input",
        c5().to_str().unwrap(),
        "certify",
        "--cert",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn precondition_failures_exit_two() {
    let input = c5();
    let path = input.to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["--input", "/nonexistent/graph.edges", "alpha"],
        &["--input", path, "decide", "--form", "ms-e"], // missing --edge
        &["--input", path, "decide", "--form", "ms-e", "--edge", "1,4"], // not an edge
        &["--input", path, "level", "--r", "1"],
        &["--input", path, "level", "--r", "99"], // over the basis cap
        &["--input", path, "kkt", "--point", "/nonexistent/point.txt"],
    ];
    for args in cases {
        let out = bin().args(*args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?} gave no diagnostic");
    }
    // Unknown subcommands and bad flags are usage errors, also 2.
    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn infeasible_level_reports_null_value() {
    let input = c5();
    let out = run(&["--input", input.to_str().unwrap(), "level", "--r", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["status"], "InfeasibleSuspect");
    assert!(doc["result"]["value"].is_null());
    assert!(doc["result"]["certificate"].is_null());
}
