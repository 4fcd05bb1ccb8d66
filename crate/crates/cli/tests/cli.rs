use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn minent(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_minent"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    // the process may exit before reading, e.g. on a usage error
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = minent(&all, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const WORKED: &str = "setcover 4 3\n0 1 2\n2 3\n3\n";

#[test]
fn worked_set_cover() {
    let r = json(&["setcover", "greedy"], WORKED);
    let h = r["entropy_bits"]["greedy"].as_f64().unwrap();
    assert!((h - 0.8113).abs() < 1e-3);
    assert_eq!(
        r["payload"]["cover"]["assignment"],
        serde_json::json!([0, 0, 0, 1])
    );
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn input_file_and_stdin_agree() {
    let path = std::env::temp_dir().join(format!("minent-cli-{}.sc", std::process::id()));
    std::fs::write(&path, WORKED).unwrap();
    let a = json(
        &["setcover", "certify", "--input", path.to_str().unwrap()],
        "",
    );
    let b = json(&["setcover", "certify"], WORKED);
    std::fs::remove_file(&path).ok();
    assert_eq!(a["entropy_bits"], b["entropy_bits"]);
    assert_eq!(a["input_sha256"], b["input_sha256"]);
    assert_eq!(a["payload"]["violations"], serde_json::json!([]));
}

#[test]
fn estimate_uses_formula_sample_count() {
    let g = stdout(&minent(
        &[
            "gen", "random", "--kind", "regular", "--n", "12", "--size", "4", "--seed", "3",
        ],
        "",
    ));
    let r = json(
        &[
            "orient",
            "estimate",
            "--epsilon",
            "0.5",
            "--delta",
            "0.05",
            "--seed",
            "7",
        ],
        &g,
    );
    assert_eq!(r["payload"]["samples"], 473);
    assert!(r["payload"]["H"].is_f64());
    assert_eq!(r["seed"], 7);
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let g = stdout(&minent(
        &[
            "gen", "random", "--kind", "graph", "--n", "9", "--size", "14",
        ],
        "",
    ));
    let args = ["orient", "estimate", "--seed", "11", "--samples", "50"];
    let mut a = json(&args, &g);
    let mut b = json(&args, &g);
    a["elapsed_ms"] = Value::Null;
    b["elapsed_ms"] = Value::Null;
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );

    let r = json(&["graphent", "compute"], &g);
    let h = r["entropy_bits"]["graph_entropy"].as_f64().unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        again["entropy_bits"]["graph_entropy"]
            .as_f64()
            .unwrap()
            .to_bits(),
        h.to_bits()
    );
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = minent(&["setcover", "greedy", "--frobnicate"], WORKED);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_input_exits_2_with_position() {
    let out = minent(&["color", "greedy"], "graph 3 2\n0 1\n0 1\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn failed_guarantee_exits_1_only_when_asserted() {
    let c5 = "graph 5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    let out = minent(&["graphent", "split"], c5);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("FAILED"));
    let out = minent(&["graphent", "split", "--assert-bound"], c5);
    assert_eq!(out.status.code(), Some(1));
    let c6 = "graph 6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
    assert_eq!(
        minent(&["graphent", "split", "--assert-bound"], c6)
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn staircase_pipeline() {
    let iv = stdout(&minent(&["gen", "jk", "--k", "4"], ""));
    assert!(iv.starts_with("intervals 10"));
    let r = json(&["color", "interval", "--assert-bound"], &iv);
    let exact = r["entropy_bits"]["exact"].as_f64().unwrap();
    let want = -[4.0f64, 3.0, 2.0, 1.0]
        .iter()
        .map(|c| c / 10.0 * (c / 10.0).log2())
        .sum::<f64>();
    assert!((exact - want).abs() < 1e-12);
    let random = stdout(&minent(
        &[
            "gen", "random", "--kind", "interval", "--n", "12", "--size", "20",
        ],
        "",
    ));
    json(&["color", "interval", "--assert-bound"], &random);
}

#[test]
fn coloring_commands() {
    let g = stdout(&minent(
        &[
            "gen",
            "random",
            "--kind",
            "bipartite",
            "--n",
            "5",
            "--size",
            "5",
        ],
        "",
    ));
    for cmd in ["greedy", "greedy-approx", "exact"] {
        let r = json(&["color", cmd, "--assert-bound"], &g);
        assert!(r["payload"]["colors"].as_array().unwrap().len() == 10);
    }
    let r = json(&["graphent", "greedy-bound", "--assert-bound"], &g);
    assert_eq!(r["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn applications() {
    let table = "x,0,1\na,0.2,0.2\nb,0.3,0\nc,0,0.3\n";
    let r = json(&["app", "confusability", "--color", "exact"], table);
    assert_eq!(
        r["payload"]["edges"],
        serde_json::json!([["a", "b"], ["a", "c"]])
    );
    assert_eq!(
        r["payload"]["codewords"]["b"],
        r["payload"]["codewords"]["c"]
    );
    let r = json(&["app", "haplotype", "--assert-bound"], "0?\n?1\n");
    assert_eq!(r["entropy_bits"]["greedy"], 0.0);
    assert_eq!(r["payload"]["phasing"], serde_json::json!(["01", "01"]));
}

#[test]
fn generators_are_seeded() {
    let args = [
        "gen", "random", "--kind", "setcover", "--n", "10", "--size", "4", "--seed", "5",
    ];
    assert_eq!(stdout(&minent(&args, "")), stdout(&minent(&args, "")));
    let out = minent(
        &[
            "gen", "random", "--kind", "regular", "--n", "5", "--size", "3",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(2));
}
