use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const P4: &str = "4 3\n0 1\n1 2\n2 3\n";
const FAN4: &str = "4 5\n0 1\n1 2\n2 3\n0 3\n0 2\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

fn ldpart(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ldpart"))
        .args(args)
        .env_remove("LD_ORACLE_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn one(out: &Output) -> Value {
    let mut v = json_lines(out);
    assert_eq!(v.len(), 1, "{}", String::from_utf8_lossy(&out.stderr));
    v.pop().unwrap()
}

#[test]
fn classify_p4_fan4_c5() {
    let r = one(&ldpart(&["classify"], P4));
    let c = &r["classes"];
    assert_eq!(r["schema"], 1);
    assert_eq!((c["dh"].as_bool(), c["split"].as_bool(), c["cobipartite"].as_bool()), (Some(true), Some(true), Some(true)));
    assert_eq!(c["mop"], false);
    assert_eq!(c["twin_free"], true);
    assert_eq!(one(&ldpart(&["classify"], FAN4))["classes"]["mop"], true);
    let c = one(&ldpart(&["classify"], C5))["classes"].clone();
    for k in ["dh", "mop", "split", "cobipartite"] {
        assert_eq!(c[k], false, "{k}");
    }
}

#[test]
fn partition_examples() {
    let out = ldpart(&["partition", "--class", "split"], P4);
    assert!(out.status.success());
    let r = one(&out);
    assert_eq!(r["partition"]["d1"].as_array().unwrap().len(), 2);
    assert_eq!(r["partition"]["d2"].as_array().unwrap().len(), 2);
    assert_eq!(r["verdict"]["verdict"], "pass");
    assert_eq!(r["oracle"]["holds"], true);

    let out = ldpart(&["partition", "--class", "mop", "--format", "polygon"], "5 2\n0 2\n0 3\n");
    let r = one(&out);
    assert_eq!(r["partition"]["d1"], serde_json::json!([0, 1, 4]));
    assert_eq!(r["partition"]["d2"], serde_json::json!([2, 3]));

    let out = ldpart(&["partition", "--class", "dh"], C5);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(one(&out)["status"], "precondition");
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dh"));
}

#[test]
fn auto_picks_mop_before_others() {
    let r = one(&ldpart(&["partition"], FAN4));
    assert_eq!(r["algorithm"], "mop");
    let r = one(&ldpart(&["partition"], P4));
    assert_eq!(r["algorithm"], "split");
}

#[test]
fn twins_are_reported_with_witness() {
    let out = ldpart(&["partition", "--class", "split"], "3 2\n0 1\n1 2\n");
    assert_eq!(one(&out)["status"], "precondition");
    assert!(String::from_utf8_lossy(&out.stderr).contains("twins 0 and 2"));
}

#[test]
fn oracle_queries() {
    let r = one(&ldpart(&["oracle", "gamma"], P4));
    assert_eq!(r["gamma_ld"], 2);
    let r = one(&ldpart(&["oracle", "partition"], "3 2\n0 1\n1 2\n"));
    assert_eq!(r["partition"], Value::Null);
    assert_eq!(r["exhausted"], true);
    let r = one(&ldpart(&["oracle", "partition"], FAN4));
    assert!(r["partition"].is_object());
    let out = ldpart(&["oracle", "gamma", "--cap-gamma", "3"], P4);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_accepts_and_rejects() {
    let out = ldpart(&["verify", "--d1", "0,2", "--d2", "1,3"], P4);
    assert!(out.status.success());
    let out = ldpart(&["verify", "--d1", "0,1,2", "--d2", "2,3"], P4);
    assert_eq!(out.status.code(), Some(1));
    let r = one(&out);
    assert_eq!(r["verdict"]["failure_kind"], "overlap");
}

#[test]
fn verify_reads_a_partition_report() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("p4.txt");
    fs::write(&graph, P4).unwrap();
    let report = dir.path().join("report.json");
    let out = ldpart(&["partition", "--out", report.to_str().unwrap(), graph.to_str().unwrap()], "");
    assert!(out.status.success());
    let out = ldpart(&["verify", "--partition", report.to_str().unwrap(), graph.to_str().unwrap()], "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gen_is_deterministic() {
    let a = ldpart(&["gen", "--class", "dh", "--n", "12", "--seed", "7", "--count", "3"], "");
    let b = ldpart(&["gen", "--class", "dh", "--n", "12", "--seed", "7", "--count", "3"], "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 3);
    let out = ldpart(&["gen", "--class", "split", "--n", "6", "--count", "2", "--format", "edgelist"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_over_all_octagon_triangulations() {
    let mops = ldpart(&["gen", "--class", "mop", "--n", "8", "--all"], "");
    let text = String::from_utf8(mops.stdout).unwrap();
    assert_eq!(text.lines().count(), 132);
    let out = ldpart(&["batch", "--jobs", "2"], &text);
    assert!(out.status.success());
    let s: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((s["instances"].as_u64(), s["passed"].as_u64()), (Some(132), Some(132)));
    assert!(s["max_min_side_ratio"].as_f64().unwrap() <= 0.5);
}

#[test]
fn batch_counts_precondition_rejections_separately() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.txt"), P4).unwrap();
    fs::write(dir.path().join("b.txt"), C5).unwrap();
    let jsonl = dir.path().join("reports.jsonl");
    let cex = dir.path().join("cex");
    let out = ldpart(
        &[
            "batch",
            "--class",
            "split",
            "--out",
            jsonl.to_str().unwrap(),
            "--counterexamples",
            cex.to_str().unwrap(),
            dir.path().to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    let s: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s["passed"], 1);
    assert_eq!(s["precondition_rejected"], 1);
    assert_eq!(s["failed"], 0);
    assert_eq!(fs::read_to_string(&jsonl).unwrap().lines().count(), 2);
    assert!(!Path::new(&cex).exists());
}

#[test]
fn reports_are_deterministic() {
    let a = ldpart(&["partition"], P4);
    let b = ldpart(&["partition"], P4);
    assert_eq!(a.stdout, b.stdout);
    let with = one(&ldpart(&["partition", "--timings"], P4));
    assert!(with["timings_ms"]["construct"].is_number());
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = ldpart(&["partition", "--dot", dot.to_str().unwrap()], P4);
    assert!(out.status.success());
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph ldpartition {"));
    assert!(text.contains("0 -- 1;"));
    assert_eq!(text.matches("side=").count(), 4);
}

#[test]
fn oracle_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ldpart"))
        .args(["oracle", "gamma"])
        .env("LD_ORACLE_CAP", "3")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(P4.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 3"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let out = ldpart(&["classify", "--format", "edgelist"], "4 2\n0 1\n1 x\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
}
