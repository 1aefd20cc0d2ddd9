//! End-to-end tests of the `chordalm` binary: exit codes and JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.mtx"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordalm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l}: {e}")))
        .collect()
}

#[test]
fn gfq_chordal_exit_codes() {
    assert_eq!(code(&run(&["check", "gfq-chordal", "--method", "peo", &fixture("fano")])), 0);
    assert_eq!(code(&run(&["check", "gfq-chordal", &fixture("c4")])), 1);
    for method in ["minor", "restriction", "peo", "decompose"] {
        assert_eq!(code(&run(&["check", "gfq-chordal", "--method", method, &fixture("k4")])), 1, "{method}");
        assert_eq!(code(&run(&["check", "gfq-chordal", "--method", method, &fixture("fano_fano_line")])), 0);
    }
    assert_eq!(code(&run(&["check", "gfq-chordal", "--method", "peo", &fixture("c3_gf3")])), 1);
    assert_eq!(code(&run(&["check", "gfq-chordal", "--method", "peo", &fixture("pg23")])), 0);
}

#[test]
fn json_schema() {
    let out = run(&["--json", "check", "gfq-chordal", &fixture("c4")]);
    assert_eq!(code(&out), 1);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let l = &lines[0];
    for key in ["check", "input", "result", "elapsed_ms"] {
        assert!(l.get(key).is_some(), "missing {key} in {l}");
    }
    assert_eq!(l["result"], Value::Bool(false));
    assert!(l.get("witness").is_some());
}

#[test]
fn catalog_verify_thm_1_1() {
    let out = run(&["--json", "catalog", "verify", "--check", "thm-1.1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let l = &lines[0];
    assert_eq!(l["check"], "thm-1.1");
    assert!(l["input"].is_string());
    assert!(l["elapsed_ms"].is_u64());
    assert_eq!(l["result"]["ok"], true);
    assert_eq!(l["result"]["fail"], 0);
    assert_eq!(l["result"]["total"], 45);
    assert_eq!(l["result"]["provenance"].as_str().unwrap().len(), 64);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["check", "gfq-chordal", "--method", "nope", &fixture("fano")])), 2);
    assert_eq!(code(&run(&["check", "gfq-chordal", "/nonexistent/file.mtx"])), 2);
    assert_eq!(code(&run(&["catalog", "verify", "--check", "lemma-9.9"])), 2);
    assert_eq!(code(&run(&["catalog", "enumerate", "--rank", "7", "--q", "5"])), 2);
}

#[test]
fn malformed_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtx");
    std::fs::write(&bad, "matroid q=2 r=2 n=1\na 12\n").unwrap();
    let out = run(&["check", "chordal", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains('2'));
}

#[test]
fn peo_find_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let m = fixture("fano_fano_line");
    let out = run(&["--json", "peo", "find", &m]);
    assert_eq!(code(&out), 0);
    let line = &json_lines(&out)[0];
    assert_eq!(line["result"]["sizes"], serde_json::json!([4, 4, 2, 1]));
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, serde_json::to_string(&line["witness"]).unwrap()).unwrap();
    assert_eq!(code(&run(&["peo", "verify", &m, cert.to_str().unwrap()])), 0);
    // the whole JSON line is accepted too
    std::fs::write(&cert, String::from_utf8_lossy(&out.stdout).as_ref()).unwrap();
    assert_eq!(code(&run(&["peo", "verify", &m, cert.to_str().unwrap()])), 0);
    // a wrong ordering is rejected; a certificate of the wrong length is malformed
    std::fs::write(&cert, r#"[["001","010","011"],["100","101"],["110","111"]]"#).unwrap();
    assert_eq!(code(&run(&["peo", "verify", &fixture("fano"), cert.to_str().unwrap()])), 1);
    std::fs::write(&cert, r#"[["110"],["011","101"]]"#).unwrap();
    assert_eq!(code(&run(&["peo", "verify", &fixture("fano"), cert.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["peo", "find", &fixture("c4")])), 1);
}

#[test]
fn gen_and_gpc_reproduce_fixtures() {
    let fano = fixture("fano");
    let out = run(&["gpc", "--glue", "001,010,011", "--mode", "projective", &fano, &fano]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), std::fs::read_to_string(fixture("fano_fano_line")).unwrap());
    let out = run(&["gen", "pg", "--rank", "3", "--q", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout), std::fs::read_to_string(&fano).unwrap());
    assert_eq!(code(&run(&["gen", "uniform", "--rank", "2", "--n", "4", "--q", "2"])), 1);
    assert_eq!(code(&run(&["gen", "uniform", "--rank", "2", "--n", "5", "--q", "3"])), 1);
}

#[test]
fn detect_and_decompose() {
    for name in ["f7_dual", "ag32", "s8", "w4"] {
        let out = run(&["--json", "detect", "induced-restriction", "--family", "c4", &fixture(name)]);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(json_lines(&out)[0]["witness"][0]["classification"]["tag"], "circuit");
    }
    assert_eq!(code(&run(&["detect", "induced-restriction", "--family", "c4", &fixture("fano")])), 1);
    assert_eq!(code(&run(&["detect", "induced-minor", "--family", "c4,k4", &fixture("dual_k33")])), 0);
    assert_eq!(code(&run(&["decompose", "--mode", "gfq-projective", &fixture("fano_fano_line")])), 0);
    assert_eq!(code(&run(&["decompose", "--mode", "gfq-projective", &fixture("k4")])), 1);
}

#[test]
fn thread_count_does_not_change_results() {
    let enumerate = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_chordalm"))
            .args(["catalog", "enumerate", "--rank", "4", "--q", "2", "--spanning", "--json"])
            .env("CHORDALM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        json_lines(&out).into_iter().map(|l| l["result"].clone()).collect::<Vec<_>>()
    };
    let one = enumerate("1");
    assert_eq!(one.len(), 36);
    assert_eq!(one, enumerate("4"));
}
