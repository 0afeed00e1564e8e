use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn ars(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ars"))
        .args(args)
        .output()
        .expect("run ars")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn quiver_summary() {
    let o = ars(&["quiver", "--quiver", &data("A4.qv")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("vertices 4"));
    assert!(s.contains("arrows   3"));
}

#[test]
fn ass_on_interval() {
    let o = ars(&["ass", "--quiver", &data("A4.qv"), "--rep", &data("V12.rep"), "--window", "full"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.contains("A     0  1  1  0"), "{s}");
    assert!(s.contains("C     1  1  0  0"), "{s}");
}

#[test]
fn ass_json_is_deterministic() {
    let args = ["--format", "json", "ass", "--quiver", &data("A4.qv"), "--rep", &data("V12.rep")];
    let a = ars(&args);
    let b = ars(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["summary"]["left"], serde_json::json!([0, 1, 1, 0]));
    assert_eq!(v["summary"]["middle"], serde_json::json!([1, 2, 1, 0]));
    assert_eq!(v["middle_summands"].as_array().unwrap().len(), 2);
}

#[test]
fn ass_output_feeds_certification() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("v12.seq");
    let seq = seq.to_string_lossy();
    let o = ars(&["ass", "--quiver", &data("A4.qv"), "--rep", &data("V12.rep"), "--out", &seq]);
    assert_eq!(o.status.code(), Some(0));
    for side in ["right", "left"] {
        let o = ars(&["fas-certify", "--quiver", &data("A4.qv"), "--seq", &seq, "--side", side]);
        assert_eq!(o.status.code(), Some(0), "{side}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
}

#[test]
fn split_sequence_fails_with_witness() {
    let o = ars(&["fas-certify", "--quiver", &data("A4.qv"), "--seq", &data("split.seq")]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("fail"));
    assert!(s.contains("witness"));
}

#[test]
fn ml_check_constant_tower() {
    let o = ars(&["ml-check", "--tower", &data("constant.twr")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("exact"));
}

#[test]
fn dtr_of_interval() {
    let o = ars(&["--format", "json", "dtr", "--quiver", &data("A4.qv"), "--rep", &data("V23.rep")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|d| d[1].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 0, 0]);
    let o = ars(&["--field", "q", "dtr", "--inverse", "--quiver", &data("A4.qv"), "--rep", &data("V12.rep")]);
    assert!(stdout(&o).contains("dim 3 = 1"));
}

#[test]
fn knit_formats() {
    let o = ars(&["--format", "dot", "knit", "--quiver", &data("loop.qv"), "--window", "full:3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("digraph ar {"));
    assert_eq!(s.matches("[label=").count(), 4);
    let o = ars(&["--format", "json", "knit", "--quiver", &data("A4.qv")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
    assert_eq!(v["complete"], serde_json::json!(true));
}

#[test]
fn towers() {
    let o = ars(&["tower", "--chain", "ainf:3", "--rep", &data("ainf_C.rep")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("stabilized at level 0"));
    let o = ars(&["tower", "--chain", "loop:4", "--rep", &data("V2.rep"), "--kind", "transpose"]);
    assert_eq!(o.status.code(), Some(2), "V2 does not live over maxlen 1");
}

#[test]
fn usage_and_parse_errors() {
    let o = ars(&["--field", "p:7", "quiver", "--quiver", &data("A4.qv")]);
    assert_eq!(o.status.code(), Some(2));
    let o = ars(&["ass", "--quiver", &data("A4.qv"), "--rep", &data("constant.twr")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    let o = ars(&["knit", "--quiver", &data("loop.qv")]);
    assert_eq!(o.status.code(), Some(2), "a loop needs an explicit length bound");
    let o = ars(&["--format", "dot", "ass", "--quiver", &data("A4.qv"), "--rep", &data("V12.rep")]);
    assert_eq!(o.status.code(), Some(2));
}
