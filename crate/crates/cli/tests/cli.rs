use std::fs;
use std::process::{Command, Output};

fn fourmove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourmove"))
        .args(args)
        .env_remove("FOURMOVE_MAX_COSETS")
        .env_remove("FOURMOVE_KB_SECONDS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bad_gauss_code_exits_2() {
    let o = fourmove(&["classify", "1,2,x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = fourmove(&["classify", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_or_malformed_presentation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.txt");
    assert_eq!(
        fourmove(&["tc", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "gens: 2; involutive: 00\ng1 g3\n").unwrap();
    assert_eq!(
        fourmove(&["kb", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let stages = dir.path().join("stages.json");
    fs::write(
        &stages,
        r#"{"stages": [{"method": "tc", "depth": 0, "bogus": 1}]}"#,
    )
    .unwrap();
    let o = fourmove(&["classify", "1,1", "--stages", stages.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tc_and_kb_report_dihedral_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.txt");
    fs::write(
        &path,
        "gens: 2; involutive: 11\ng1 g1\ng2 g2\ng1 g2 g1 g2 g1 g2 g1 g2\n",
    )
    .unwrap();
    let o = fourmove(&["tc", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "INDEX = 8");
    let o = fourmove(&["kb", path.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("CONFLUENT rules="), "{}", out);
    assert!(out.trim_end().ends_with("order=8"), "{}", out);
}

#[test]
fn tc_overflow_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.txt");
    fs::write(&path, "gens: 1; involutive: 0\n").unwrap();
    let o = fourmove(&["tc", path.to_str().unwrap(), "--max-cosets", "100"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "OVERFLOW");
}

#[test]
fn classify_writes_json_lines_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("codes.txt");
    fs::write(&input, "1,2,3,1,2,3\n\n1,2,x\n1,1\n").unwrap();
    let out = dir.path().join("out.jsonl");
    let fail = dir.path().join("fail.txt");
    let o = fourmove(&[
        "classify",
        input.to_str().unwrap(),
        "--workers",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--fail-out",
        fail.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["line"], 1);
    assert_eq!(lines[0]["order"], 2);
    assert_eq!(lines[0]["proving_stage"], 1);
    assert_eq!(lines[1]["line"], 3);
    assert_eq!(lines[1]["status"], "input_error");
    assert_eq!(lines[2]["line"], 4);
    assert!(fs::read_to_string(&fail).unwrap().is_empty());
    assert!(!stdout(&o).is_empty());
}

#[test]
fn probe_small_n() {
    let o = fourmove(&["probe-gn", "--n", "2", "--kmax", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("G_2 finite: order 8 first reached at k=0"),
        "{}",
        out
    );
}

#[test]
fn verify_paper_stores_traces() {
    let dir = tempfile::tempdir().unwrap();
    let o = fourmove(&["verify-paper", "--trace-dir", dir.path().to_str().unwrap()]);
    let out = stdout(&o);
    // the G_{3,5} row compares against the published 5192 and fails
    assert_eq!(o.status.code(), Some(1), "{}", out);
    assert_eq!(
        out.lines().filter(|l| l.contains("verified (")).count(),
        2,
        "{}",
        out
    );
    for name in ["identity-1.json", "identity-2.json"] {
        let v: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(v["status"], "verified");
        assert!(!v["trace"].as_array().unwrap().is_empty(), "{}", v);
    }
}
