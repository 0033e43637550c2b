use std::io::Write;
use std::process::{Command, Output};

fn satposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satposet"))
        .args(args)
        .env_remove("SATPOSET_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn family_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn construct_emits_one_set_per_line() {
    let o = satposet(&["construct", "--family", "butterfly", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);
    let o = satposet(&["construct", "--family", "n", "--n", "5"]);
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn construct_then_check_round_trips() {
    let built = satposet(&["construct", "--family", "butterfly", "--n", "5"]);
    let file = family_file(&stdout(&built));
    let path = file.path().to_str().unwrap();
    let o = satposet(&["check", "--poset", "butterfly", "--in", path]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["saturated"], true);
    assert_eq!(report["free"], true);
    assert_eq!(report["unsaturated"], serde_json::json!([]));
}

#[test]
fn unsaturated_check_exits_one_with_report() {
    let file = family_file("{}\n{1}\n");
    let path = file.path().to_str().unwrap();
    let o = satposet(&["check", "--poset", "butterfly", "--in", path, "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["saturated"], false);
    assert_eq!(report["unsaturated"].as_array().unwrap().len(), 6);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(satposet(&["construct", "--family", "kkk", "--n", "4", "--k", "3"]).status.code(), Some(2));
    assert_eq!(satposet(&["construct", "--family", "nope", "--n", "4"]).status.code(), Some(2));
    assert_eq!(satposet(&["check", "--poset", "no-such-poset", "--in", "x"]).status.code(), Some(2));
    let bad = family_file("{1,2\n");
    let o = satposet(&["hasse", "--in", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn embed_prints_witness() {
    let file = family_file("{1}\n{2}\n{1,2,3}\n{1,2,4}\n");
    let path = file.path().to_str().unwrap();
    let o = satposet(&["embed", "--poset", "butterfly", "--in", path]);
    assert_eq!(o.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(w.as_array().unwrap().len(), 4);
    let o = satposet(&["embed", "--poset", "chain:3", "--in", path]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn greedy_and_verify_agree() {
    let o = satposet(&["greedy", "--poset", "butterfly", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let file = family_file(&stdout(&o));
    let path = file.path().to_str().unwrap();
    for theorem in ["lemma1", "t2", "t3"] {
        let v = satposet(&["verify", theorem, "--in", path]);
        assert_eq!(v.status.code(), Some(0), "{theorem}");
        let r: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
        assert_eq!(r["passed"], true);
    }
    let tsv = satposet(&["--format", "tsv", "verify", "t2", "--in", path]);
    assert!(stdout(&tsv).starts_with("item\tA\tB\tC\timage\n"));
}

#[test]
fn solve_reports_exact_small_value() {
    let o = satposet(&["solve", "--poset", "butterfly", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["value"], 8);
    assert_eq!(r["exact"], true);
}

#[test]
fn hasse_emits_dot() {
    let file = family_file("{}\n{1}\n{2}\n{1,2}\n");
    let o = satposet(&["hasse", "--in", file.path().to_str().unwrap()]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph hasse {"));
    assert_eq!(dot.matches("->").count(), 4);
}

#[test]
fn poset_json_file_is_accepted() {
    let poset = family_file(r#"{"size": 3, "less": [[0, 1], [1, 2]]}"#);
    let fam = family_file("{}\n{1}\n{1,2}\n");
    let o = satposet(&[
        "embed",
        "--poset",
        poset.path().to_str().unwrap(),
        "--in",
        fam.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(stdout(&o).trim(), "none");
}
