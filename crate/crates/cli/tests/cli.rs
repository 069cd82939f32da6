use std::path::PathBuf;
use std::process::{Command, Output};

fn bench_dir(set: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/benchmarks").join(set)
}

fn gjp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: PathBuf) -> String {
    p.to_str().unwrap().to_string()
}

fn number(file: &str) -> String {
    path(bench_dir("number").join(file))
}

#[test]
fn solve_n1_prints_plan_and_row() {
    let o = gjp(&["solve", &number("domain.gjp"), &number("N1.gjp")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[..3], ["plan 2", "1\tpeek_a", "2\tsubtract"]);
    assert!(lines[3].starts_with("ID\tExp\tGen\tMax\tAvg\t|calls|"));
    let row: Vec<&str> = lines[4].split('\t').collect();
    assert_eq!((row[0], row[8]), ("N1", "2"));
}

#[test]
fn solve_json_and_seed_flag() {
    let o = gjp(&["solve", &number("domain.gjp"), &number("N0.gjp"), "--format", "json", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["plan_len"], 4);
    assert_eq!(v["plan"].as_array().unwrap().len(), 4);
    assert_eq!(v["status"], "solved");
}

#[test]
fn goal_already_true_exits_zero_with_empty_plan() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("trivial.gjp");
    std::fs::write(&p, "problem t\ndomain number\ninit peeking_a = false, peeking_b = false, n = 2\ngoal true (= n 2)\n").unwrap();
    let o = gjp(&["solve", &number("domain.gjp"), &path(p)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("plan 0\n"));
}

#[test]
fn too_shallow_search_is_unsolvable() {
    let o = gjp(&["solve", &number("domain.gjp"), &number("N3.gjp"), "--max-depth", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("UNSOLVABLE"));
}

#[test]
fn malformed_domain_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.gjp");
    std::fs::write(&p, "domain bad\nagents a\nvar n : int 0..\n").unwrap();
    let o = gjp(&["solve", &path(p), &number("N1.gjp")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.gjp:3:"), "{err}");
}

#[test]
fn missing_file_is_internal_error() {
    let o = gjp(&["solve", "/nonexistent/domain.gjp", &number("N1.gjp")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn eval_plan1() {
    for (phi, want) in [("(CB (a b) (< n 3))", "1"), ("(B a (= n 2))", "1"), ("(EB (a b) (= n 1))", "0")] {
        let o = gjp(&["eval", &number("domain.gjp"), &number("plan1.trace"), phi]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want, "{phi}");
    }
}

#[test]
fn eval_empty_trace_and_explain() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("empty.trace");
    std::fs::write(&t, "trace empty\ndomain number\ninit peeking_a = true, peeking_b = false, n = 2\n").unwrap();
    let o = gjp(&["eval", &number("domain.gjp"), &path(t.clone()), "(S a n)"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = gjp(&["eval", &number("domain.gjp"), &path(t), "(B b (= n 2))", "--explain"]);
    let out = stdout(&o);
    assert!(out.starts_with("1/2\n"));
    assert!(out.contains("perspective b\nt\tpeeking_a\tpeeking_b\tn\n0\ttrue\tfalse\t-"), "{out}");
}

#[test]
fn eval_rejects_bad_formula() {
    let o = gjp(&["eval", &number("domain.gjp"), &number("plan1.trace"), "(K a (B b (= n 2)))"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_number_table() {
    let o = gjp(&["bench", "number"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lens: Vec<&str> = out.lines().skip(1).map(|l| l.split('\t').nth(8).unwrap()).collect();
    assert_eq!(lens, ["4", "2", "4", "6", "8", "4", "4"]);
}

#[test]
fn bench_json_rows() {
    let o = gjp(&["bench", "bbl", "--format", "json", "--max-generated", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0]["id"], "BBL0");
    assert_eq!(rows[0]["plan_len"], 1);
}

#[test]
fn bench_unknown_set_is_usage_error() {
    let o = gjp(&["bench", "chess"]);
    assert_eq!(o.status.code(), Some(2));
}
