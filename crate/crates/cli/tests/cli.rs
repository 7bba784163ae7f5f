use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permgrowth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn passing_campaign_exits_zero() {
    let out = run(&["accumulation"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["campaign"], "accumulation");
    assert_eq!(report["status"], "pass");
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn failing_report_exits_one() {
    let out = run(&["xi-basis"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "fail");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-campaign"]).status.code(), Some(2));
    assert_eq!(run(&["census"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--seq", "1,1,(2"]).status.code(), Some(2));
    assert_eq!(run(&["accumulation", "--eps", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["recon-verify", "--max-len", "40"]).status.code(),
        Some(2)
    );
    let empty = scratch("empty_basis.txt", "\n");
    assert_eq!(
        run(&["census", "--basis", empty.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn census_csv_from_basis_file() {
    let basis = scratch("av231_4312_4321.txt", "2 3 1\n4 3 1 2\n4 3 2 1\n");
    let out = run(&[
        "census",
        "--basis",
        basis.to_str().unwrap(),
        "--max-len",
        "8",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let si: Vec<&str> = text
        .lines()
        .skip(2)
        .take(8)
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(si, ["1", "1", "2", "3", "5", "8", "13", "21"]);
}

#[test]
fn classify_sequence() {
    let out = run(&["classify", "--seq", "1,1,2,4,3,3,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let verdict = &json(&out)["artifacts"]["verdict"];
    assert_eq!(verdict["position"], "equal_xi");
    assert_eq!(verdict["growth"], "2.3052239287");
    assert_eq!(verdict["realizable"]["verdict"], "yes");
}

#[test]
fn out_file_matches_stdout() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("table1.json");
    let direct = run(&["table1"]);
    let to_file = run(&["table1", "--out", path.to_str().unwrap()]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let one = run(&["search-112344", "--jobs", "1"]);
    let four = run(&["search-112344", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}
