use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_logistic-ring");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn cli")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

#[test]
fn orbit_text_and_json() {
    let o = run(&["orbit", "--n", "3", "--mu", "19", "--x0", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("pre_period=2\nperiod=3\ncycle_entry=24"));

    let o = run(&["orbit", "--n", "3", "--mu", "19", "--x0", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["period"], 3);
    assert_eq!(v["pre_period"], 2);
}

#[test]
fn period_check_agrees_and_disagrees() {
    let o = run(&["period", "--n", "7", "--mu", "20", "--x0", "50", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L=486\noracle=486\nAGREE"));

    // mu = 2 mod 3 with x0 = 1 mod 3 never reaches the multiples of 3.
    let o = run(&["period", "--n", "4", "--mu", "2", "--x0", "1", "--check"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DISAGREE"));
}

#[test]
fn maxperiod_formula_and_oracle() {
    let o = run(&["maxperiod", "--n", "5", "--mu", "19", "--oracle", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["formula"]["max_period"], v["oracle"]["max_period"]);
}

#[test]
fn graph_formats() {
    let o = run(&["graph", "--n", "2", "--mu", "19", "--format", "dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("digraph smn {"));
    assert!(stderr(&o).contains("warning: mu=19 reduced"));

    let fixture = include_str!("fixtures/smn_p3_mu19_n3.json");
    let o = run(&["graph", "--n", "3", "--mu", "19", "--format", "json"]);
    assert_eq!(stdout(&o).trim_end(), fixture.trim_end());
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("lr-cli-{}.dot", std::process::id()));
    let o = run(&["graph", "--n", "2", "--mu", "1", "--format", "dot", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.contains("0 -> 0;"));
}

#[test]
fn counterexample_listing() {
    let o = run(&["counterexample", "--mu-max", "27", "--n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("mu=2 n=4 legacy=1 actual=18"));
    assert!(stdout(&o).ends_with("counterexamples=15\n"));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--suite", "corollary1", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall PASS"));

    let o = run(&["verify", "--suite", "theorem1", "--n-max", "3", "--mu-max", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[mu%3=2 x0%3=1:"));
}

#[test]
fn usage_and_cap_exit_codes() {
    assert_eq!(run(&["orbit", "--p", "4", "--n", "2", "--mu", "1", "--x0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "--n", "2", "--mu", "-1", "--x0", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--n", "14", "--mu", "19"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
