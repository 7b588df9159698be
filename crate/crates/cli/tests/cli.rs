//! End-to-end runs of the `goldman-forge` binary: outputs, exit codes and
//! JSON documents.

use goldman_forge::goldman::LoopSum;
use goldman_forge::json::Persist;
use goldman_forge::surface::SurfaceSpec;
use goldman_forge::verify::SuiteReport;
use std::process::{Command, Output};

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_goldman-forge"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn bracket_of_the_handle_curves() {
    let o = run(&["bracket", "--g", "1", "--b", "1", "a1", "b1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("{u, v} = |a1 b1|"), "{}", stdout(&o));
}

#[test]
fn bracket_json_round_trips() {
    let o = run(&["--json", "bracket", "--g", "1", "--b", "1", "a1", "b1'"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let result = LoopSum::from_json(&doc["result"].to_string()).unwrap();
    let sp = SurfaceSpec::new(1, 1).unwrap();
    assert_eq!(result, LoopSum::parse(sp, "-1*a1 b1'").unwrap().with_twist(1));
}

#[test]
fn a_loop_commutes_with_itself() {
    let o = run(&["--json", "bracket", "--g", "2", "--b", "1", "a1 b2 a1'", "a1 b2 a1'"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(LoopSum::from_json(&doc["result"].to_string()).unwrap().is_zero());
}

#[test]
fn bad_input_exits_with_usage_code() {
    let o = run(&["bracket", "--g", "1", "--b", "1", "q7", "b1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("q7"));
    assert_eq!(code(&run(&["verify", "nope"])), 2);
    assert_eq!(code(&run(&["bracket", "--g", "1", "--b", "0", "a1", "b1"])), 2);
}

#[test]
fn passing_sweeps_exit_zero() {
    for args in [
        &["verify", "jacobi", "--g", "1", "--b", "2", "--seed", "7", "--cases", "40"][..],
        &["verify", "bar", "--cases", "30"],
        &["kvi-check", "--g", "1", "--b", "1", "--N", "6"],
        &["resolution", "--g", "2", "--max-n", "5"],
        &["twist-check", "--surface", "1,1", "--N", "5"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn failing_property_exits_one_with_counterexample() {
    let o = run(&["--json", "verify", "adams", "--cases", "30"]);
    assert_eq!(code(&o), 1);
    let report = SuiteReport::from_json(&stdout(&o)).unwrap();
    assert!(!report.passed());
    let check = report.check("filtration-product-bound").unwrap();
    assert!(check.counterexample.is_some());
    assert!(report.check("filtration-preserved").unwrap().passed);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "verify", "perturbation", "--g", "1", "--b", "2", "--seed", "3", "--cases", "25"];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, run(&args).stdout);
    let single = run_with(&args, &[("GOLDMAN_FORGE_THREADS", "1")]);
    assert_eq!(first.stdout, single.stdout);
    let report = SuiteReport::from_json(&stdout(&first)).unwrap();
    assert_eq!((report.genus, report.boundaries, report.seed), (1, 2, 3));
}

#[test]
fn trace_lists_crossings() {
    let o = run(&["--trace", "bracket", "--g", "1", "--b", "1", "a1", "b1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() > 3, "{}", stdout(&o));
}
