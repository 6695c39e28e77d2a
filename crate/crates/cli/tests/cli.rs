//! End-to-end runs of the `moufang` binary.

use std::path::Path;
use std::process::{Command, Output};

use moufang_core::rewrite::ProofTrace;
use serde_json::Value;

fn moufang(args: &[&str]) -> Output {
    moufang_env(args, &[])
}

fn moufang_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_moufang"));
    c.args(args).env_remove("MOUFANG_SUITE_SEED");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

const SMALL: &str = "2000,4,20";

#[test]
fn counit_law_proves_in_one_step_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counit.trace");
    let p = path.to_str().unwrap();
    let o = moufang(&["prove", "comul ; (counit*id(1))", "id(1)", "--theory", "base", "--out", p]);
    assert_eq!(code(&o), 0);
    let trace = ProofTrace::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(trace.len(), 1);
    let o = moufang(&["replay", p, "--check"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));

    let o = moufang(&["prove", "comoufang-5", "--check", "--out", p]);
    assert_eq!(code(&o), 0);
    let saved = std::fs::read_to_string(&path).unwrap();
    assert!(saved.lines().any(|l| l.starts_with("# PASS function_bialgebra(O16) soundness")));
    assert_eq!(code(&moufang(&["replay", p])), 0);
}

#[test]
fn goals_prove_by_name() {
    let o = moufang(&["prove", "comoufang-1"]);
    assert_eq!(code(&o), 0);
    let t = ProofTrace::parse(&stdout(&o)).unwrap();
    assert_eq!(t.theory, "base+comoufang_l+comoufang_r");
    assert_eq!(code(&moufang(&["prove", "no-such-goal"])), 1);
}

#[test]
fn underivable_equation_exits_two() {
    let o = moufang(&["prove", "mul", "swap ; mul", "--theory", "base", "--budget", SMALL]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not found within budget"));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        &["prove", "mul ;", "mul"][..],
        &["prove", "mul", "mul", "--budget", "0,1,1"],
        &["prove", "mul", "mul", "--theory", "base+nonsense"],
        &["eval", "mul", "--model", "nowhere.model"],
        &["eval", "mul", "--model", "loop_bialgebra(C2)", "--input", "0"],
        &["octonion", "--params", "1,2"],
        &["octonion", "--params", "0,1,1"],
        &["deform"],
        &["replay", "/nonexistent/trace"],
    ] {
        assert_eq!(code(&moufang(args)), 1, "{args:?}");
    }
}

#[test]
fn records_have_fixed_order_and_round_trip_through_the_trace_parser() {
    let dir = tempfile::tempdir().unwrap();
    let o = moufang(&["prove", "counit-right-law", "--format", "records"]);
    assert_eq!(code(&o), 0);
    let line = stdout(&o);
    let keys = ["record", "goal", "theory", "found", "steps", "states", "depth", "trace"];
    let at: Vec<usize> = keys.iter().map(|k| line.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]));
    let rec = &records(&o)[0];
    let trace = ProofTrace::parse(rec["trace"].as_str().unwrap()).unwrap();
    assert_eq!(rec["steps"].as_u64(), Some(trace.len() as u64));
    // a record file is accepted by replay directly
    let path = dir.path().join("proof.jsonl");
    std::fs::write(&path, &line).unwrap();
    let o = moufang(&["replay", path.to_str().unwrap(), "--format", "records"]);
    assert_eq!(code(&o), 0);
    assert_eq!(records(&o)[0]["pass"], Value::Bool(true));
}

#[test]
fn tampered_trace_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.trace");
    let o = moufang(&["prove", "comoufang-3"]);
    // two output wires; crossing them gives a different right-hand side
    let text: String = stdout(&o)
        .lines()
        .map(|l| if l.starts_with("@rhs ") { format!("{l} ; swap\n") } else { format!("{l}\n") })
        .collect();
    std::fs::write(&path, text).unwrap();
    let o = moufang(&["replay", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn eval_and_check_model() {
    let o = moufang(&["eval", "mul", "--model", "loop_bialgebra(C2)", "--input", "1,1", "--format", "records"]);
    assert_eq!(code(&o), 0);
    // g·g is the unit of the group of order two
    assert_eq!(records(&o)[0]["value"], Value::String("1".into()));
    let o = moufang(&["eval", "comul", "--model", "truncated_binomial_bialgebra(2)"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    let assoc = ["mul * id(1) ; mul", "id(1) * mul ; mul"];
    let o = moufang(&["check-model", "--model", "loop_bialgebra(O16)", assoc[0], assoc[1]]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("FAIL"));
    let o = moufang(&["check-model", "--model", "function_bialgebra(O16)", assoc[0], assoc[1]]);
    assert_eq!(code(&o), 0);
    let o = moufang(&["check-model", "--model", "function_bialgebra(O16)", "--format", "records"]);
    assert_eq!(code(&o), 0);
    let recs = records(&o);
    let row = |check: &str| recs.iter().find(|r| r["check"] == check).unwrap()["pass"].clone();
    assert_eq!(row("comoufang-l"), Value::Bool(true));
    assert_eq!(row("coassoc"), Value::Bool(false));
}

#[test]
fn model_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.model");
    let m = moufang_core::models::loop_bialgebra(&moufang_core::models::MoufangLoop::cyclic(2));
    std::fs::write(&path, moufang_core::models::write_model_file(&m)).unwrap();
    let o = moufang(&["check-model", "--model", path.to_str().unwrap(), "mul", "swap ; mul"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn octonion_checks_and_export() {
    let o = moufang(&["octonion", "--params", "-1,-4,-1", "--format", "records"]);
    assert_eq!(code(&o), 0);
    assert!(records(&o).iter().all(|r| r["pass"] == Value::Bool(true)));
    let o = moufang(&["octonion", "--export"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("mul ")).count(), 64);
}

#[test]
fn deformation_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.deform");
    let p = path.to_str().unwrap();
    let o = moufang(&["deform", "--fixture", "binomial", "--degree", "4", "--order", "2", "--export", "--out", p]);
    assert_eq!(code(&o), 0);
    let direct = moufang(&["deform", "--fixture", "binomial", "--degree", "4", "--order", "2"]);
    let from_file = moufang(&["deform", "--file", p, "--model", "truncated_binomial_bialgebra(4)"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(stdout(&direct), stdout(&from_file));
    // the non-co-Moufang control fails
    assert_eq!(code(&moufang(&["deform", "--fixture", "formal-loop", "--degree", "4"])), 2);
}

#[test]
fn lie_case() {
    let o = moufang(&["deform", "--lie", "sl2", "--format", "records"]);
    assert_eq!(code(&o), 0);
    let recs = records(&o);
    let cas = recs.iter().find(|r| r["subject"] == "sl2 adjoint" && r["key"] == "casimir").unwrap();
    assert_eq!(cas["value"], "1");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.lie");
    std::fs::write(&path, moufang_core::deform::lie::LieAlgebraModel::sl2().to_text()).unwrap();
    let o = moufang(&["deform", "--lie", path.to_str().unwrap(), "--format", "records"]);
    assert_eq!(stdout(&o).lines().count(), recs.len());
}

#[test]
fn render_formats() {
    let o = moufang(&["render", "comul ; mul", "--as", "svg"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("<svg"));
    let o = moufang(&["render", "comul ; mul", "--as", "tikz"]);
    assert!(stdout(&o).contains("tikzpicture"));
}

#[test]
fn suite_is_deterministic_across_worker_counts() {
    let one = moufang(&["suite", "--jobs", "1"]);
    let two = moufang(&["suite", "--jobs", "2"]);
    assert_eq!(code(&one), 0, "{}", stdout(&one));
    assert_eq!(stdout(&one), stdout(&two));
    assert!(stdout(&one).lines().last().unwrap().ends_with("passed"));
}

#[test]
fn suite_seed_comes_from_the_environment() {
    let a = moufang_env(&["suite", "--only", "sweep"], &[("MOUFANG_SUITE_SEED", "7")]);
    let b = moufang_env(&["suite", "--only", "sweep"], &[("MOUFANG_SUITE_SEED", "7")]);
    let default = moufang(&["suite", "--only", "sweep"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("seed 7,"));
    assert_ne!(stdout(&a), stdout(&default));
    let bad = moufang_env(&["suite", "--only", "sweep"], &[("MOUFANG_SUITE_SEED", "x")]);
    assert_eq!(code(&bad), 1);
    assert_eq!(code(&moufang(&["suite", "--only", "nothing"])), 1);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let o = moufang(&["render", "mul", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert!(Path::new(&path).exists());
}
