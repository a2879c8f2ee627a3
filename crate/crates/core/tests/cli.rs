use std::process::{Command, Output};

use serde_json::Value;

fn qmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_prints_normal_form() {
    let o = qmp(&["reduce", "--type", "II", "a1 * b2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "s^2 * b2 * g1\n");
    let o = qmp(&["reduce", "--type", "I", "U1^0"]);
    assert_eq!(stdout(&o), "[[1, 0], [0, 1]]\n");
    let o = qmp(&["reduce", "--type", "III", "r", "--format", "json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["result"], "r");
    let o = qmp(&["reduce", "--type", "I", "r"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn reduce_errors_exit_two() {
    let o = qmp(&["reduce", "--type", "I", "b1 * b2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BetaDegreeExceeded"));
    let o = qmp(&["reduce", "--type", "I", "a1 * (b1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 9"));
    assert_eq!(qmp(&["reduce", "--type", "IV", "a1"]).status.code(), Some(2));
    assert_eq!(qmp(&["reduce", "a1"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(qmp(&["verify", "--suite", "theorem1", "--type", "I", "--range", "3"]).status.code(), Some(0));
    assert_eq!(qmp(&["verify", "--suite", "theorem3", "--type", "II"]).status.code(), Some(0));
    assert_eq!(qmp(&["verify", "--suite", "mq2", "--range", "1"]).status.code(), Some(0));
    assert_eq!(qmp(&["verify", "--suite", "theorem1"]).status.code(), Some(2));
    assert_eq!(qmp(&["verify", "--suite", "theorem3", "--type", "III"]).status.code(), Some(2));
    assert_eq!(qmp(&["verify", "--suite", "prop1", "--type", "I", "--range", "0"]).status.code(), Some(2));
    assert_eq!(qmp(&["verify", "--suite", "nope", "--type", "I"]).status.code(), Some(2));
}

#[test]
fn expected_failures_do_not_fail_the_run() {
    let o = qmp(&["verify", "--suite", "theorem1", "--type", "III", "--range", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let expected: Vec<&Value> = lines.iter().filter(|v| v["expected"] == true).collect();
    assert_eq!(expected.len(), 17);
    assert!(expected.iter().all(|v| v["status"] == "violated"));
}

#[test]
fn json_schema_and_determinism() {
    let args = ["verify", "--suite", "theorem2", "--type", "I", "--range", "1", "--format", "json"];
    let first = stdout(&qmp(&args));
    let second = stdout(&qmp(&args));
    assert_eq!(first, second);
    for line in first.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let obj = v.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut expected = vec!["suite", "family", "params", "relation", "status", "expected", "lhs", "rhs"];
        expected.sort_unstable();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort_unstable();
        assert_eq!(keys_sorted, expected);
        for k in ["n", "m", "s", "t"] {
            assert!(v["params"][k].is_i64(), "{line}");
        }
        assert!(v["status"] == "holds" || v["status"] == "violated");
        assert!(v["expected"].is_boolean());
    }
}

#[test]
fn modular_command() {
    let o = qmp(&["modular", "--type", "II", "--word", "T", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["matrix"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["status"], "holds");
    let o = qmp(&["modular", "--type", "I", "--word", "S T S T S T"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matrix: [[1, 0], [0, 1]]"));
    assert_eq!(qmp(&["modular", "--type", "I", "--word", "S X"]).status.code(), Some(2));
    assert_eq!(qmp(&["modular", "--type", "III", "--word", "S"]).status.code(), Some(2));
}

#[test]
fn violations_exit_one() {
    use qmatrix_pairs::cli::{write_reports, Format, EXIT_OK, EXIT_VIOLATION};
    use qmatrix_pairs::pairs::{check_q_commutation, Params, RelationOutcome, RelationReport, QPair};
    use qmatrix_pairs::Family;

    let p = QPair::generators(Family::TypeII);
    let wrong = check_q_commutation(&p.u1, &p.u2, 0).unwrap();
    let mut out = Vec::new();
    assert_eq!(write_reports(&[wrong], Format::Text, &mut out), EXIT_VIOLATION);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("FAILED"));
    assert!(text.contains("violated MN=Q.NM[11]"));

    let mut expected = RelationReport::new("probe", "III", Params::n(1));
    expected.push(RelationOutcome::compare("x", &1, &2).expecting_failure());
    assert_eq!(write_reports(&[expected.clone()], Format::Json, &mut Vec::new()), EXIT_OK);
    let mut unexpected_pass = expected;
    unexpected_pass.push(RelationOutcome::compare("y", &1, &1).expecting_failure());
    assert_eq!(write_reports(&[unexpected_pass], Format::Json, &mut Vec::new()), EXIT_VIOLATION);
}
