use std::process::{Command, Output};

fn edsx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edsx"))
        .args(args)
        .env("EDSX_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn cartan_table_as_json() {
    let o = edsx(&["cartan", "--structure", "su-even:3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["polar"]["c_values"], serde_json::json!([0, 0, 1, 5, 14, 22, 28]));
    assert_eq!(v["polar"]["ordinary"], true);
}

#[test]
fn invariant_four_form_of_so3() {
    let o = edsx(&["invariants", "--structure", "so3-9", "--degree", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["invariants"][0]["dim"], 1);
}

#[test]
fn unknown_names_are_usage_errors() {
    assert_eq!(edsx(&["cartan", "--structure", "nope"]).status.code(), Some(2));
    assert_eq!(edsx(&["cartan", "--structure", "su-even:9"]).status.code(), Some(2));
    assert_eq!(edsx(&["dga", "--structure", "g2", "--operator", "nope"]).status.code(), Some(2));
    assert_eq!(edsx(&["stability", "--structure", "g2", "--form", "nope"]).status.code(), Some(2));
    assert_eq!(edsx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(edsx(&["paper-check", "--criterion", "11"]).status.code(), Some(2));
}

#[test]
fn missing_parameters_are_usage_errors() {
    let o = edsx(&["dga", "--structure", "su-even:3", "--operator", "nearly-kahler"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn operator_check_accepts_greek_parameters() {
    let o = edsx(&["dga", "--structure", "su-even:3", "--operator", "nearly-kahler", "--params", "λ=3,μ=0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["check"]["extends_ok"], true);
}

#[test]
fn failed_assertion_exits_with_one() {
    let o = edsx(&["dga", "--structure", "so3-9", "--operator", "dual", "--params", "lambda=1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn flagged_items_do_not_affect_exit_code() {
    // Criterion 9 carries a flagged row for the printed three-form.
    let o = edsx(&["paper-check", "--criterion", "9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(!v["flagged"].as_array().unwrap().is_empty());
}

#[test]
fn report_is_deterministic() {
    let a = edsx(&["paper-check", "--criterion", "5,9", "--cases", "50"]);
    let b = edsx(&["paper-check", "--criterion", "5,9", "--cases", "50"]);
    assert_eq!(a.stdout, b.stdout);
}
