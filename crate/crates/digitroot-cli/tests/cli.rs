//! End-to-end tests of the `droot` binary: exit codes, output formats, and
//! flag handling.

use std::process::{Command, Output};

fn droot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_droot"))
        .args(args)
        .output()
        .expect("failed to run droot")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn dr_command() {
    for (arg, expected) in [("888", "6"), ("-1", "8"), ("0", "9"), ("123456789", "9")] {
        let out = droot(&["dr", arg]);
        assert_eq!(exit_code(&out), 0);
        assert_eq!(stdout(&out).trim(), expected);
    }
}

#[test]
fn dr_rejects_garbage() {
    let out = droot(&["dr", "twelve"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn dr_json() {
    let out = droot(&["--format", "json", "dr", "888"]);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"n":888,"digital_root":6}"#
    );
}

#[test]
fn table_text_and_cells() {
    let out = droot(&["table", "powers", "--max-exp", "6"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("X^6"));
    let cells: Vec<&str> = last.split_whitespace().skip(1).collect();
    assert_eq!(cells, ["1", "1", "9", "1", "1", "9", "1", "1", "9"]);

    // mul cell (9, 5) and add cell (9, 9)
    let mul = stdout(&droot(&["table", "mul", "--format", "csv"]));
    let row9: Vec<&str> = mul.lines().nth(9).unwrap().split(',').collect();
    assert_eq!(row9[0], "9");
    assert_eq!(row9[5], "9");
    let add = stdout(&droot(&["table", "add", "--format", "csv"]));
    let row9: Vec<&str> = add.lines().nth(9).unwrap().split(',').collect();
    assert_eq!(row9[9], "9");
}

#[test]
fn table_rejects_bad_arguments() {
    assert_eq!(exit_code(&droot(&["table", "powers", "--max-exp", "1"])), 2);
    assert_eq!(exit_code(&droot(&["table", "division"])), 2);
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(exit_code(&droot(&["analyze", "x^2 = y^3 - 2"])), 0);
    assert_eq!(exit_code(&droot(&["analyze", "9*x = 1"])), 1);
    assert_eq!(exit_code(&droot(&["analyze", "x^2 +"])), 2);
    assert_eq!(
        exit_code(&droot(&["--budget", "10", "analyze", "x^2 = y^3 - 2"])),
        3
    );
}

#[test]
fn analyze_json_schema() {
    let out = droot(&[
        "--format",
        "json",
        "analyze",
        "A^x + B^y = C^z",
        "--min",
        "x=3",
        "--min",
        "y=3",
        "--min",
        "z=3",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "equation",
            "variables",
            "exponents",
            "verdict",
            "projections",
            "exponent_projections",
            "enumeration_size"
        ]
    );
    assert_eq!(v["equation"], "A^x + B^y = C^z");
    assert_eq!(v["variables"], serde_json::json!(["A", "B", "C"]));
    assert_eq!(v["exponents"][0]["name"], "x");
    assert_eq!(v["exponents"][0]["min"], 3);
    assert_eq!(v["enumeration_size"], 9u64.pow(3) * 6u64.pow(3));
}

#[test]
fn analyze_tuples_flag() {
    let out = droot(&["--format", "json", "analyze", "x^2 = y^3 - 2", "--tuples"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let tuples = v["tuples"].as_array().unwrap();
    assert_eq!(tuples.len(), 6);
    assert!(tuples.contains(&serde_json::json!({"x": 5, "y": 3})));
    // without the flag the key is absent
    let out = droot(&["--format", "json", "analyze", "x^2 = y^3 - 2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.get("tuples").is_none());
}

#[test]
fn analyze_filter_usage_errors() {
    assert_eq!(
        exit_code(&droot(&["analyze", "x^2 = y^2", "--filter", "dr(q)=1"])),
        2
    );
    assert_eq!(
        exit_code(&droot(&["analyze", "x^2 = y^2", "--filter", "x = 1"])),
        2
    );
    assert_eq!(
        exit_code(&droot(&["analyze", "x^2 = y^2", "--min", "x=3"])),
        2
    );
}

#[test]
fn search_finds_and_checks() {
    let out = droot(&[
        "--format",
        "json",
        "search",
        "x^2 = y^3 - 2",
        "--bound",
        "100",
        "--check",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let solutions = v["solutions"].as_array().unwrap();
    assert!(solutions.contains(&serde_json::json!({"x": 5, "y": 3})));
    assert!(solutions.contains(&serde_json::json!({"x": -5, "y": 3})));
    assert_eq!(v["soundness"]["pass"], true);
}

#[test]
fn search_empty_box() {
    let out = droot(&["search", "x^2 = y^3 - 2", "--bound", "0"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("solutions: 0"));
}

#[test]
fn search_budget_exit() {
    let out = droot(&["--budget", "100", "search", "x^2 = y^3 - 2", "--bound", "100"]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn fermat_modes() {
    let out = droot(&["fermat", "classic", "--a-max", "100", "--p-max", "31"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0 counterexamples"));
    let out = droot(&["fermat", "extension", "--a-max", "1", "--p-max", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("0 counterexamples"));
    assert_eq!(exit_code(&droot(&["fermat", "classic", "--p-max", "1"])), 2);
}

#[test]
fn csv_is_for_tables_only() {
    for cmd in [
        vec!["--format", "csv", "dr", "1"],
        vec!["--format", "csv", "analyze", "x = 1"],
        vec!["--format", "csv", "search", "x = 1"],
        vec!["--format", "csv", "fermat", "classic"],
    ] {
        assert_eq!(exit_code(&droot(&cmd)), 2, "{cmd:?}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "analyze", "x^2 = 1 + d*y^2", "--tuples"];
    let a = droot(&args);
    let b = droot(&args);
    assert_eq!(a.stdout, b.stdout);
}
