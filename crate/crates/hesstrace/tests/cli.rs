//! Black-box tests of the hesstrace binary: exit codes, stable CSV
//! columns, JSON-vs-schema validation, config plumbing.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hesstrace"));
    // Tests must not pick up a config file from the ambient environment.
    cmd.env_remove("HESSTRACE_CONFIG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn bridge_passes_with_fixed_csv_columns() {
    let out = run(&["bridge", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# q=7 checked=3 mismatches=0");
    assert_eq!(lines[2], "lam,lifted,trace");
    assert_eq!(&lines[3..], ["1,1,-1", "2,1,-1", "4,1,-1"]);
}

#[test]
fn usage_errors_exit_2() {
    // 5 ≡ 2 (mod 3): no cubic character, so no ₂F₁ bridge.
    assert_eq!(run(&["bridge", "--p", "5"]).status.code(), Some(2));
    assert_eq!(run(&["moments", "--p", "6"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["distribution", "--p", "7", "--bins", "0"]).status.code(), Some(2));
}

#[test]
fn moments_identity_rows_agree_exactly() {
    let out = run(&["moments", "--p", "7", "--m-max", "6", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config "));
    assert_eq!(lines.next().unwrap(), "q,r,m,direct,classnum,scaled,target,abs_error");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    // T(7, 1) = 0 and T(7, 2) = 6, both matched by the class-number side.
    assert_eq!(&rows[0][..5], ["7", "1", "1", "0", "0/1"]);
    assert_eq!(&rows[1][..5], ["7", "1", "2", "6", "6/1"]);
}

#[test]
fn distribution_reports_failure_at_tiny_q() {
    // F_7 is far from the limit law; the check fails but the table is
    // still emitted and mass is conserved.
    let out = run(&["distribution", "--p", "7", "--bins", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    let total: u64 = text
        .lines()
        .skip(3)
        .map(|l| l.split(',').nth(2).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 7);
}

#[test]
fn census_and_identities_pass() {
    assert_eq!(run(&["census", "--q", "13"]).status.code(), Some(0));
    let out = run(&["identities", "--nu-max", "12", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.lines().nth(1) == Some("check,pass"));
    assert_eq!(text.lines().filter(|l| l.ends_with(",true")).count(), 5);
}

#[test]
fn classnum_table_lists_exact_rationals() {
    let out = run(&["classnum", "--d-max", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("\n3,1,1/1,1/3\n"));
    assert!(text.contains("\n4,1,1/1,1/2\n"));
    assert!(text.contains("\n23,3,3/1,3/1\n"));
}

fn schema(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file"))
        .expect("schema parses")
}

#[test]
fn json_outputs_validate_against_shipped_schemas() {
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["bridge", "--p", "7"], "bridge.schema.json"),
        (vec!["moments", "--p", "7", "--m-max", "3"], "moments.schema.json"),
        (vec!["moments", "--p", "11", "--m-max", "3", "--method", "direct"], "moments.schema.json"),
        (vec!["distribution", "--p", "7", "--bins", "4"], "distribution.schema.json"),
        (vec!["classnum", "--d-max", "25"], "classnum.schema.json"),
        (vec!["census", "--q", "7"], "census.schema.json"),
        (vec!["identities", "--nu-max", "6", "--n-max", "10"], "identities.schema.json"),
        (vec!["sweep", "--p-list", "7,13", "--m-max", "2"], "sweep.schema.json"),
    ];
    for (mut args, schema_name) in cases {
        args.push("--format");
        args.push("json");
        let out = run(&args);
        let value: serde_json::Value =
            serde_json::from_str(&stdout_of(&out)).unwrap_or_else(|e| {
                panic!("{args:?} did not emit JSON: {e}");
            });
        let validator = jsonschema::validator_for(&schema(schema_name)).expect("valid schema");
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?} violates {schema_name}: {errors:?}");
    }
}

#[test]
fn config_file_via_env_raises_ks_tolerance() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# loose tolerance for a tiny field").unwrap();
    writeln!(file, "ks = 0.5").unwrap();
    writeln!(file, "threads = 1").unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let out = run_with_env(
        &["distribution", "--p", "7", "--bins", "4"],
        &[("HESSTRACE_CONFIG", &path)],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("ks=0.5"));
}

#[test]
fn out_flag_writes_the_table_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bridge.csv");
    let out = run(&["bridge", "--p", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("# q=7 checked=3 mismatches=0"));
}
