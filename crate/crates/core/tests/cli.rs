mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{ad1_strings, fixture};
use cws_core::report::CSV_COLUMNS;
use cws_core::search::ResultsTable;
use serde_json::Value;

fn cws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cws"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn results(dir: &Path) -> ResultsTable {
    ResultsTable::parse(&std::fs::read_to_string(dir.join("results.json")).unwrap()).unwrap()
}

#[test]
fn errors_list_matches_oracle() {
    let o = cws(&["errors", "--n", "3", "--error-set", "ad1", "--list"]);
    assert!(o.status.success());
    let got: std::collections::BTreeSet<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(got, ad1_strings(3));
    let o = cws(&["errors", "--n", "4", "--error-set", "dephase", "--r", "2"]);
    assert!(stdout(&o).contains("19 members"), "{}", stdout(&o));
}

#[test]
fn exhaustive_search_writes_verifiable_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cws(&[
        "search",
        "--n",
        "5",
        "--error-set",
        "ad1",
        "--exhaustive",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = results(dir.path());
    assert_eq!(table.rows.len(), 1);
    let row = &table.rows[0];
    assert_eq!(row.best_k, Some(2));
    assert!(row.exhaustive);
    assert!(dir.path().join("manifest.json").is_file());
    for w in &row.witnesses {
        let file = dir.path().join(w.file.as_ref().unwrap());
        let v = cws(&[
            "verify",
            "--code",
            file.to_str().unwrap(),
            "--n",
            "5",
            "--error-set",
            "ad1",
        ]);
        assert!(v.status.success(), "{}", stdout(&v));
    }

    // same run again replaces the row
    assert!(cws(&[
        "search",
        "--n",
        "5",
        "--error-set",
        "ad1",
        "--exhaustive",
        "--out",
        out
    ])
    .status
    .success());
    assert_eq!(results(dir.path()).rows.len(), 1);

    let text = cws(&["report", "--in", out]);
    assert!(stdout(&text)
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["5", "2", "-"]));
    let csv = stdout(&cws(&["report", "--in", out, "--csv"]));
    assert_eq!(csv.lines().next().unwrap(), CSV_COLUMNS.join(","));
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = fixture("code_6_4.json");
    let report = dir.path().join("report.json");
    let o = cws(&[
        "verify",
        "--code",
        code.to_str().unwrap(),
        "--n",
        "6",
        "--error-set",
        "ad1",
        "--emit-report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["ok"], Value::Bool(true));
    assert_eq!(doc["centralizer_ok"], Value::Bool(true));
    assert_eq!(doc["c_values"].as_array().unwrap().len(), 79);

    let o = cws(&[
        "verify",
        "--code",
        code.to_str().unwrap(),
        "--n",
        "6",
        "--error-set",
        "ad2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn random_search_is_reproducible() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let o = cws(&[
            "search",
            "--n",
            "6",
            "--error-set",
            "dephase",
            "--r",
            "2",
            "--random",
            "--seed",
            "7",
            "--iterations",
            "300",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(o.status.success());
        let row = results(dir.path()).rows.remove(0);
        (
            row.best_k,
            row.witnesses
                .into_iter()
                .map(|w| (w.graph6, w.perm, w.codewords))
                .collect::<Vec<_>>(),
        )
    };
    let a = run();
    assert!(a.0.is_some());
    assert_eq!(a, run());
}

#[test]
fn requeue_finishes_budget_exhausted_instances() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cws(&[
        "search",
        "--n",
        "5",
        "--error-set",
        "dephase",
        "--r",
        "1",
        "--exhaustive",
        "--max-nodes",
        "1",
        "--out",
        out,
    ]);
    assert!(o.status.success());
    let first = results(dir.path()).rows.remove(0);
    assert!(!first.exhaustive && first.budget_exhausted > 0);
    assert_eq!(first.requeue.len() as u64, first.budget_exhausted);

    let o = cws(&[
        "search",
        "--n",
        "5",
        "--error-set",
        "dephase",
        "--r",
        "1",
        "--requeue",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = results(dir.path());
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.rows[0].best_k, Some(6));
    assert!(table.rows[0].exhaustive);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(
        cws(&["errors", "--n", "1", "--error-set", "ad1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cws(&["errors", "--n", "4", "--error-set", "dephase"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cws(&["errors", "--n", "4", "--error-set", "custom"])
            .status
            .code(),
        Some(2)
    );
    let missing = cws(&[
        "verify",
        "--code",
        "/nonexistent.json",
        "--n",
        "4",
        "--error-set",
        "ad1",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}
