use std::io::Write as _;
use std::process::{Command, Output};

use cdmatroid::matroid::is_isomorphic;
use cdmatroid::predicates::skew_circuit_pair;
use cdmatroid::zoo;
use cdmatroid_cli::audit::{AuditConfig, Auditor, Oracles};
use cdmatroid_cli::commands::{audit_status, exminors};
use cdmatroid_cli::input::{parse_input, parse_matrix, parse_text, to_matrix_text, InputError};
use serde_json::Value;
use tempfile::NamedTempFile;

const S8_MATRIX: &str = "4 8\n10001110\n01001111\n00100011\n00011001\n1 2 3 4 5 6 7 8\n";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdmatroid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn matrix_file_gives_s8() {
    let f = temp_file(S8_MATRIX);
    for arg in [f.path().to_str().unwrap().to_string(), format!("matrix:@{}", f.path().display())] {
        let m = parse_input(&arg).unwrap();
        assert_eq!((m.len(), m.rank()), (8, 4));
        assert!(is_isomorphic(&m, &zoo::s8()).unwrap().is_some());
    }
}

#[test]
fn graph_file_gives_k4() {
    let f = temp_file("graph\na b\na c\na d\nb c\nb d\nc d\n");
    let m = parse_input(&format!("graph:@{}", f.path().display())).unwrap();
    assert_eq!((m.len(), m.rank()), (6, 3));
    assert!(is_isomorphic(&m, &zoo::complete(4).unwrap()).unwrap().is_some());
    assert_eq!(m.labels(), ["1", "2", "3", "4", "5", "6"]);
}

#[test]
fn name_specs() {
    let m = parse_input("r10").unwrap();
    assert_eq!((m.len(), m.rank()), (10, 5));
    assert!(parse_input("no-such-thing").is_err());
}

#[test]
fn serialization_round_trips() {
    for spec in ["s8", "r10", "n5", "K:5", "Kb:3,3", "spike:4:tipless", "ag+e:4", "pg:3", "u1:6", "dual:prism", "loop"] {
        let m = zoo::make(spec).unwrap();
        let text = to_matrix_text(&m);
        let back = parse_text(&text).unwrap();
        assert_eq!(back.labels(), m.labels(), "{spec}");
        assert!(is_isomorphic(&back, &m).unwrap().is_some(), "{spec}");
        assert_eq!(to_matrix_text(&back), text, "{spec}");
    }
}

#[test]
fn malformed_input_reports_line() {
    let err = parse_matrix("2 3\n101\n1x1\n").unwrap_err();
    assert!(matches!(err, InputError::Malformed { line: 3, .. }));
    let f = temp_file("2 3\n101\n1x1\n");
    let o = bin(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn analyze_s8_lists_every_violating_pair() {
    let o = bin(&["analyze", "s8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rank: 4"));
    assert!(out.contains("circuit-difference: false (witness "));
    assert!(out.contains("  {1,4,7,8} {2,3,5,6,8}\n"));
    assert!(out.contains("skew circuits: false"));
    assert!(out.contains("regular: false"));
}

#[test]
fn analyze_k4_json() {
    let o = bin(&["--json", "analyze", "K:4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 3);
    assert_eq!(v["corank"], 3);
    assert_eq!(v["predicates"]["circuit_difference"], true);
    assert_eq!(v["predicates"]["skew_circuits"], false);
    assert_eq!(v["witnesses"]["circuit_difference"], Value::Null);
    assert_eq!(v["recognition"]["components"][0]["base"], "M*(K4)");
}

#[test]
fn analyze_n5_is_excluded() {
    let out = stdout(&bin(&["analyze", "n5"]));
    assert!(out.contains("excluded-series-minor: true"));
    assert!(out.contains("N5 series minor: itself"));
}

#[test]
fn circuits_command() {
    let o = bin(&["circuits", "s8"]);
    assert_eq!(stdout(&o).lines().count(), 14);
    let v: Value = serde_json::from_slice(&bin(&["--json", "circuits", "K:4"]).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn recognize_exit_codes() {
    let o = bin(&["recognize", "prism"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not circuit-difference; witness"));
    let o = bin(&["recognize", "s8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not regular"));
}

#[test]
fn audit_exit_codes() {
    let o = bin(&["audit", "--lemma", "1.2", "--max-elements", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("audit 1.2 PASS"));
    assert_eq!(bin(&["audit", "--lemma", "7.7"]).status.code(), Some(2));
    assert_eq!(bin(&["audit", "--max-elements", "40"]).status.code(), Some(2));
}

#[test]
fn thread_variable() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_cdmatroid"))
            .args(["audit", "--lemma", "2.9"])
            .env("MATROID_CD_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn exminors_listing() {
    let out = exminors(3, false).unwrap();
    assert!(out.starts_with("rank 3: 1 family members"));
    assert!(out.contains("(N5*)"));
    let out = exminors(4, false).unwrap();
    assert!(out.contains("(tipped 4-spike)") && out.contains("(S8)"));
    assert!(!out.contains("FAILED"));
    assert!(out.contains("U(n,n+2)"));
    assert!(exminors(2, false).is_err());
}

#[test]
fn census_counts() {
    let o = bin(&["--json", "census", "--elements", "6"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let counts: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["connected"].as_u64().unwrap()).collect();
    assert_eq!(counts, [2, 1, 2, 3, 6, 13]);
}

#[test]
fn corrupted_oracle_is_caught() {
    let broken = Oracles { circuit_difference: |_| Ok(true), ..Oracles::default() };
    let config = AuditConfig { max_elements: 7, lemma: Some("1.2".into()), ..AuditConfig::default() };
    let results = Auditor::new(config, broken).run().unwrap();
    assert_eq!(results.len(), 1);
    let failures = &results[0].failures;
    assert!(!failures.is_empty());
    assert_eq!(audit_status(&results), 1);
    for f in failures {
        // Each witness stands alone: the printed matroid really has the skew pair.
        let m = parse_text(&f.matroid).unwrap();
        let pair = skew_circuit_pair(&m).unwrap().expect("skew pair");
        assert_eq!(f.witness, vec![m.labels_of(&pair.first), m.labels_of(&pair.second)]);
    }
}

#[test]
fn audits_are_deterministic() {
    let run = || {
        let config = AuditConfig { max_elements: 7, ..AuditConfig::default() };
        let results = Auditor::new(config, Oracles::default()).run_ids(&["1.1", "1.4", "2.2", "2.9"]).unwrap();
        results
            .into_iter()
            .map(|r| (r.id, r.corpus, r.checked, r.failures.len(), r.errors))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}
