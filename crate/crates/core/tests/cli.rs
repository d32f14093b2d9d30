use std::path::PathBuf;
use std::process::{Command, Output};

fn table1() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/table1.csv")
}

fn oes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oes"))
        .args(args)
        .output()
        .expect("run oes")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus_arg() -> String {
    table1().to_string_lossy().into_owned()
}

#[test]
fn parse_subcommand() {
    let o = oes(&["parse", "C5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("atom 0: comb teeth=5"));

    let o = oes(&["parse", "D9,6"]);
    assert!(stdout(&o).contains("divided left=9 right=6"));

    let o = oes(&["parse", "Q3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 0"));
}

#[test]
fn eval_subcommand() {
    let first_line = |args: &[&str]| stdout(&oes(args)).lines().next().unwrap_or("").to_owned();
    assert_eq!(first_line(&["eval", "D9,6"]), "25 15");
    assert_eq!(first_line(&["eval", "L3S2"]), "32");
    assert_eq!(
        first_line(&["eval", "C5", "--hypothesis", "comb-nb:5"]),
        "25"
    );
    assert_eq!(
        oes(&["eval", "C5", "--hypothesis", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(oes(&["eval", "S0"]).status.code(), Some(1));
}

#[test]
fn stats_subcommand() {
    let o = oes(&["stats", &corpus_arg()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("section A: 134 (14.3% of 940)"));

    let o = oes(&["stats", &corpus_arg(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["prevalence"]["sections"][0]["count"], 134);
    assert_eq!(v["base_evidence"]["rows_exceeding_nine"], 5);

    let o = oes(&["stats", &corpus_arg(), "--format", "csv"]);
    assert!(stdout(&o).contains("prevalence,section,A,134,14.3%"));

    assert_eq!(oes(&["stats", "missing.csv"]).status.code(), Some(1));
}

#[test]
fn compare_subcommand() {
    let o = oes(&["compare", &corpus_arg(), "--hypotheses", "default,comb-n"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ranks: Vec<&str> = text.lines().skip(1).take(2).collect();
    assert!(ranks[0].starts_with("1     default"), "{text}");

    let o = oes(&[
        "compare",
        &corpus_arg(),
        "--hypotheses",
        "default",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);

    let o = oes(&["compare", &corpus_arg(), "--hypotheses", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = oes(&["compare", &corpus_arg(), "--hypotheses", "default,"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_subcommand() {
    let o = oes(&["validate", &corpus_arg()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in ["Tor156", "Tor280", "Jel46"] {
        assert!(text.contains(&format!("duplicate-in-list {id}")), "{id}");
    }
    assert_eq!(
        oes(&["validate", &corpus_arg(), "--strict"]).status.code(),
        Some(0)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("corrupted.csv");
    std::fs::write(
        &bad,
        "id,site,kind,locus,family,claimed_value,notation,table_section\n\
         Tor1,Tor,pot,unknown,score,1,S1,A\n\
         Tor2,Nowhere,pot,unknown,score,1,S1,A\n\
         Tor3,Tor,pot,unknown,score,1,S1Q,A\n",
    )
    .unwrap();
    let o = oes(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("line 3") && err.contains("line 4"), "{err}");

    let mismatch = dir.path().join("mismatch.csv");
    std::fs::write(
        &mismatch,
        "id,site,kind,locus,family,claimed_value,notation,table_section\n\
         Tor49,Tor,pot,unknown,comb,14,C5,B\n",
    )
    .unwrap();
    assert_eq!(
        oes(&["validate", mismatch.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        oes(&["validate", mismatch.to_str().unwrap(), "--strict"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn infer_base_subcommand() {
    let o = oes(&["infer-base", &corpus_arg()]);
    let text = stdout(&o);
    assert!(text.contains("max single-row count: 18"));
    assert!(text.contains("rows exceeding 9: 5 (published: 2)"));
    assert!(!text.contains("section A"));
}

#[test]
fn json_output_parses_for_every_subcommand() {
    let c = corpus_arg();
    let runs: [&[&str]; 6] = [
        &["parse", "X;V;S2", "--format", "json"],
        &["eval", "P3;S2", "--trace", "--format", "json"],
        &["stats", &c, "--format", "json"],
        &["compare", &c, "--format", "json"],
        &["infer-base", &c, "--format", "json"],
        &["validate", &c, "--format", "json"],
    ];
    for args in runs {
        let o = oes(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&o.stdout)
            .unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn output_is_deterministic() {
    let c = corpus_arg();
    for args in [
        vec!["stats", c.as_str()],
        vec!["compare", c.as_str(), "--format", "json"],
        vec!["validate", c.as_str(), "--format", "csv"],
        vec!["eval", "P3;P3", "--trace"],
    ] {
        assert_eq!(oes(&args).stdout, oes(&args).stdout, "{args:?}");
    }
}
