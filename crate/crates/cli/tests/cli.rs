use std::process::{Command, Output};

use clf_core::CongruenceReport;

fn clf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(args)
        .env_remove("CLF_FORMAT")
        .output()
        .expect("spawn clf")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    stdout(out).lines().map(str::to_string).collect()
}

#[test]
fn seq_tables() {
    let out = clf(&["seq", "clf", "--max", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        lines(&out),
        ["0 1", "1 8", "2 80", "3 896", "4 10816", "5 137728"]
    );
    assert_eq!(
        lines(&clf(&["seq", "franel", "--max", "1"])),
        ["0 1", "1 2"]
    );
    assert_eq!(lines(&clf(&["seq", "clf", "--max", "0"])), ["0 1"]);
    let out = clf(&[
        "seq", "apery-b", "--max", "2", "--vp", "3", "--format", "csv",
    ]);
    assert_eq!(lines(&out), ["n,value,vp", "0,1,0", "1,3,1", "2,15,1"]);
}

#[test]
fn seq_json_uses_strings() {
    let out = clf(&["seq", "clf", "--max", "40", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let last = &v.as_array().unwrap()[40];
    assert_eq!(last["n"], 40);
    assert!(last["value"].is_string());
}

#[test]
fn qexpand_listings() {
    assert_eq!(
        lines(&clf(&["qexpand", "t", "--order", "5"])),
        ["1/2", "-2", "6", "-16", "39"]
    );
    assert_eq!(
        lines(&clf(&["qexpand", "f", "--order", "5"])),
        ["1", "4", "4", "0", "4", "8"]
    );
    assert_eq!(
        lines(&clf(&["qexpand", "E2", "--order", "6"])),
        ["1", "0", "-4", "0", "-4", "0", "32"]
    );
    assert_eq!(
        lines(&clf(&["qexpand", "E", "--order", "3"])),
        ["1", "-4", "-4", "32"]
    );
    let out = clf(&["qexpand", "t", "--order", "9", "--format", "json"]);
    let pairs: Vec<[String; 2]> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(pairs[0], ["1".to_string(), "2".to_string()]);
    assert_eq!(pairs[8], ["1509".to_string(), "2".to_string()]);
}

#[test]
fn exit_codes() {
    assert_eq!(
        clf(&[
            "verify",
            "supercongruence",
            "--p",
            "3",
            "--r",
            "2",
            "--m",
            "1"
        ])
        .status
        .code(),
        Some(0)
    );
    let bad = clf(&["verify", "no-such-family"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("clf-symmetry"));
    assert_eq!(
        clf(&["qexpand", "g", "--order", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        clf(&["seq", "clf", "--max", "2000000"]).status.code(),
        Some(2)
    );
    assert_eq!(
        clf(&["seq", "clf", "--max", "20", "--cap-index", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        clf(&["verify", "central", "--p", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        clf(&["verify", "supercongruence", "--p", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        clf(&["verify", "supercongruence", "--r", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        clf(&["qexpand", "t", "--order", "50", "--cap-order", "20"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        clf(&["verify", "apery-symmetry", "--p", "3"]).status.code(),
        Some(0)
    );
    assert_eq!(clf(&["seq", "clf"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let out = clf(&[
        "verify",
        "v5-conjecture",
        "--max",
        "3000",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<CongruenceReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].checked, 3001);
    assert_eq!(
        clf(&["verify", "qseries-identities", "--order", "100"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["verify", "granville", "--max", "12", "--format", "json"][..],
        &[
            "verify",
            "modppower",
            "--seed",
            "9",
            "--order",
            "30",
            "--format",
            "json",
        ][..],
        &["verify", "fine", "--order", "40", "--format", "json"][..],
    ] {
        let text = stdout(&clf(args));
        let parsed: Vec<CongruenceReport> = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(text, again);
        assert_eq!(text, stdout(&clf(args)), "deterministic output");
    }
}

#[test]
fn csv_columns() {
    let out = clf(&["verify", "clf-symmetry", "--max", "20", "--format", "csv"]);
    let rows = lines(&out);
    assert_eq!(
        rows[0],
        "family,param_tuple,modulus,status,counterexample_lhs,counterexample_rhs"
    );
    assert_eq!(rows.len(), 1 + 7);
    assert_eq!(rows[1], "clf-symmetry,p=3,3,pass,,");
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(["seq", "clf", "--max", "1"])
        .env("CLF_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(lines(&out), ["n,value", "0,1", "1,8"]);
    let out = Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(["seq", "clf", "--max", "1", "--format", "human"])
        .env("CLF_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(lines(&out), ["0 1", "1 8"]);
}
