//! End-to-end tests against the compiled binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiver-hall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

#[test]
fn count_flag_brute_matches_known_count() {
    let out = run(&[
        "count-flag",
        "--quiver",
        "a2",
        "--rep",
        "m22",
        "--filtration",
        "G",
        "--p",
        "2",
        "--method",
        "brute",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn count_flag_reflect_prints_residue() {
    let out = run(&[
        "count-flag",
        "--quiver",
        "a2",
        "--rep",
        "m22",
        "--filtration",
        "G",
        "--p",
        "2",
        "--method",
        "reflect",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 (mod 2)\n");
}

#[test]
fn brute_and_reflect_agree_mod_p() {
    for p in ["2", "3"] {
        let brute = run(&[
            "count-flag", "--quiver", "a2", "--rep", "m22", "--filtration", "G", "--p", p,
            "--method", "brute",
        ]);
        let reflect = run(&[
            "count-flag", "--quiver", "a2", "--rep", "m22", "--filtration", "G", "--p", p,
            "--method", "reflect",
        ]);
        let count: u64 = stdout(&brute).trim().parse().expect("number");
        let residue: u64 = stdout(&reflect)
            .split_whitespace()
            .next()
            .expect("residue")
            .parse()
            .expect("number");
        let modulus: u64 = p.parse().expect("prime");
        assert_eq!(count % modulus, residue);
    }
}

#[test]
fn count_flag_strata() {
    let out = run(&[
        "count-flag",
        "--quiver",
        "a2",
        "--rep",
        "m22",
        "--filtration",
        "G",
        "--p",
        "2",
        "--strata-vertex",
        "2",
        "--strata-r",
        "0,0,1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn hall_poly_example() {
    let out = run(&[
        "hall-poly", "--quiver", "a1", "--xi", "S.2", "--mu", "S.1", "--nu", "S.1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q + 1\n");
}

#[test]
fn hall_mul_word_product() {
    let out = run(&["hall-mul", "--quiver", "a2", "--word", "1,2", "--p", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "u{1x(1,1)} + u{1x(0,1) + 1x(1,0)}\n");
    let out = run(&["hall-mul", "--quiver", "a2", "--word", "2,1", "--p", "2"]);
    assert_eq!(stdout(&out), "u{1x(0,1) + 1x(1,0)}\n");
}

#[test]
fn roots_listing() {
    let out = run(&["roots", "--quiver", "a2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(0,1)\n(1,0)\n(1,1)\n");
}

#[test]
fn classify_fixture_and_file() {
    let out = run(&["classify", "--quiver", "a2", "--rep", "m22", "--p", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1x(0,1) + 1x(1,0) + 1x(1,1)\n");

    let dir = std::env::temp_dir().join("quiver-hall-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("rep.json");
    std::fs::write(&path, r#"{"p":3,"dim":[1,1],"matrices":{"a":[[1]]}}"#).expect("write");
    let out = run(&["classify", "--quiver", "a2", "--rep", path.to_str().expect("utf8 path")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1x(1,1)\n");
}

#[test]
fn schema_violation_exits_2() {
    let out = run(&[
        "count-flag",
        "--quiver",
        r#"{"vertices":[1,2],"arrows":[["a",1,9]]}"#,
        "--rep",
        "m22",
        "--filtration",
        "G",
        "--p",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", "--quiver", "a2", "--rep", "no-such-fixture"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_dynkin_quiver_is_rejected_where_required() {
    let kronecker = r#"{"vertices":[1,2],"arrows":[["a",1,2],["b",1,2]]}"#;
    let out = run(&["roots", "--quiver", kronecker]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "verify", "--suite", "psi-iso", "--quiver", kronecker, "--max-word-len", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    let out = run(&[
        "verify",
        "--suite",
        "euler-identity",
        "--quiver",
        "a2",
        "--count",
        "50",
    ]);
    assert!(out.status.success());
    let out = run(&[
        "verify",
        "--suite",
        "modq-equivalence",
        "--quiver",
        "a2",
        "--max-word-len",
        "3",
        "--primes",
        "2,3",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn geometry_report_is_byte_deterministic() {
    let args = [
        "geometry-report",
        "--quiver",
        "a2",
        "--iso",
        "P.1+S1.1+S2.1",
        "--filtration",
        "G",
        "--p",
        "2",
        "--format",
        "tsv",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    let text = stdout(&first);
    assert!(text.contains("polynomial\t2q + 1"));
    assert!(text.contains("P(0)\t1"));
    assert!(text.contains("P(1)\t3"));
    assert!(text.contains("codim\t0"));
}

#[test]
fn hall_table_regenerates_bit_identically() {
    let args = ["hall-table", "--quiver", "a2", "--max-dim", "2"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert!(!stdout(&first).is_empty());
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn tangent_rows() {
    let out = run(&[
        "tangent",
        "--quiver",
        "a2",
        "--iso",
        "P.2",
        "--filtration",
        "G",
        "--p",
        "2",
        "--format",
        "tsv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    for line in text.lines() {
        assert!(line.ends_with("\t1"));
    }
}
