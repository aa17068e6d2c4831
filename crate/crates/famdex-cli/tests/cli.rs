//! End-to-end checks of the command-line surface: exit codes, byte-stable
//! output, and the documented row counts.

use std::process::{Command, Output};

fn famdex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_famdex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn enum_row_counts() {
    let out = famdex(&["enum", "cf", "--d", "2", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);

    let out = famdex(&["enum", "zero-v", "--d", "5", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 20);

    let out = famdex(&["enum", "occ", "--d", "0", "--format", "tsv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 1);

    let out = famdex(&["enum", "cf-prime", "--d", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 10);
}

#[test]
fn xgamma_row_counts() {
    for (tag, variant, expected) in [
        ("S4", "big-x", 11),
        ("S5", "big-x", 17),
        ("S2'", "big-x", 2),
        ("S3'", "big-x", 4),
        ("S4", "bar-big-x", 12),
        ("V4", "big-x", 10),
        ("V'5", "x", 4),
        ("V'5", "barx", 5),
    ] {
        let out = famdex(&["xgamma", tag, "--variant", variant, "--format", "tsv"]);
        assert!(out.status.success(), "{tag} {variant}");
        assert_eq!(
            stdout(&out).lines().count(),
            expected,
            "{tag} {variant} row count"
        );
    }
}

#[test]
fn usage_errors_exit_two() {
    // bound above the cap without the override
    let out = famdex(&["enum", "cf", "--d", "20"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown object tag
    let out = famdex(&["xgamma", "Q8"]);
    assert_eq!(out.status.code(), Some(2));
    // quotient collection at an even bound
    let out = famdex(&["enum", "cf-prime", "--d", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // out-of-range pair index
    let out = famdex(&["rho", "S3", "--pair-index", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rho_prints_exact_coefficients() {
    // index 0 of the degree-3 listing is the full pair: three unit terms
    let out = famdex(&["rho", "S3", "--pair-index", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let coeff_lines: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with("object") && !l.starts_with("pair"))
        .collect();
    assert_eq!(coeff_lines.len(), 3);
    for line in coeff_lines {
        assert!(line.ends_with("\t1"), "unit coefficient expected: {line}");
    }
}

#[test]
fn verify_scoped_run_passes() {
    let out = famdex(&["verify", "--scope", "grp,gam"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("summary"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn precuspidal_report_passes() {
    let out = famdex(&["precuspidal", "E8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));
    let out = famdex(&["precuspidal", "Z1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["enum", "cf", "--d", "6", "--format", "json"],
        vec!["enum", "occ-prime", "--d", "5", "--format", "tsv"],
        vec!["xgamma", "S5", "--variant", "big-x", "--format", "json"],
        vec!["order", "S3"],
        vec!["precuspidal"],
    ] {
        let a = famdex(&args);
        let b = famdex(&args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "unstable output for {args:?}");
    }
}
