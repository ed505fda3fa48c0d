//! End-to-end tests of the `etaq` binary: output shapes, exit codes, and
//! byte-level determinism of the structured format.

use std::process::{Command, Output};

fn etaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etaq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn expand_table_lists_rows_inclusively() {
    let out = etaq(&["expand", "--spec", "1^1,5^-2", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let fields: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(fields, vec!["5", "3", "+"], "final row must be n=5, c=3, sign +");
}

#[test]
fn expand_structured_has_versioned_header_and_zero_rows() {
    let out = etaq(&["expand", "--spec", "1^1,5^-2", "--n", "4", "--format", "structured"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "etaq-output v1\texpand\t1^1,5^-2");
    assert!(text.contains("row\t3\t0\t0"));
    assert!(text.contains("row\t4\t0\t0"));
    assert!(!text.contains("row\t5"), "--n is inclusive, not exclusive");
}

#[test]
fn expand_rejects_malformed_spec_as_usage_error() {
    let out = etaq(&["expand", "--spec", "1^", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn signs_confirms_and_reports_violations() {
    let ok = etaq(&["signs", "--spec", "1^1,2^2,4^-3", "--n", "500", "--pattern", "+--+"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("confirmed"));

    let bad = etaq(&["signs", "--spec", "1^1,5^-2", "--n", "50", "--pattern", "+-+00"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("violation at n=2"));

    let usage = etaq(&[
        "signs", "--spec", "1^1,5^-2", "--n", "50", "--pattern", "+--00", "--period", "4",
    ]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn exact_case1_certifies_rounding() {
    let out = etaq(&["exact", "--case", "1", "--n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rounds to  = 3"));
    assert!(text.contains("converged  = true"));
}

#[test]
fn exact_case2_reports_uncertified_tail() {
    // small cap keeps the run fast; the certified tail stays >= 1/2 anyway
    let out = etaq(&["exact", "--case", "2", "--n", "3", "--cap", "400", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("etaq-output v1\texact\t2"));
    assert!(text.contains("\tfalse\t"), "converged flag must be false");
}

#[test]
fn exact_rejects_case3() {
    let out = etaq(&["exact", "--case", "3", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_prints_main_sign_and_all_four_bounds() {
    let out = etaq(&["decompose", "--n", "9", "--format", "structured"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("main-sign\t1"));
    for key in ["e3-bound", "expansion-bound", "short-arc-bound", "mid-range-bound"] {
        assert!(text.contains(&format!("{key}\t")), "missing {key}");
    }
}

#[test]
fn certify_writes_stable_certificate_and_cites_ranges() {
    let dir = std::env::temp_dir();
    let path_a = dir.join("etaq-cli-test-cert-a.txt");
    let path_b = dir.join("etaq-cli-test-cert-b.txt");
    let run_a = etaq(&["certify", "--theorem", "1", "--n-max", "2000", "--out", path_a.to_str().unwrap()]);
    let run_b = etaq(&["certify", "--theorem", "1", "--n-max", "2000", "--out", path_b.to_str().unwrap()]);
    assert!(run_a.status.success() && run_b.status.success());
    let text = stdout(&run_a);
    assert!(text.contains("[1, 32]"), "summary must cite the below-threshold window");
    assert!(text.contains("[33, 2000]"), "summary must cite the inequality range");
    let cert_a = std::fs::read(&path_a).unwrap();
    let cert_b = std::fs::read(&path_b).unwrap();
    assert_eq!(cert_a, cert_b, "certificate files must be byte-identical");
    assert!(cert_a.starts_with(b"etaq-certificate v1\n"));
    let _ = std::fs::remove_file(path_a);
    let _ = std::fs::remove_file(path_b);
}

#[test]
fn certify_rejects_bound_below_threshold_as_usage() {
    let out = etaq(&["certify", "--theorem", "1", "--n-max", "20"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_is_deterministic_and_finds_the_partition_series() {
    let args = [
        "scan", "--max-level", "1", "--delta", "-2..2", "--period-max", "6",
        "--n-verify", "300", "--format", "structured",
    ];
    let first = etaq(&args);
    let second = etaq(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "structured scans must be byte-identical");
    let text = stdout(&first);
    assert!(text.starts_with("etaq-output v1\tscan\t"));
    assert!(text.contains("hit\t1^-1\t1\t+\t300"), "partition series is a period-1 hit");
    assert!(!text.contains("hit\t1^1\t"), "the pentagonal series is not periodic");
}

#[test]
fn scan_rejects_malformed_delta_range() {
    let out = etaq(&["scan", "--max-level", "1", "--delta", "oops", "--n-verify", "300"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_flag_is_accepted() {
    let out = etaq(&["expand", "--spec", "1^-1", "--n", "3", "--threads", "1"]);
    assert!(out.status.success());
}
