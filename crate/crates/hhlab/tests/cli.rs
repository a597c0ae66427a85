//! End-to-end checks of the command-line binary: output formats and exit
//! codes.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hhlab"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    (out.status.code().unwrap_or(-1), text)
}

#[test]
fn machine_format_has_schema_line() {
    let (code, text) = run(&[
        "koszul-check",
        "--family",
        "lambda_mn",
        "--m",
        "2",
        "--n",
        "2",
        "--field",
        "Q",
        "--q",
        "ones",
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0, "output:\n{text}");
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("schema: 1"));
    assert!(text.lines().any(|l| l == "status: pass"), "output:\n{text}");
}

#[test]
fn table_format_reports_overall() {
    let (code, text) = run(&[
        "center",
        "--family",
        "gamma_q",
        "--m",
        "2",
        "--field",
        "Q",
        "--q",
        "ones",
        "--max-length",
        "6",
    ]);
    assert_eq!(code, 0, "output:\n{text}");
    assert!(text.contains("overall: pass"), "output:\n{text}");
}

#[test]
fn bad_input_exits_with_two() {
    let (code, _) = run(&[
        "center",
        "--family",
        "lambda_q",
        "--m",
        "2",
        "--field",
        "Q",
        "--q",
        "ones",
    ]);
    assert_eq!(code, 2);
    let (code, _) = run(&[
        "hh-dims",
        "--family",
        "lambda_mn",
        "--m",
        "2",
        "--n",
        "3",
        "--field",
        "Q",
        "--q",
        "ones",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn resolution_check_passes_on_generic_square() {
    let (code, text) = run(&[
        "resolution-check",
        "--family",
        "lambda_mn",
        "--m",
        "2",
        "--n",
        "2",
        "--field",
        "Q(t)",
        "--q",
        "generic",
        "--max-length",
        "4",
        "--format",
        "machine",
    ]);
    assert_eq!(code, 0, "output:\n{text}");
    assert!(text.lines().any(|l| l == "status: pass"), "output:\n{text}");
}
