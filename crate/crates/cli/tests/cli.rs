//! End-to-end runs of the `dfan` binary over the problem corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dfan_cli::parse_problem;
use serde_json::Value;

fn problems() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("problems")
}

fn dfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfan"))
        .args(args)
        .current_dir(problems())
        .output()
        .expect("binary runs")
}

fn corpus() -> Vec<(i32, Vec<String>)> {
    std::fs::read_to_string(problems().join("corpus.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut w = l.split_whitespace();
            let code = w.next().unwrap().parse().unwrap();
            (code, w.map(String::from).collect())
        })
        .collect()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_exit_codes() {
    for (code, args) in corpus() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = dfan(&args);
        assert_eq!(out.status.code(), Some(code), "dfan {}", args.join(" "));
        if code == 3 {
            assert!(out.stdout.is_empty());
            assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
        }
    }
}

#[test]
fn text_reports_have_header_and_status() {
    for (code, args) in corpus() {
        if code == 3 || args.iter().any(|a| a == "--json") {
            continue;
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = String::from_utf8(dfan(&args).stdout).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], format!("# dfan {}", args[0]));
        assert!(lines[1].starts_with("# input: "));
        assert!(lines[2].starts_with("# ring: "));
        assert!(lines[3].starts_with("# bounds: "));
        let status = ["ok", "negative", "inconclusive"][code as usize];
        assert_eq!(*lines.last().unwrap(), format!("status: {status}"));
    }
}

#[test]
fn json_reports_match_schema() {
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let mut checked = 0;
    for (code, mut args) in corpus() {
        if code == 3 {
            continue;
        }
        if !args.iter().any(|a| a == "--json") {
            args.push("--json".into());
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = dfan(&args);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        let errors: Vec<String> = validator
            .iter_errors(&report)
            .map(|e| e.to_string())
            .collect();
        assert!(errors.is_empty(), "dfan {}: {errors:?}", args.join(" "));
        assert_eq!(report["exit_code"], Value::from(code));
        assert_eq!(report["command"], Value::from(args[0]));
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn problem_files_round_trip() {
    for entry in std::fs::read_dir(problems()).unwrap() {
        let path = entry.unwrap().path();
        if path.file_name().unwrap() == "corpus.txt" {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_problem(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = parse_problem(&parsed.to_string()).unwrap();
        assert_eq!(parsed, again, "{}", path.display());
    }
}

#[test]
fn usage_errors() {
    assert_eq!(dfan(&[]).status.code(), Some(3));
    assert_eq!(dfan(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        dfan(&["gb", "--input", "euler.txt", "--bogus"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        dfan(&["gb", "--input", "euler.txt", "--weight", "[1,-1]"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        dfan(&["gb", "--input", "euler.txt", "--weight", "[1]"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(dfan(&["--help"]).status.code(), Some(0));
    assert_eq!(dfan(&["--version"]).status.code(), Some(0));
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("dfan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "ring n=2 k=2 r=1\ngen: x1 d1 +\n").unwrap();
    let out = dfan(&["gb", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn expectations_flip_exit_codes() {
    let run = |e: &str| {
        dfan(&["fan", "--input", "three_cones.txt", "--expect", e])
            .status
            .code()
    };
    assert_eq!(run("3"), Some(0));
    assert_eq!(run("4"), Some(1));
    let run = |e: &str| {
        dfan(&["divide", "--input", "euler.txt", "--expect", e])
            .status
            .code()
    };
    assert_eq!(run("member"), Some(0));
    assert_eq!(run("nonmember"), Some(1));
}
