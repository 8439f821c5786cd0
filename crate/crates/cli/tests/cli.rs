//! Exit-code contract: 0 on success, 2 on verification failures, 1 on usage
//! errors.

use std::path::{Path, PathBuf};
use std::process::Command;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn out(tag: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(tag)
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cihom"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn non_regular_sequence_exits_two() {
    let cfg = configs().join("bad_sequence.toml");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out("bad").to_str().unwrap(),
        "gb",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("not a regular sequence"), "stderr: {err}");
}

#[test]
fn zero_module_exits_zero_with_empty_tables() {
    let dir = out("zero");
    let cfg = configs().join("zero_module.toml");
    let o = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "ext-table",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("ext_table.csv")).unwrap();
    for line in csv.lines().skip(2) {
        let mu = line.split(',').nth(2).unwrap();
        assert_eq!(mu, "0", "cell must be empty: {line}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let o = run(&["--config"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["gb"]);
    assert_eq!(o.status.code(), Some(1), "missing --config is a usage error");
    let o = run(&["--config", "/nonexistent.toml", "gb"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}
