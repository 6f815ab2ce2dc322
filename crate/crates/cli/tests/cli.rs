//! End-to-end runs of the `steen` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn steen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steen"))
        .args(args)
        .env_remove("STEEN_SMAX")
        .env_remove("STEEN_TMAX")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn show_prints_the_joker_table() {
    let o = steen(&["show", "joker"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("joker over A(1) (5 classes)"));
    assert!(text.contains("x0    Sq^1 -> x1, Sq^2 -> x2"));
}

#[test]
fn obstruction_exit_codes() {
    let o = steen(&["obstruction", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("conclusion: NonRealizable"));
    let o = steen(&["obstruction", "4", "--records"]);
    assert!(stdout(&o).contains("4 0 3 16 1 8 vanishes:alpha4"));
    let o = steen(&["obstruction", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n >= 4"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(steen(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(steen(&["show", "no-such-module"]).status.code(), Some(2));
    assert_eq!(steen(&["resolve", "joker", "--smax", "40"]).status.code(), Some(2));
}

#[test]
fn validate_reports_broken_files() {
    let bad = scratch("bad.module");
    std::fs::write(
        &bad,
        "module bad over A(1)\ngen x0 0\ngen x2 2\ngen x4 4\nsq 2 x0 = x2\nsq 2 x2 = x4\n",
    )
    .unwrap();
    let o = steen(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid"));

    let good = scratch("joker.module");
    std::fs::write(&good, stdout(&steen(&["dual", "joker"]))).unwrap();
    let o = steen(&["validate", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn charts_are_reproducible() {
    let a = scratch("a.svg");
    let b = scratch("b.svg");
    for path in [&a, &b] {
        let o = steen(&[
            "chart", "sphere", "--smax", "6", "--tmax", "16", "--format", "svg", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn flags_beat_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_steen"));
        c.args(["chart", "joker", "--tmax", "6"]);
        if let Some(f) = flag {
            c.args(["--smax", f]);
        }
        match env {
            Some(e) => c.env("STEEN_SMAX", e),
            None => c.env_remove("STEEN_SMAX"),
        };
        let text = stdout(&c.output().unwrap());
        text.lines().count() - 1
    };
    assert_eq!(run(Some("2"), None), 3);
    assert_eq!(run(Some("2"), Some("4")), 5);
}

#[test]
fn verify_suite_subset() {
    let o = steen(&["verify-suite", "paper", "--only", "C01", "--only", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("C01 PASS"));
    assert!(text.contains("C07 PASS"));
    assert!(text.ends_with("2/2 passed\n"));
}

#[test]
fn unstable_comparisons() {
    let o = steen(&["unstable", "bso3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degrees 2..6: isomorphic to joker0[2]"));
    let o = steen(&["unstable", "bsu3"]);
    assert!(stdout(&o).contains("degrees 4..12: isomorphic to joker(2)0[4]"));
}
