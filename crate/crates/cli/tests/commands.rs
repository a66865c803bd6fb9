use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cellbound(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellbound"))
        .args(args)
        .current_dir(dir)
        .env_remove("CELLBOUND_NODE_LIMIT")
        .env_remove("CELLBOUND_SEARCH_CEILING")
        .output()
        .expect("run cellbound")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct(dir: &Path, n: &str, what: &str) -> String {
    let out = format!("{what}{n}");
    let o = cellbound(dir, &["construct", "-n", n, "--what", what, "--out", &out]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

#[test]
fn construct_outputs() {
    let dir = TempDir::new().unwrap();
    let o = cellbound(dir.path(), &["construct", "-n", "4", "--what", "f"]);
    assert_eq!(
        stdout(&o),
        "vars 3\ncell 000 2\ncell 001 -1\ncell 010 -1\ncell 100 -1\ncell 111 1\n"
    );
    let o = cellbound(dir.path(), &["construct", "-n", "4", "--what", "gamma"]);
    assert_eq!(stdout(&o), "vars 3\nfacet 1\nfacet 2\nfacet 3\n");
    let o = cellbound(dir.path(), &["construct", "-n", "10", "--what", "u"]);
    assert!(stdout(&o).lines().any(|l| l == "cell 0000000000 127"));
    let o = cellbound(dir.path(), &["construct", "-n", "4", "--what", "v"]);
    assert!(!stdout(&o).contains("cell 0000 "));
    assert!(stdout(&o).contains("/2\n"));
}

#[test]
fn lp_and_ip_on_delta4() {
    let dir = TempDir::new().unwrap();
    let d = construct(dir.path(), "4", "delta");
    let b = construct(dir.path(), "4", "b");
    let o = cellbound(
        dir.path(),
        &["lp", &d, &b, "--cell", "0000", "--emit-primal", "primal"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status optimal\nvalue 0\n"));
    assert!(dir.path().join("primal").exists());

    let o = cellbound(dir.path(), &["ip", &d, &b, "--cell", "0000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("status optimal\nvalue 1\nproof complete\n"));

    let u = construct(dir.path(), "4", "u");
    let o = cellbound(
        dir.path(),
        &[
            "ip",
            &d,
            &b,
            "--cell",
            "0000",
            "--warm-start",
            &u,
            "--sense",
            "max",
        ],
    );
    assert!(stdout(&o).starts_with("status optimal\nvalue 1\n"));

    let o = cellbound(
        dir.path(),
        &["ip", &d, &b, "--cell", "0000", "--method", "enumerate"],
    );
    assert!(stdout(&o).starts_with("status optimal\nvalue 1\n"));
}

#[test]
fn infeasible_margins_exit_2() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("m"), "vars 2\nfacet 1\nfacet 2\n").unwrap();
    std::fs::write(
        dir.path().join("b"),
        "vars 2\nmargin 1 0 1\nmargin 1 1 1\nmargin 2 0 3\nmargin 2 1 0\n",
    )
    .unwrap();
    for cmd in ["lp", "ip"] {
        let o = cellbound(dir.path(), &[cmd, "m", "b", "--cell", "00"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
        assert!(stdout(&o).starts_with("status infeasible\n"));
    }
}

#[test]
fn invalid_input_exit_4() {
    let dir = TempDir::new().unwrap();
    let d = construct(dir.path(), "4", "delta");
    let b = construct(dir.path(), "4", "b");
    let cases: [&[&str]; 6] = [
        &["lp", &d, &b, "--cell", "000"],
        &["lp", &d, "missing", "--cell", "0000"],
        &["lp", &b, &d, "--cell", "0000"],
        &["gap", "-n", "3"],
        &["construct", "-n", "4", "--what", "w"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = cellbound(dir.path(), args);
        assert_eq!(o.status.code(), Some(4), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(cellbound(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn check_verdicts() {
    let dir = TempDir::new().unwrap();
    let g = construct(dir.path(), "4", "gamma");
    let f = construct(dir.path(), "4", "f");
    let o = cellbound(dir.path(), &["check", "--what", "kernel", &g, &f]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(0), "kernel true\n")
    );
    let o = cellbound(dir.path(), &["check", "--what", "primitive", &g, &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "primitive true\ncandidates_checked 46\n");

    std::fs::write(
        dir.path().join("f2"),
        "vars 3\ncell 000 4\ncell 001 -2\ncell 010 -2\ncell 100 -2\ncell 111 2\n",
    )
    .unwrap();
    let o = cellbound(
        dir.path(),
        &[
            "check",
            "--what",
            "primitive",
            &g,
            "f2",
            "--counterexample",
            "cx",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("counterexample cx\n"));
    let cx = std::fs::read_to_string(dir.path().join("cx")).unwrap();
    assert_eq!(cx, std::fs::read_to_string(dir.path().join(&f)).unwrap());

    std::fs::write(dir.path().join("one"), "vars 3\ncell 000 1\n").unwrap();
    let o = cellbound(dir.path(), &["check", "--what", "kernel", &g, "one"]);
    assert_eq!(
        (o.status.code(), stdout(&o).as_str()),
        (Some(1), "kernel false\n")
    );
    let o = cellbound(dir.path(), &["check", "--what", "primitive", &g, "one"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn limits_exit_5_and_flags_beat_env() {
    let dir = TempDir::new().unwrap();
    let o = cellbound(dir.path(), &["gap", "-n", "5", "--node-limit", "1"]);
    assert_eq!(o.status.code(), Some(5));
    let report = stdout(&o);
    assert!(report.contains("ip_value unproven\nip_proof limit-hit\n"));
    assert!(report.contains("gap >= 3\n"));

    let o = Command::new(env!("CARGO_BIN_EXE_cellbound"))
        .args(["gap", "-n", "5", "--node-limit", "1000"])
        .env("CELLBOUND_NODE_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));

    let g = construct(dir.path(), "4", "gamma");
    let f = construct(dir.path(), "4", "f");
    let o = Command::new(env!("CARGO_BIN_EXE_cellbound"))
        .args(["check", "--what", "primitive", &g, &f])
        .current_dir(dir.path())
        .env("CELLBOUND_SEARCH_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn gap_reports() {
    let dir = TempDir::new().unwrap();
    let o = cellbound(dir.path(), &["gap", "-n", "6", "--ip-mode", "bb"]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("theorem_bound 7\nmeasured_gap 7\n"));
    assert!(report
        .lines()
        .filter(|l| l.starts_with("check "))
        .all(|l| l.ends_with(" pass")));

    let o = cellbound(dir.path(), &["gap", "-n", "4", "--ip-mode", "enumerate"]);
    assert!(stdout(&o).contains("measured_gap 1\n"));
}
