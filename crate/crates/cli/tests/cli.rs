use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn certify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_certify"))
        .args(args)
        .env_remove("CERTIFY_JOBS")
        .output()
        .expect("binary runs")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn run_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = certify(&[
        "run",
        "--stages",
        "0-3,8",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = json(&report);
    assert_eq!(r["verdict"], "pass");
    assert!(r["tool_version"].is_string());
    assert_eq!(r["golden_checksums"].as_object().unwrap().len(), 10);
    let stages = r["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 5);
    for s in stages {
        assert_eq!(s["status"], "pass");
        assert!(s["wall_ms"].is_u64());
        for a in s["assertions"].as_array().unwrap() {
            for key in ["name", "expected", "got", "pass"] {
                assert!(a.get(key).is_some(), "assertion lacks {key}");
            }
        }
    }
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let path = dir.path().join("f1_factors.json");
    let src = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, src.replace("\"17\"", "\"18\"")).unwrap();
    let bad = certify(&[
        "run",
        "--stages",
        "8",
        "--golden",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2), "checksum drift is a data error");

    let sums = dir.path().join("SHA256SUMS");
    let manifest = std::fs::read_to_string(&sums).unwrap();
    let digest = {
        use std::io::Write;
        let mut child = Command::new("sha256sum")
            .stdin(std::process::Stdio::piped())
            .stdout(std::process::Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(&std::fs::read(&path).unwrap())
            .unwrap();
        let out = child.wait_with_output().unwrap();
        String::from_utf8(out.stdout)
            .unwrap()
            .split_whitespace()
            .next()
            .unwrap()
            .to_string()
    };
    let manifest: String = manifest
        .lines()
        .map(|l| {
            if l.ends_with("  f1_factors.json") {
                format!("{digest}  f1_factors.json\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    std::fs::write(&sums, manifest).unwrap();
    let report = dir.path().join("r.json");
    let out = certify(&[
        "run",
        "--stages",
        "8",
        "--golden",
        dir.path().to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&report);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["stages"][0]["status"], "fail");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(certify(&["run", "--stages", "9"]).status.code(), Some(2));
    assert_eq!(
        certify(&["run", "--golden", "/nonexistent"]).status.code(),
        Some(2)
    );
    assert_eq!(
        certify(&["dump", "--object", "G", "--out", "/tmp/x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(certify(&["instance", "--p", "2"]).status.code(), Some(2));
    assert_eq!(certify(&["frobnicate"]).status.code(), Some(2));
    for (p, q) in [("2", "2"), ("4", "2"), ("0", "1"), ("x", "1")] {
        assert_eq!(
            certify(&["instance", "--p", p, "--q", q]).status.code(),
            Some(2),
            "({p}, {q})"
        );
    }
}

#[test]
fn instance_reports_zero_roots() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("i.json");
    let out = certify(&[
        "instance",
        "--p",
        "3",
        "--q",
        "5",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&report);
    assert_eq!(r["s0"], "9/25");
    assert_eq!(r["real_roots"], 0);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["statement"], "Q_{p,q} admits no quintic 5+5 splitting");
}

#[test]
fn dump_writes_canonical_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("F.json");
    let out = certify(&["dump", "--object", "F", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out_path), json(&golden_dir().join("F.json")));
}

#[test]
fn jobs_default_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_certify"))
        .args(["run", "--stages", "2"])
        .env("CERTIFY_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_certify"))
        .args(["run", "--stages", "0"])
        .env("CERTIFY_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
