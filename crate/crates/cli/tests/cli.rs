use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn mopdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mopdim"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn generated(dir: &TempDir, family: &str, n: usize) -> PathBuf {
    let p = dir.path().join(format!("{family}-{n}.txt"));
    let o = mopdim(&[
        "gen",
        family,
        &n.to_string(),
        "--seed",
        "42",
        "--out",
        s(&p),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "tri.txt", "3\n");
    assert_eq!(mopdim(&["validate", s(&ok)]).status.code(), Some(0));

    let crossing = write(&dir, "cross.txt", "5\n1 3\n2 4\n");
    let o = mopdim(&["validate", s(&crossing)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(1, 3) and (2, 4)"), "{}", stderr(&o));

    let short = write(&dir, "short.txt", "4\n");
    let o = mopdim(&["validate", s(&short)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected 1 diagonals"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(mopdim(&["validate", s(&missing)]).status.code(), Some(2));
}

#[test]
fn dim2_answers() {
    let dir = TempDir::new().unwrap();
    let f7 = generated(&dir, "fan", 7);
    let o = mopdim(&["dim2", "--cross-check", s(&f7)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NO");

    let z9 = generated(&dir, "zigzag", 9);
    let o = mopdim(&["dim2", "--cross-check", s(&z9)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("YES {"));

    let f5 = generated(&dir, "fan", 5);
    assert_eq!(mopdim(&["dim2", s(&f5)]).status.code(), Some(0));
}

#[test]
fn resolve_reports() {
    let dir = TempDir::new().unwrap();
    let f15 = generated(&dir, "fan", 15);
    let o = mopdim(&["resolve", s(&f15)]);
    assert!(o.status.success());
    assert!(
        stdout(&o).starts_with("size 6 (verified)"),
        "{}",
        stdout(&o)
    );

    let tri = write(&dir, "tri.txt", "3\n");
    assert!(stdout(&mopdim(&["resolve", s(&tri)])).starts_with("size 2"));

    let big = generated(&dir, "random", 1000);
    let o = mopdim(&["--json", "resolve", s(&big)]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["answer"], 400);
    assert_eq!(v["operation"], "resolve");
    assert!(v["micros"].is_u64());

    let o = mopdim(&["resolve", "--no-verify", s(&big)]);
    assert!(stdout(&o).contains("unverified"));
}

#[test]
fn beta_and_guard() {
    let dir = TempDir::new().unwrap();
    let f7 = generated(&dir, "fan", 7);
    assert!(stdout(&mopdim(&["beta", s(&f7)])).starts_with("beta 3"));
    let big = generated(&dir, "fan", 17);
    let o = mopdim(&["beta", s(&big)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("limit 16"));
}

#[test]
fn embed_outputs() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", "3\n");
    let o = mopdim(&["embed", "--format", "coords", s(&tri)]);
    assert_eq!(
        stdout(&o).lines().skip(1).collect::<Vec<_>>(),
        ["1 0 1", "2 1 0", "3 1 1"]
    );

    let z7 = generated(&dir, "zigzag", 7);
    let o = mopdim(&["embed", s(&z7)]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graph mop {"));

    let f7 = generated(&dir, "fan", 7);
    let o = mopdim(&["embed", s(&f7)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NO_DIM2_BASIS"));
}

#[test]
fn edge_list_mode_reports_input_labels() {
    let dir = TempDir::new().unwrap();
    // Fan of order 5 with centre 30 on scrambled labels.
    let p = write(
        &dir,
        "edges.txt",
        "5\n10 20\n20 30\n30 40\n40 50\n50 10\n30 10\n30 50\n",
    );
    let o = mopdim(&["--json", "dim2", "--edges", s(&p)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let w: Vec<u64> = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(w.len(), 2);
    assert!(w.iter().all(|x| [10, 20, 30, 40, 50].contains(x)));
}

#[test]
fn enumerate_and_batch() {
    let dir = TempDir::new().unwrap();
    let stream = dir.path().join("all7.txt");
    assert!(mopdim(&["gen", "enumerate", "7", "--out", s(&stream)])
        .status
        .success());
    let split = dir.path().join("split");
    assert!(
        mopdim(&["gen", "enumerate", "6", "--out", s(&split), "--split"])
            .status
            .success()
    );
    assert_eq!(fs::read_dir(&split).unwrap().count(), 14);

    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_mopdim"))
            .args(["batch", s(&stream), "dim2"])
            .env("MOPDIM_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v["micros"] = 0.into();
                v
            })
            .collect::<Vec<_>>()
    };
    let one = run("1");
    assert_eq!(one.len(), 42);
    assert_eq!(one.iter().filter(|v| v["answer"] == true).count(), 35);
    assert_eq!(one, run("4"));
}

#[test]
fn generated_files_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = generated(&dir, "random", 50);
    let first = fs::read_to_string(&a).unwrap();
    let b = generated(&dir, "random", 50);
    assert_eq!(first, fs::read_to_string(&b).unwrap());
}
