use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forest-ef"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn forest-ef")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build_to(dir: &TempDir, graph: &Path, name: &str, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.path().join(name);
    let mut args = vec!["build", path_str(graph), "--out", path_str(&out)];
    args.extend_from_slice(extra);
    (run(&args), out)
}

#[test]
fn build_then_verify_k3() {
    let dir = TempDir::new().unwrap();
    let (b, ef) = build_to(&dir, &fixture("k3.txt"), "k3.ef", &["--c", "3"]);
    assert_eq!(code(&b), 0, "{}", String::from_utf8_lossy(&b.stderr));
    let text = std::fs::read_to_string(&ef).unwrap();
    assert!(text.starts_with("# seed="));
    let ledger = std::fs::read_to_string(format!("{}.ledger", ef.display())).unwrap();
    assert!(ledger.contains("within_bound true"));

    let v = run(&["verify", path_str(&fixture("k3.txt")), path_str(&ef)]);
    assert_eq!(code(&v), 0);
    let report = stdout(&v);
    assert!(report.lines().skip(1).all(|l| l.starts_with("PASS")), "{report}");
}

#[test]
fn tampered_system_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (_, ef) = build_to(&dir, &fixture("k3.txt"), "k3.ef", &["--c", "3"]);
    let text = std::fs::read_to_string(&ef).unwrap();
    let tampered = text.replace("INEQ 2/1 0:1/1 1:1/1 2:1/1", "INEQ 3/1 0:1/1 1:1/1 2:1/1");
    assert_ne!(tampered, text);
    std::fs::write(&ef, tampered).unwrap();
    let v = run(&["verify", path_str(&fixture("k3.txt")), path_str(&ef)]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn empty_and_single_vertex_graphs() {
    let dir = TempDir::new().unwrap();
    for (name, text) in [("empty.txt", "0 0\n"), ("k1.txt", "1 0\n")] {
        let g = dir.path().join(name);
        std::fs::write(&g, text).unwrap();
        let (b, ef) = build_to(&dir, &g, &format!("{name}.ef"), &[]);
        assert_eq!(code(&b), 0, "{name}: {}", String::from_utf8_lossy(&b.stderr));
        let v = run(&["verify", path_str(&g), path_str(&ef)]);
        assert_eq!(code(&v), 0, "{name}: {}", stdout(&v));
    }
}

#[test]
fn input_errors_exit_two() {
    let k3 = fixture("k3.txt");
    assert_eq!(code(&run(&["build", path_str(&k3), "--beta", "1"])), 2);
    assert_eq!(code(&run(&["build", "/nonexistent/graph.txt"])), 2);
    assert_eq!(code(&run(&["protocol", path_str(&k3), "--kind", "bogus"])), 2);

    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 1\n0 7\n").unwrap();
    assert_eq!(code(&run(&["build", path_str(&bad)])), 2);
}

#[test]
fn protocol_kinds_succeed() {
    let c = run(&["protocol", path_str(&fixture("k3.txt")), "--kind", "classical"]);
    assert_eq!(code(&c), 0);
    assert!(stdout(&c).contains("# protocol=classical"));

    let s = run(&["protocol", path_str(&fixture("path4.txt")), "--kind", "separator", "--sep-mode", "exact", "--c", "2", "--leaf", "2"]);
    assert_eq!(code(&s), 0, "{}", String::from_utf8_lossy(&s.stderr));

    let w = run(&["protocol", path_str(&fixture("grid3.rot")), "--kind", "williams"]);
    assert_eq!(code(&w), 0, "{}", String::from_utf8_lossy(&w.stderr));
    assert!(stdout(&w).contains("failures=0"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = fixture("grid3.txt");
    let (_, a) = build_to(&dir, &g, "a.ef", &["--seed", "7"]);
    let (_, b) = build_to(&dir, &g, "b.ef", &["--seed", "7"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let v1 = run(&["verify", path_str(&g), path_str(&a), "--trials", "20", "--seed", "3"]);
    let v2 = run(&["verify", path_str(&g), path_str(&a), "--trials", "20", "--seed", "3"]);
    assert_eq!(code(&v1), 0);
    assert_eq!(v1.stdout, v2.stdout);
}

#[test]
fn scale_table() {
    let s = run(&["scale", "--sizes", "1,2,3"]);
    assert_eq!(code(&s), 0, "{}", String::from_utf8_lossy(&s.stderr));
    let text = stdout(&s);
    let rows: Vec<_> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("k n size bound ratio within"));
    assert_eq!(rows.len(), 4);
    assert!(rows[1..].iter().all(|r| r.ends_with("true")), "{text}");
}
