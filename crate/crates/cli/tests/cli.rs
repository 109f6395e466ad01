use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const THETA: &str = "ccd v1\nwilson a b\nedge a b\n";
const WHEEL2: &str = "ccd v1\nwilson a b\nvertex u x p q\nvertex v y r s\nedge a x\nedge b y\nedge p s\nedge q r\n";
const CROSSED: &str = "ccd v1\nwilson a b c d\nedge a c\nedge b d\n";

fn jacobiws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobiws")).args(args).env_remove("JACOBIWS_CACHE").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = jacobiws(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jacobiws-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn enumerate_counts() {
    assert!(stdout(&["enumerate", "chord", "2"]).ends_with("count 2\n"));
    assert!(stdout(&["enumerate", "chord", "3"]).ends_with("count 5\n"));
    assert!(stdout(&["enumerate", "ccd", "0"]).ends_with("count 1\n"));
    let tsv = stdout(&["--format", "tsv", "enumerate", "chord", "4"]);
    assert_eq!(tsv.lines().count(), 19);
}

#[test]
fn enumerated_diagrams_parse_back() {
    let dir = scratch("roundtrip");
    let text = stdout(&["enumerate", "cc", "2", "--chordless"]);
    let blocks: Vec<&str> = text.split("\n\n").filter(|b| b.starts_with("# key")).collect();
    assert!(!blocks.is_empty());
    // the 2-wheel is one of the chordless characters of degree 2
    let wheel = write(&dir, "w.ccd", WHEEL2);
    let mut found = false;
    for b in &blocks {
        let f = write(&dir, "b.cc", b);
        if stdout(&["ws", "eval", "conway", "2", &f]).trim() == "-2" {
            found = true;
        }
    }
    assert!(found);
    assert_eq!(stdout(&["ws", "eval", "conway", "2", &wheel]), "-2\n");
}

#[test]
fn dimensions() {
    assert_eq!(stdout(&["--format", "tsv", "dim", "--max-degree", "4"]), "0\t1\n1\t1\n2\t2\n3\t3\n4\t6\n");
    assert_eq!(stdout(&["dim", "5"]), "dim A_5 = 10\n");
}

#[test]
fn weight_system_values() {
    let dir = scratch("ws");
    let (w2, crossed) = (write(&dir, "w2.ccd", WHEEL2), write(&dir, "x.ccd", CROSSED));
    assert_eq!(stdout(&["ws", "eval", "conway", "2", &w2]), "-2\n");
    assert_eq!(stdout(&["ws", "eval", "--name", "conway-bar", "--degree", "2", "--diagram", &w2]), "2\n");
    assert_eq!(stdout(&["ws", "eval", "knn-sl2", "2", &w2]), "2\n");
    assert_eq!(stdout(&["ws", "eval", "conway", "2", &crossed]), "1\n");
    assert_eq!(stdout(&["ws", "eval", "conway-bar", "2", &crossed]), "-1\n");
    let out = jacobiws(&["ws", "eval", "conway", "3", &w2]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lie_evaluation() {
    let dir = scratch("lie");
    let theta = write(&dir, "theta.ccd", THETA);
    assert_eq!(stdout(&["lie", "eval", "builtin:sl2", &theta, "--mode", "k-lambda"]), "1/2*λ^2 + λ\n");
    assert_eq!(stdout(&["lie", "eval", "builtin:sl2", &theta, "--mode", "k-lambda", "--lambda", "2"]), "4\n");
    assert_eq!(stdout(&["lie", "eval", "--algebra", "builtin:gl11", "--diagram", &theta]), "-2*G*H + H^2 + 2*Q+*Q- - H\n");
    let w2 = write(&dir, "w2.ccd", WHEEL2);
    assert_eq!(stdout(&["lie", "eval", "builtin:sl2", &w2, "--mode", "k-lambda"]), "2*λ^2 + 4*λ\n");
}

#[test]
fn algebra_files() {
    let dir = scratch("alg");
    let spec = stdout(&["lie", "validate", "builtin:osp12"]);
    assert!(spec.lines().all(|l| l.starts_with("PASS")));
    assert!(stdout(&["lie", "check-stu", "builtin:gl11", "--max-degree", "2"]).lines().all(|l| l.starts_with("PASS")));
    let literal = jacobiws::lie::gl11_literal().to_text();
    let f = write(&dir, "lit.alg", &literal);
    let out = jacobiws(&["lie", "validate", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL inverse"));
    assert_eq!(jacobiws(&["lie", "validate", "builtin:nope"]).status.code(), Some(2));
}

#[test]
fn reduce_and_deframe() {
    let dir = scratch("reduce");
    let w2 = write(&dir, "w2.ccd", WHEEL2);
    let theta = write(&dir, "theta.ccd", THETA);
    let reduced = stdout(&["reduce", "--diagram", &w2]);
    assert_eq!(reduced.matches('*').count(), 2);
    let deframed = stdout(&["deframe", "--degree", "2", "--diagram", &w2]);
    assert!(deframed.contains("kernel: 0\n"));
    assert!(deframed.contains(&format!("I^2_2: {}", reduced.trim())));
    assert!(stdout(&["deframe", "--diagram", &theta]).starts_with("phi: 0\n"));
}

#[test]
fn relations_dump() {
    let text = stdout(&["relations", "1"]);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# degree 1"));
    for l in lines {
        assert!(l.contains('*'), "{l}");
    }
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [("conway", "4"), ("mmr-sl2", "3"), ("gl11", "3"), ("deframing", "4"), ("hopf", "3")] {
        let out = stdout(&["verify", suite, "--max-degree", n]);
        assert!(out.lines().last().unwrap().starts_with("all "), "{suite}: {out}");
        assert!(!out.contains("FAIL"));
    }
    assert!(stdout(&["ws", "check-convolution", "--max-degree", "3"]).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn exit_codes() {
    let dir = scratch("bad");
    let bad = write(&dir, "bad.ccd", "ccd v1\nwilson a\n");
    assert_eq!(jacobiws(&["reduce", "--diagram", &bad]).status.code(), Some(2));
    let missing = dir.join("missing.ccd");
    assert_eq!(jacobiws(&["reduce", "--diagram", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(jacobiws(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(jacobiws(&["enumerate", "chord", "99"]).status.code(), Some(2));
    assert_eq!(jacobiws(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cache_is_written_and_reused() {
    let dir = scratch("cache");
    let cache = dir.join("c");
    let c = cache.to_str().unwrap();
    let first = stdout(&["--cache-dir", c, "dim", "--max-degree", "3"]);
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 4);
    for f in &files {
        assert!(std::fs::read_to_string(f).unwrap().starts_with("jacobiws-cache v1\n"));
    }
    assert_eq!(stdout(&["--cache-dir", c, "dim", "--max-degree", "3"]), first);
    let out = Command::new(env!("CARGO_BIN_EXE_jacobiws"))
        .args(["verify", "conway", "--max-degree", "3"])
        .env("JACOBIWS_CACHE", c)
        .output()
        .unwrap();
    assert!(out.status.success());
    // a corrupted file is rebuilt
    std::fs::write(&files[0], "garbage").unwrap();
    assert_eq!(stdout(&["--cache-dir", c, "dim", "--max-degree", "3"]), first);
    assert!(std::fs::read_to_string(&files[0]).unwrap().starts_with("jacobiws-cache v1\n"));
}

#[test]
fn reports_are_deterministic() {
    let a = stdout(&["--seed", "7", "verify", "gl11", "--max-degree", "2"]);
    let b = stdout(&["--seed", "7", "verify", "gl11", "--max-degree", "2"]);
    assert_eq!(a, b);
}
