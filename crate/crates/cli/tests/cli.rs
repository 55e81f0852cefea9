use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const YOCCOZ: &str = "-inf b2 a2 b1 a1 c1 0 c2 inf\ninf b1 a2 b2 a1 c2 0 c1 -inf\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn rauzy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rauzy")).args(args).output().unwrap()
}

fn run_on(args: &[&str], path: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    rauzy(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn info_reports_stratum_and_special_orbit() {
    let fx = Fixture::new();
    let o = run_on(&["info"], &fx.file("y.txt", YOCCOZ));
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "H(1 | 1^3), genus 3, special orbit {-inf, inf, 0}");

    let o = run_on(&["info"], &fx.file("t.txt", "A B\nB A\n"));
    assert!(stdout(&o).starts_with("H(0), genus 1"));
}

#[test]
fn info_json_lists_orbits() {
    let fx = Fixture::new();
    let o = run_on(&["info", "--format", "json"], &fx.file("y.txt", YOCCOZ));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["genus"], 3);
    assert_eq!(doc["orbits"].as_array().unwrap().len(), 4);
    assert_eq!(doc["minus_inf"], "-inf");
}

#[test]
fn input_errors_map_to_exit_codes() {
    let fx = Fixture::new();
    assert_eq!(code(&run_on(&["info"], &fx.file("r.txt", "A B C\nA C B\n"))), 3);
    assert_eq!(code(&run_on(&["info"], &fx.file("p.txt", "A B C\nA B\n"))), 2);
    assert_eq!(code(&run_on(&["info"], &fx.file("q.txt", "A B\nB C\n"))), 2);
    assert_eq!(code(&rauzy(&["info", "/nonexistent/file"])), 2);
    let o = run_on(&["class", "--max-vertices", "10"], &fx.file("y.txt", YOCCOZ));
    assert_eq!(code(&o), 4);
    assert!(!o.stderr.is_empty());
}

#[test]
fn class_exports() {
    let fx = Fixture::new();
    let torus = fx.file("t.txt", "A B\nB A\n");
    let o = run_on(&["class", "--format", "dot", "--quiet"], &torus);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("label=\"t\"").count(), 1);
    assert!(o.stderr.is_empty());

    let three = fx.file("3.txt", "A B C\nC B A\n");
    let text = stdout(&run_on(&["class"], &three));
    let count: usize = text.lines().next().unwrap().strip_prefix("vertices: ").unwrap().parse().unwrap();
    let json = run_on(&["class", "--format", "json"], &three);
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), count);
    assert_eq!(doc["t_succ"].as_array().unwrap().len(), count);
    assert!(String::from_utf8_lossy(&json.stderr).contains(&format!("vertices: {count}")));
}

#[test]
fn output_is_reproducible() {
    let fx = Fixture::new();
    let path = fx.file("y.txt", YOCCOZ);
    for args in [&["class", "--format", "json", "--quiet"][..], &["aut"], &["verify", "--format", "json"]] {
        let a = run_on(args, &path);
        let b = run_on(args, &path);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_yoccoz() {
    let fx = Fixture::new();
    let o = run_on(&["verify", "--format", "json"], &fx.file("y.txt", YOCCOZ));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["g_prime_order"], 48);
    assert_eq!(doc["aut_order"], 24);
    assert_eq!(doc["epsilon"], 0.5);
    assert_eq!(doc["kernel_equals_aut"], true);
    assert_eq!(doc["vertices"], 30120);
}

#[test]
fn verify_rotation_and_hyperelliptic() {
    let fx = Fixture::new();
    let o = run_on(&["verify", "--format", "json"], &fx.file("r5.txt", "A B C D E\nB C D E A\n"));
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["aut_order"], 6);
    assert_eq!(doc["g_prime_order"], 6);

    let o = run_on(&["verify"], &fx.file("h4.txt", "A B C D\nD C B A\n"));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("hyperelliptic: theorem out of scope"));
}

#[test]
fn aut_lists_group() {
    let fx = Fixture::new();
    let o = run_on(&["aut", "--format", "json"], &fx.file("r4.txt", "A B C D\nB C D A\n"));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["aut_order"], 2);
    assert!(doc["elements"].as_array().unwrap().iter().all(|e| e["phi"] == 1));
}

#[test]
fn membership() {
    let fx = Fixture::new();
    let root = fx.file("3.txt", "A B C\nC B A\n");
    let inside = fx.file("in.txt", "A B C\nC A B\n");
    let outside = fx.file("out.txt", "B A C\nC B A\n");
    let o = rauzy(&["member", root.to_str().unwrap(), inside.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "member");
    let o = rauzy(&["member", root.to_str().unwrap(), outside.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "not a member");
}
