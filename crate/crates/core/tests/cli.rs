use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn sssp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sssp")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cycle_file(dir: &TempDir) -> std::path::PathBuf {
    let path = dir.path().join("cycle.gr");
    fs::write(&path, "p sp 6 5\na 0 1 10\na 1 2 10\na 2 3 10\na 3 4 10\na 4 0 10\n").unwrap();
    path
}

#[test]
fn gen_random_complete_graph() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("r.gr");
    let out = sssp(&["gen", "--topology", "random", "--n", "5", "--p", "1", "--seed", "1", "-o", path_str(&file)]);
    assert_eq!(stdout(&out).trim(), "n=5 m=20");
    assert!(fs::read_to_string(&file).unwrap().contains("p sp 5 20"));
}

#[test]
fn gen_planar_is_bounded_and_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.gr");
    let b = dir.path().join("b.gr");
    for file in [&a, &b] {
        let out = sssp(&["gen", "--topology", "planar", "--n", "1000", "--seed", "7", "-o", path_str(file)]);
        let line = stdout(&out);
        let m: usize = line.trim().rsplit('=').next().unwrap().parse().unwrap();
        assert!(m <= 6 * 1000 - 12, "{line}");
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn run_prints_cycle_paths() {
    let dir = TempDir::new().unwrap();
    let file = cycle_file(&dir);
    let text = stdout(&sssp(&["run", "--graph", path_str(&file), "--source", "0", "--variant", "fib", "--show-paths"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "Input graph has 6 vertices and 5 arcs");
    assert!(lines[1].starts_with("Dijkstra with Fibonacci heap took "));
    assert!(lines.contains(&"v-0 to v-0,\tlen = 0\tpath = []"));
    assert!(lines.contains(&"v-0 to v-4,\tlen = 40\tpath = [0,1,2,3,4]"));
    assert!(lines.contains(&"v-0 to v-5,\tlen = infinity. No path exists"));
}

#[test]
fn run_with_target_reports_one_path() {
    let dir = TempDir::new().unwrap();
    let file = cycle_file(&dir);
    for variant in ["basic", "tree", "heap", "fib"] {
        let text = stdout(&sssp(&["run", "--graph", path_str(&file), "--source", "1", "--variant", variant, "--target", "0"]));
        assert_eq!(text.lines().last().unwrap(), "v-1 to v-0,\tlen = 40\tpath = [1,2,3,4,0]");
    }
}

#[test]
fn invalid_flag_combinations_fail() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("x.gr");
    let out = sssp(&["gen", "--topology", "planar", "--n", "10", "--p", "0.5", "-o", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let out = sssp(&["gen", "--topology", "random", "--n", "10", "-o", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let out = sssp(&["run", "--graph", path_str(&file), "--source", "0", "--variant", "dial"]);
    assert!(!out.status.success());
}

#[test]
fn run_rejects_bad_source_and_missing_file() {
    let dir = TempDir::new().unwrap();
    let file = cycle_file(&dir);
    let out = sssp(&["run", "--graph", path_str(&file), "--source", "9", "--variant", "heap"]);
    assert_eq!(out.status.code(), Some(1));
    let out = sssp(&["run", "--graph", path_str(&dir.path().join("none.gr")), "--source", "0", "--variant", "heap"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_writes_one_row_per_rep_and_variant() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let out = sssp(&[
        "bench", "--topology", "planar", "--n-list", "1000", "--reps", "3", "--seed", "1", "--variants", "basic,heap",
        "-o", path_str(&csv),
    ]);
    let summary = stdout(&out);
    assert!(summary.contains("basic") && summary.contains("heap"), "{summary}");
    let records = sssp::bench::read_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(records.len(), 6);
    assert!(records.iter().all(|r| r.n == 1000 && r.elapsed_seconds >= 0.0));
}
