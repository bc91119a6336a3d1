use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_richgeom"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shift_example_through_files() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("p.json");
    let gen = ok(&["gen", "shift", "--n", "40", "--k", "4", "-o", s(&pts)]);
    assert_eq!(gen["payload"]["claimed_lower_bound"], "80");
    let rep = ok(&["count", "translations", "-i", s(&pts), "--k", "4"]);
    assert!(rep["payload"]["nonzero"].as_u64().unwrap() >= 80);
    assert_eq!(rep["payload"]["count"], 195);
    assert_eq!(rep["inputs"][0]["path"], s(&pts));
    assert_eq!(rep["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn payloads_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let pts = write(
        &dir,
        "p.json",
        &json!({ "dim": 2, "points": [[0, 0], [1, 0], [0, 1], [1, 1], ["1/2", "1/2"]] }),
    );
    let a = ok(&["count", "affine2", "-i", s(&pts), "--k", "3"]);
    let b = ok(&[
        "count",
        "affine2",
        "-i",
        s(&pts),
        "--k",
        "3",
        "--threads",
        "1",
    ]);
    assert_eq!(a["payload"], b["payload"]);
    assert!(a["payload"]["count"].as_u64().unwrap() >= 8);
}

#[test]
fn arrangement_stats_on_three_lines() {
    let dir = TempDir::new().unwrap();
    let lines = write(
        &dir,
        "l.json",
        &json!([["1", "0", "0"], ["0", "1", "0"], ["1", "1", "-1"]]),
    );
    let rep = ok(&["arr", "stats", "--lines", s(&lines), "--rho", "3"]);
    assert_eq!(rep["payload"]["cells"], 7);
    assert_eq!(rep["payload"]["ball_max"], 7);
    let emo = ok(&["arr", "emo", "--lines", s(&lines)]);
    assert_eq!(emo["payload"]["holds"], true);
    let built = ok(&["arr", "build", "--lines", s(&lines)]);
    assert_eq!(built["payload"]["cell_count"], 7);
    assert_eq!(built["payload"]["simple"], true);
}

#[test]
fn folklore_example_keeps_nine_triples() {
    let dir = TempDir::new().unwrap();
    let mut triples: Vec<[usize; 3]> = (0..9).map(|j| [0, j, j]).collect();
    triples.push([1, 9, 9]);
    let delta = write(
        &dir,
        "d.json",
        &json!({ "sizes": [2, 10, 10], "triples": triples }),
    );
    let rep = ok(&["lemma", "folklore", "-i", s(&delta)]);
    assert_eq!(rep["payload"]["kept_triples"], 9);
    let again = write(&dir, "again.json", &rep["payload"]["system"]);
    assert_eq!(
        ok(&["lemma", "folklore", "-i", s(&again)])["payload"]["kept_triples"],
        9
    );
}

#[test]
fn grid_cutting_verifies_its_grid() {
    let dir = TempDir::new().unwrap();
    let (lines, pts) = (dir.path().join("l.json"), dir.path().join("p.json"));
    ok(&[
        "cut",
        "grid",
        "--rows",
        "3",
        "--cols",
        "4",
        "-o",
        s(&lines),
        "--points-out",
        s(&pts),
    ]);
    let rep = ok(&["cut", "verify", "-i", s(&pts), "--planes", s(&lines)]);
    assert_eq!(rep["payload"]["valid"], true);
    assert_eq!(rep["payload"]["planes"], 5);
    let greedy = ok(&["cut", "greedy", "-i", s(&pts), "--budget", "5"]);
    assert_eq!(greedy["payload"]["valid"], true);
    let tri = ok(&[
        "lemma",
        "triangles",
        "-i",
        s(&pts),
        "--lines",
        s(&lines),
        "--rho",
        "5",
    ]);
    assert_eq!(tri["payload"]["at_least_m_over_6"], true);
}

#[test]
fn average_forcing_on_the_grid_example() {
    let dir = TempDir::new().unwrap();
    let (pts, maps, lines) = (
        dir.path().join("p.json"),
        dir.path().join("m.json"),
        dir.path().join("l.json"),
    );
    ok(&[
        "gen",
        "grid-affine",
        "--n",
        "32",
        "--k",
        "4",
        "-o",
        s(&pts),
        "--maps-out",
        s(&maps),
    ]);
    ok(&[
        "cut",
        "grid",
        "--rows",
        "16",
        "--cols",
        "2",
        "-o",
        s(&lines),
    ]);
    let rep = ok(&[
        "lemma",
        "avg-force",
        "-i",
        s(&pts),
        "--maps",
        s(&maps),
        "--h1",
        s(&lines),
        "--rho",
        "16",
        "--c",
        "1/8",
        "--C",
        "3",
    ]);
    assert_eq!(rep["payload"]["all_hold"], true);
    assert_eq!(rep["payload"]["steps"].as_array().unwrap().len(), 5);
    // Too small a cutting constant violates |H| <= C sqrt(N).
    let args = [
        "lemma",
        "avg-force",
        "-i",
        s(&pts),
        "--maps",
        s(&maps),
        "--h1",
        s(&lines),
        "--rho",
        "16",
        "--c",
        "1/8",
        "--C",
        "1",
    ];
    assert_eq!(code(&args), 2);
}

#[test]
fn one_dimensional_censuses() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("s.json");
    let sidon = ok(&["gen", "sidon", "--t", "4", "-o", s(&pts)]);
    assert_eq!(sidon["payload"]["set"], json!([1, 2, 4, 8]));
    let line = write(
        &dir,
        "l.json",
        &json!({ "dim": 1, "points": [1, 2, 3, 4, 5] }),
    );
    let aff = ok(&["count", "affine1", "-i", s(&line), "--k", "5"]);
    assert_eq!(aff["payload"]["count"], 2);
    let mob = ok(&["count", "mobius", "-i", s(&line), "--k", "5"]);
    assert_eq!(mob["payload"]["count"], 2);
    let rat = ok(&["count", "rational", "-i", s(&line), "--k", "5", "--r", "2"]);
    assert!(rat["payload"]["count"].as_u64().unwrap() >= 2);
}

#[test]
fn planar_censuses() {
    let dir = TempDir::new().unwrap();
    let square = write(
        &dir,
        "q.json",
        &json!({ "dim": 2, "points": [[0, 0], [1, 0], [0, 1], [1, 1]] }),
    );
    assert_eq!(
        ok(&["count", "isometries", "-i", s(&square), "--k", "4"])["payload"]["count"],
        8
    );
    let grid: Vec<[i64; 2]> = (0..3).flat_map(|x| (0..3).map(move |y| [x, y])).collect();
    let g = write(&dir, "g.json", &json!({ "dim": 2, "points": grid }));
    let lines = ok(&["count", "rich-lines", "-i", s(&g), "--k", "3"]);
    assert_eq!(lines["payload"]["count"], 8);
    assert_eq!(lines["payload"]["largest_collinear"], 3);
}

#[test]
fn experiment_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("exp.csv");
    let status = run(&[
        "exp",
        "main-theorem",
        "--family",
        "grid",
        "--sizes",
        "9,16",
        "--c",
        "1/3",
        "--format",
        "csv",
        "-o",
        s(&out),
    ]);
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# command: "));
    assert!(text.contains("family,n,k,census,lambda,cutting_lines,constant_pow,proper\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("grid,")).count(), 2);
}

#[test]
fn noncollinear_example_round_trips() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("p.json");
    let gen = ok(&["gen", "noncollinear", "--n", "4", "-o", s(&pts)]);
    assert_eq!(gen["payload"]["family_size"], 12);
    let rep = ok(&["count", "affine2", "-i", s(&pts), "--k", "5"]);
    assert!(rep["payload"]["count"].as_u64().unwrap() >= 12);
    let again = dir.path().join("q.json");
    ok(&["gen", "noncollinear", "--n", "4", "-o", s(&again)]);
    assert_eq!(std::fs::read(&pts).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn guards_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let pts: Vec<[i64; 2]> = (0..30).map(|i| [i, i * i]).collect();
    let big = write(&dir, "big.json", &json!({ "dim": 2, "points": pts }));
    assert_eq!(code(&["count", "affine2", "-i", s(&big), "--k", "3"]), 2);
    let line = write(
        &dir,
        "l.json",
        &json!({ "dim": 1, "points": [1, 2, 3, 4, 5, 6] }),
    );
    assert_eq!(
        code(&["count", "rational", "-i", s(&line), "--k", "6", "--r", "5"]),
        2
    );
    assert_eq!(code(&["gen", "shift", "--n", "4", "--k", "4"]), 2);
}

#[test]
fn usage_and_parse_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["count", "translations", "--k", "2"]), 1);
    assert_eq!(
        code(&[
            "count",
            "translations",
            "-i",
            "/nonexistent.json",
            "--k",
            "2"
        ]),
        1
    );
    let bad = write(
        &dir,
        "bad.json",
        &json!({ "dim": 2, "points": [["1/0", 1]] }),
    );
    assert_eq!(
        code(&["count", "translations", "-i", s(&bad), "--k", "1"]),
        1
    );
    let line = write(&dir, "l.json", &json!({ "dim": 1, "points": [1, 2] }));
    assert_eq!(code(&["count", "affine2", "-i", s(&line), "--k", "3"]), 1);
}

#[test]
fn duplicates_need_the_flag() {
    let dir = TempDir::new().unwrap();
    let dup = write(
        &dir,
        "d.json",
        &json!({ "dim": 2, "points": [[0, 0], [0, 0], [1, 2]] }),
    );
    assert_eq!(
        code(&["count", "translations", "-i", s(&dup), "--k", "1"]),
        1
    );
    let rep = ok(&[
        "count",
        "translations",
        "-i",
        s(&dup),
        "--k",
        "1",
        "--allow-duplicates",
    ]);
    assert_eq!(rep["payload"]["duplicates_removed"], 1);
    assert_eq!(rep["payload"]["count"], 3);
}
