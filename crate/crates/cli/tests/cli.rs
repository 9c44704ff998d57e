use std::path::{Path, PathBuf};
use std::process::Command;

use expansio::io::parse_problem;
use expansio::ExpandedRing;
use serde_json::Value;
use tempfile::TempDir;

const WORKED: &str = "ring: x1 x2 x3\nideal: x1*x2, x3^2\ntuple: 1 3 2\n";

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_expansio"));
    cmd.args(args).env_remove("EXPANSIO_MAX_DEGREE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ideal_line(out: &str) -> &str {
    out.lines().find_map(|l| l.strip_prefix("ideal: ")).unwrap_or("")
}

fn json(out: &str) -> Value {
    serde_json::from_str(out.trim()).unwrap()
}

#[test]
fn expand_worked_example() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["expand", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(ideal_line(&r.stdout), "x1_1*x2_1, x1_1*x2_2, x1_1*x2_3, x3_1^2, x3_1*x3_2, x3_2^2");
}

#[test]
fn expand_output_round_trips() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["expand", s(&f)]);
    let reparsed = parse_problem(&r.stdout).unwrap();
    let p = parse_problem(WORKED).unwrap();
    let ring = ExpandedRing::new(p.ring.clone(), p.tuple.unwrap()).unwrap();
    assert_eq!(reparsed.ideal, ring.expand_ideal(&p.ideal).unwrap());
}

#[test]
fn expand_tuple_override() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["expand", s(&f), "--tuple", "1 1 1"]);
    assert_eq!(ideal_line(&r.stdout), "x1_1*x2_1, x3_1^2");
    let sq = file(&d, "sq.txt", "ring: x1\nideal: x1^2\n");
    let r = run(&["expand", s(&sq), "--tuple", "2"]);
    assert_eq!(ideal_line(&r.stdout), "x1_1^2, x1_1*x1_2, x1_2^2");
}

#[test]
fn betti_modes_agree_on_worked_example() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["--json", "betti", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["betti"], serde_json::json!([6, 14, 16, 9, 2]));
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["projdim"], 4);
    assert_eq!(v["regularity"], 3);
    assert_eq!(v["tables"].as_object().unwrap().len(), 3);
}

#[test]
fn betti_of_ideal_koszul() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "k.txt", "ring: x1 x2 x3\nideal: x1, x2, x3\n");
    let r = run(&["--json", "betti", "--of", "ideal", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json(&r.stdout)["betti"], serde_json::json!([3, 3, 1]));
}

#[test]
fn betti_prime_power() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "p.txt", "ring: x1\nideal: x1^2\ntuple: 3\n");
    let r = run(&["--json", "betti", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json(&r.stdout)["betti"], serde_json::json!([6, 8, 3]));
}

#[test]
fn betti_needs_a_tuple() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "k.txt", "ring: x1 x2\nideal: x1*x2\n");
    let r = run(&["betti", s(&f)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("tuple"));
}

#[test]
fn betti_disagreement_exits_with_diff() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["--inject-fault", "formula-off-by-one", "betti", s(&f)]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("beta_0,2: 7 vs 6"), "{}", r.stderr);
}

#[test]
fn oracle_cap_exit_code() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["--cap", "3", "betti", "--via", "oracle", s(&f)]);
    assert_eq!(r.code, 4, "{}", r.stderr);
}

#[test]
fn parse_error_exit_code() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "bad.txt", "ring: x1 x2\nideal: x1*y\n");
    let r = run(&["expand", s(&f), "--tuple", "1 1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn field_char_restricted_to_zero() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    assert_eq!(run(&["--field-char", "0", "expand", s(&f)]).code, 0);
    assert_eq!(run(&["--field-char", "3", "expand", s(&f)]).code, 2);
}

#[test]
fn decompose_and_ass() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "e.txt", "ring: x1 x2\nideal: x1^2, x1*x2\n");
    let r = run(&["decompose", s(&f)]);
    assert_eq!(r.stdout, "(x1)  radical (x1)\n(x2, x1^2)  radical (x1, x2)\n");
    let r = run(&["ass", s(&f)]);
    assert_eq!(r.stdout, "(x1) minimal\n(x1, x2) embedded\n");
    let r = run(&["--json", "ass", s(&f), "--expansion", "--tuple", "2 1"]);
    let primes = json(&r.stdout)["primes"].clone();
    assert_eq!(primes[0]["prime"], serde_json::json!(["x1_1", "x1_2"]));
    assert_eq!(primes[1]["prime"], serde_json::json!(["x1_1", "x1_2", "x2_1"]));
}

#[test]
fn radical_colon_intersect() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let x3 = file(&d, "x3.txt", "ring: x1 x2 x3\nideal: x3\n");
    assert_eq!(ideal_line(&run(&["radical", s(&f)]).stdout), "x3, x1*x2");
    assert_eq!(ideal_line(&run(&["colon", s(&f), s(&x3)]).stdout), "x3, x1*x2");
    let a = file(&d, "a.txt", "ring: x1 x2 x3\nideal: x1*x2\n");
    let b = file(&d, "b.txt", "ring: x1 x2 x3\nideal: x1*x3\n");
    assert_eq!(ideal_line(&run(&["intersect", s(&a), s(&b)]).stdout), "x1*x2*x3");
    let other = file(&d, "o.txt", "ring: y1 y2 y3\nideal: y1\n");
    assert_eq!(run(&["intersect", s(&a), s(&other)]).code, 2);
}

#[test]
fn symbolic_square_of_triangle() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "t.txt", "ring: x1 x2 x3\nideal: x1*x2, x1*x3, x2*x3\n");
    let r = run(&["symbolic-power", "2", s(&f)]);
    assert!(ideal_line(&r.stdout).split(", ").any(|g| g == "x1*x2*x3"), "{}", r.stdout);
}

#[test]
fn linquot_orders() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "p.txt", "ring: x1 x2\nideal: x1^2, x1*x2, x2^2\ntuple: 2 1\n");
    let r = run(&["--json", "linquot", "--expansion", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let steps = json(&r.stdout)["linear_quotients"].as_array().unwrap().clone();
    assert_eq!(steps.len(), 6);
    assert_eq!(steps[0]["set"], serde_json::json!([]));
    let none = file(&d, "w.txt", WORKED);
    assert_eq!(run(&["linquot", s(&none)]).stdout, "none\n");
}

#[test]
fn resolve_emits() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["resolve", "--expansion", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("ranks: 6 14 16 9 2\n"));
    let r = run(&["resolve", "--expansion", "--emit", "json", s(&f)]);
    let v = json(&r.stdout);
    assert_eq!(v["modules"].as_array().unwrap().len(), 5);
    let r = run(&["resolve", "--expansion", "--emit", "dot", s(&f)]);
    assert!(r.stdout.starts_with("digraph"));
    let r = run(&["resolve", s(&f)]);
    assert!(r.stdout.starts_with("ranks: 2 1\n"));
}

#[test]
fn resolve_with_broken_horizontal_map_fails() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run(&["--inject-fault", "horizontal-sign", "resolve", "--expansion", s(&f)]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn verify_seeded_run() {
    let r = run(&["verify", "--random", "11", "50", "--suite", "lemma11,decomp"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.starts_with("seed 11; 50 instances"));
    let lines: Vec<&str> = r.stdout.lines().filter(|l| l.starts_with("instance ")).collect();
    assert_eq!(lines.len(), 50);
    assert!(lines[49].starts_with("instance 49: pass"));
}

#[test]
fn verify_all_ones_file() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "o.txt", "ring: x1 x2 x3\nideal: x1*x2, x2*x3^2\n");
    let r = run(&["verify", s(&f), "--suite", "all"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.ends_with("all passed\n"));
}

#[test]
fn verify_reports_injected_fault() {
    let r = run(&["--inject-fault", "expansion-drops-generator", "verify", "--random", "3", "4", "--suite", "lemma11"]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("FAIL"));
    assert!(r.stdout.contains("reproducer:"));
    assert!(r.stderr.contains("seed 3"));
    let r = run(&[
        "--json",
        "--inject-fault",
        "lifting-sign",
        "verify",
        "--random",
        "3",
        "5",
        "--suite",
        "maps",
    ]);
    assert_eq!(r.code, 3);
    assert_eq!(json(&r.stdout)["passed"], Value::Bool(false));
}

#[test]
fn verify_reproducer_reruns() {
    let r = run(&["--json", "--inject-fault", "expansion-drops-generator", "verify", "--random", "3", "2", "--suite", "lemma11"]);
    let v = json(&r.stdout);
    let repro = v["instances"][0]["reproducer"].as_str().unwrap();
    let d = TempDir::new().unwrap();
    let f = file(&d, "r.txt", repro);
    assert_eq!(run(&["verify", s(&f), "--suite", "lemma11"]).code, 0);
    assert_eq!(run(&["--inject-fault", "expansion-drops-generator", "verify", s(&f), "--suite", "lemma11"]).code, 3);
}

#[test]
fn max_degree_env_overrides_bound() {
    let d = TempDir::new().unwrap();
    let f = file(&d, "w.txt", WORKED);
    let r = run_env(&["resolve", "--expansion", s(&f)], &[("EXPANSIO_MAX_DEGREE", "5")]);
    assert!(r.stdout.contains("verified to degree 5"), "{}", r.stdout);
}

#[test]
fn edge_ideal_path() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "g.txt", "1 2\n2 3\n");
    assert_eq!(ideal_line(&run(&["edge-ideal", s(&g)]).stdout), "x1*x2, x2*x3");
    let e = file(&d, "e.txt", "1 2\n");
    let r = run(&["edge-ideal", s(&e), "--duplicate", "2:2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(ideal_line(&r.stdout), "x1_1*x2_1, x1_1*x2_2");
    let empty = file(&d, "n.txt", "vertices: 3\n");
    let r = run(&["edge-ideal", s(&empty)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(ideal_line(&r.stdout), "");
}

#[test]
fn edge_ideal_rejects_bad_input() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "g.txt", "1 1\n");
    assert_eq!(run(&["edge-ideal", s(&g)]).code, 2);
    let g = file(&d, "h.txt", "1 2 3\n");
    assert_eq!(run(&["edge-ideal", s(&g)]).code, 2);
    let g = file(&d, "k.txt", "1 2\n");
    assert_eq!(run(&["edge-ideal", s(&g), "--duplicate", "5:2"]).code, 2);
}
