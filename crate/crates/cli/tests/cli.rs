use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;
use skelgb_cli::{run_with, EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use skelgb_core::groebner::parse_ideal;
use skelgb_core::Polynomial;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run_in(args: &[&str], stdin: &str) -> Run {
    let mut argv = vec!["skelgb"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn run(args: &[&str]) -> Run {
    run_in(args, "")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    (r.code, serde_json::from_str(&r.out).expect("valid JSON"))
}

#[test]
fn construct_prints_skeleton_generators() {
    let r = run(&["construct", "--family", "Skeleton", "--n", "3", "--p", "1"]);
    assert_eq!(r.code, EXIT_PASS);
    let ideal = parse_ideal(&r.out).unwrap();
    assert_eq!(ideal.gens().len(), 3);
    assert_eq!(ideal.ring().names(), ["x0", "x1", "x2", "x3"]);
    let expected = Polynomial::parse("(x1^2 - x0^2)*(x2^2 - x0^2)", ideal.ring()).unwrap();
    assert!(ideal.gens().contains(&expected));
}

#[test]
fn verify_family_passes_for_lili() {
    let r = run(&["verify-family", "--family", "LiLi", "--n", "3", "--p", "2", "--m", "2"]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.out);
    assert!(r.out.ends_with("overall: pass\n"));
    assert!(!r.out.contains("[fail]"));
}

#[test]
fn verify_family_runs_skeleton_invariants_and_sampled_orders() {
    let (code, v) =
        json(&["verify-family", "--family", "Skeleton", "--n", "3", "--p", "1", "--sample-orders", "4", "--seed", "9"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["seed"], 9);
    let names: Vec<&str> =
        v["report"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names.iter().filter(|n| n.starts_with("generators form a Groebner basis")).count(), 6);
    assert!(names.contains(&"regularity is n+p+1"));
    assert!(names.contains(&"skeleton table is the squarefree table with degrees doubled"));
}

#[test]
fn member_of_diagonal_ideal() {
    let dir = TempDir::new().unwrap();
    let diag = run(&["construct", "--family", "KL", "--n", "3", "--p", "1", "--m", "1"]).out;
    let path = write(&dir, "diag.ideal", &diag);
    let yes = run(&["member", "--ideal", &path, "--poly", "x1-x2"]);
    assert_eq!((yes.code, yes.out.as_str()), (EXIT_PASS, "true\n"));
    let no = run(&["member", "--ideal", &path, "--poly", "x1"]);
    assert_eq!(no.code, EXIT_FAIL);
    assert!(no.out.starts_with("false\n"));
}

#[test]
fn construct_gb_member_pipeline_over_stdin() {
    let gens = run(&["construct", "--family", "Skeleton", "--n", "3", "--p", "0"]).out;
    let gb = run_in(&["gb", "--ideal", "-"], &gens);
    assert_eq!(gb.code, EXIT_PASS);
    let basis = parse_ideal(&gb.out).unwrap();
    for g in parse_ideal(&gens).unwrap().gens() {
        let r = run_in(&["member", "--ideal", "-", "--poly", &g.to_string()], &gb.out);
        assert_eq!(r.code, EXIT_PASS, "{g}");
    }
    assert_eq!(basis.gens().len(), 3);
}

#[test]
fn binary_pipeline_through_pipes() {
    let exe = env!("CARGO_BIN_EXE_skelgb");
    let constructed = Command::new(exe).args(["construct", "--family", "SR", "--n", "3", "--p", "1"]).output().unwrap();
    assert!(constructed.status.success());
    let mut gb =
        Command::new(exe).args(["gb", "--ideal", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    gb.stdin.take().unwrap().write_all(&constructed.stdout).unwrap();
    let gb = gb.wait_with_output().unwrap();
    assert!(gb.status.success());
    let mut member = Command::new(exe)
        .args(["member", "--ideal", "-", "--poly", "x1*x2*x3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    member.stdin.take().unwrap().write_all(&gb.stdout).unwrap();
    let member = member.wait_with_output().unwrap();
    assert_eq!(member.status.code(), Some(0));
    assert_eq!(String::from_utf8(member.stdout).unwrap(), "true\n");
}

#[test]
fn gb_under_named_order() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "lin.ideal", "ring: x1 x2 x3\nx1 - x2\nx2 - x3\n");
    let r = run(&["gb", "--ideal", &path, "--order", "lex"]);
    assert_eq!(r.code, EXIT_PASS);
    let basis = parse_ideal(&r.out).unwrap();
    let texts: Vec<String> = basis.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(texts, ["x2 - x3", "x1 - x3"]);
}

#[test]
fn gb_sampled_orders_record_seed() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "sq.ideal", &run(&["construct", "--family", "Skeleton", "--n", "2", "--p", "0"]).out);
    let (code, v) = json(&["gb", "--ideal", &path, "--sample-orders", "5", "--seed", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["report"]["checks"].as_array().unwrap().len(), 6);
    let (_, again) = json(&["gb", "--ideal", &path, "--sample-orders", "5", "--seed", "3"]);
    assert_eq!(v, again);
}

#[test]
fn intersect_and_budget_exit() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.ideal", "ring: x y\nx\n");
    let b = write(&dir, "b.ideal", "ring: x y\ny\n");
    let r = run(&["intersect", "--ideal", &a, &b]);
    assert_eq!(r.code, EXIT_PASS);
    assert_eq!(r.out, "ring: x y\nx*y\n");
    let partial = run(&["--budget", "0", "intersect", "--ideal", &a, "--ideal", &b]);
    assert_eq!(partial.code, EXIT_BUDGET);
    assert!(partial.out.starts_with("# partial: first 1 of 2 ideals"));
}

#[test]
fn hilbert_and_betti_of_four_points() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "sq.ideal", &run(&["construct", "--family", "Skeleton", "--n", "2", "--p", "0"]).out);
    let h = run(&["hilbert", "--ideal", &path, "--max-degree", "4"]);
    assert_eq!(h.code, EXIT_PASS);
    assert!(h.out.contains("dim: 1\n"));
    assert!(h.out.contains("degree: 4\n"));
    assert!(h.out.contains("values: 1 3 4 4 4\n"));
    let b = run(&["betti", "--ideal", &path]);
    assert_eq!(b.out, "       0 1\ntotal: 2 1\n    2: 2 .\n    3: . 1\n");
    let (_, v) = json(&["hilbert", "--ideal", &path]);
    assert_eq!(v["hilbert"]["degree"], 4);
}

#[test]
fn trunc_example_passes_and_witness_reparses() {
    let (code, v) = json(&["verify-trunc-example"]);
    assert_eq!(code, EXIT_PASS);
    let ring = skelgb_core::VarRing::affine(3);
    let witnesses: Vec<&str> =
        v["report"]["checks"].as_array().unwrap().iter().filter_map(|c| c["witness"].as_str()).collect();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        Polynomial::parse(w, &ring).unwrap();
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "g.ideal", "ring: x y\nx*y\n");
    let bad = write(&dir, "b.ideal", "ring: x y\nx*z\n");
    let inhomogeneous = write(&dir, "inh.ideal", "ring: x y\nx - 1\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["construct", "--family", "Cube", "--n", "3", "--p", "1"],
        vec!["construct", "--family", "Skeleton", "--n", "3", "--p", "3"],
        vec!["gb", "--ideal", "/nonexistent/file"],
        vec!["gb", "--ideal", &bad],
        vec!["gb", "--ideal", &good, "--order", "zigzag"],
        vec!["member", "--ideal", &good, "--poly", "x +* y"],
        vec!["hilbert", "--ideal", &inhomogeneous],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
    }
    let bad_line = run(&["gb", "--ideal", &bad]);
    assert!(bad_line.err.contains("line 2"), "{}", bad_line.err);
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.out.contains("verify-family"));
}

fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timings");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-family", "--family", "KL", "--n", "4", "--p", "2", "--m", "2"];
    assert_eq!(run(&args).out, run(&args).out);
    let (_, mut a) = json(&args);
    let (_, mut b) = json(&args);
    strip_timings(&mut a);
    strip_timings(&mut b);
    assert_eq!(a, b);
}

#[test]
fn dodeca_json_report() {
    let (code, v) = json(&["dodeca"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["planes"].as_array().unwrap().len(), 12);
    assert_eq!(v["edge_lines"].as_array().unwrap().len(), 30);
    assert!(v["covers"]["8"].as_array().unwrap().is_empty());
    assert!(!v["covers"]["9"].as_array().unwrap().is_empty());
    assert_eq!(v["generator_degrees"], serde_json::json!({ "8": 10 }));
    assert!(v["timings"].as_array().unwrap().iter().any(|t| t["phase"] == "intersection fold"));
}

#[test]
fn dodeca_budget_exit() {
    let r = run(&["--budget", "1", "dodeca"]);
    assert_eq!(r.code, EXIT_BUDGET);
    assert!(r.out.contains("[fail] intersection fold completed within the step budget"));
}
