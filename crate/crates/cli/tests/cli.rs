use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_spectral-clique");

const PETERSEN: &str = "10 15
0 1
1 2
2 3
3 4
0 4
0 5
1 6
2 7
3 8
4 9
5 7
7 9
6 9
6 8
5 8
";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn bounds_json_on_petersen() {
    let f = graph_file(PETERSEN);
    let o = run(&["bounds", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["evaluations"].as_array().unwrap().len(), 17);
    assert_eq!(v["graph"]["n"], 10);
    assert_eq!(v["graph"]["omega"], 2);
}

#[test]
fn bounds_reads_standard_input() {
    let o = run_stdin(&["bounds", "-", "--format", "csv"], PETERSEN);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("bound,status,value,target,margin,equality,reason\n"));
    assert_eq!(out.lines().count(), 18);
}

#[test]
fn generated_graph_pipes_into_bounds() {
    let g = run(&["generate", "multipartite", "--parts", "2,2,2"]);
    assert_eq!(g.status.code(), Some(0));
    let o = run_stdin(&["bounds", "-", "--format", "json"], &stdout(&g));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graph"]["omega"], 3);
}

#[test]
fn spectrum_json() {
    let f = graph_file(PETERSEN);
    let o = run(&["spectrum", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let adj: Vec<f64> = serde_json::from_value(v["adjacency"].clone()).unwrap();
    assert_eq!(adj.len(), 10);
    assert_eq!(adj.iter().cloned().fold(f64::MIN, f64::max), 3.0);
}

#[test]
fn verify_small_orders_passes() {
    let o = run(&["verify", "--nmax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass"));
}

#[test]
fn absurd_tolerance_reports_violations() {
    let o = run(&["verify", "--nmax", "4", "--eps-eq", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn bipartite_conjecture_has_no_counterexamples() {
    let o = run(&["conjecture", "--r", "2", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 counterexamples"));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--nmax", "3", "--workers", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let bad = graph_file("3 2\n0 1\n");
    assert_eq!(run(&["bounds", bad.path().to_str().unwrap()]).status.code(), Some(2));
    let o = run_stdin(&["bounds", "-"], "2 1\n0 0\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_reproducible_across_worker_counts() {
    let args = ["tightness", "--n", "30", "--d", "4", "--trials", "6", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let mut with_workers = args.to_vec();
    with_workers.extend(["--workers", "3"]);
    let b = run(&with_workers);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&args).stdout, a.stdout);
}
