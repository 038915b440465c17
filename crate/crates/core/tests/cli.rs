//! End-to-end runs of the `cubic-vpt` binary against golden files.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cubic-vpt"));
    c.env_remove("CUBIC_VPT_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn golden_path(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name).to_string_lossy().into_owned()
}

#[test]
fn series_table() {
    let o = run(&["series", "--order", "10", "--format", "pretty-table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out, golden("series_10.txt"));
    assert_eq!(out.lines().last().unwrap(), "10  2944491879/8192");
    assert_eq!(stdout(&run(&["series", "-k", "1"])).lines().last().unwrap(), "1  0");
}

#[test]
fn series_order_zero_is_a_usage_error() {
    let o = run(&["series", "--order", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn loop_table() {
    let out = stdout(&run(&["veff", "--loops", "5"]));
    assert_eq!(out, golden("veff_loops_5.txt"));
    assert!(out.lines().any(|l| l.starts_with("5  -1371477/2048")));
    assert_eq!(stdout(&run(&["veff", "-l", "1"])).lines().nth(1).unwrap(), "1  1/2  1/2 · g^0 · wtilde^1");
}

#[test]
fn veff_polynomials_as_json() {
    let out = stdout(&run(&["veff", "--order", "3", "--format", "json"]));
    assert_eq!(out, golden("veff_order_3.json"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["veff", "--order", "2", "--format", "json"]))).unwrap();
    assert_eq!(v["V"][1]["k"], 2);
    assert_eq!(v["V"][1]["coefficients"][0], "1/4");
}

#[test]
fn vpt_runs() {
    let o = run(&["vpt", "--variant", "veff", "--max-order", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("vpt_veff_5.csv"));
    assert_eq!(stdout(&run(&["vpt", "--variant", "naive", "--max-order", "4"])), golden("vpt_naive_4.txt"));

    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["vpt", "--variant", "naive", "--max-order", "1", "--format", "json"]))).unwrap();
    let b0 = v[0]["b0"].as_f64().unwrap();
    assert!((b0 - 5.0 * 22f64.powf(0.2) / 16.0).abs() < 1e-12);
    assert_eq!(v[0]["variant"], "naive");
    assert_eq!(v[0]["N"], 1);
    assert_eq!(v[0]["criticality"], "extremum");
}

#[test]
fn vpt_failures_are_partial() {
    // No stationary point of the plain profile in [5, 9] at first order.
    let o = run(&["vpt", "--variant", "naive", "--max-order", "1", "--bracket", "5,9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",failed"));
    // The single first-order optimum, 22^{1/5} ≈ 1.856, lies outside [2, 10]; higher orders have
    // stationary points inside.
    let o = run(&["vpt", "--variant", "naive", "--max-order", "3", "--bracket", "2,10", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(3), "{out}");
    assert!(out.contains(",failed") && out.contains(",ok"));
}

#[test]
fn fit_and_plotdata() {
    let o = run(&["fit", &golden_path("vpt_veff_5.csv")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("fit_veff_5.json"));

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("naive.csv");
    let o = run(&["vpt", "--variant", "naive", "--max-order", "20", "--format", "csv"]);
    std::fs::write(&csv, &o.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["fit", csv.to_str().unwrap()]))).unwrap();
    let slope = v["fit"]["slope"].as_f64().unwrap();
    let intercept = v["fit"]["intercept"].as_f64().unwrap();
    assert!((slope + 0.96).abs() <= 0.22, "{slope}");
    assert!((intercept + 1.83).abs() <= 0.88, "{intercept}");
    assert!(v["even_only"]["slope"].is_f64());

    let out = stdout(&run(&["plotdata", &golden_path("vpt_veff_5.csv")]));
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "N,x,ln_deviation");
    assert_eq!(rows.len(), 6);
    let f: Vec<f64> = rows[5].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((f[1] - 5f64.powf(0.6)).abs() < 1e-15);
    assert!((f[2] - 2.3780769908491631e-6f64.ln()).abs() < 1e-12);
}

#[test]
fn fit_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.csv");
    std::fs::write(&two, "N,deviation\n1,0.1\n2,0.01\n").unwrap();
    let o = run(&["fit", two.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 3 points"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "N,deviation\n1,0.1\n2,oops\n3,0.01\n").unwrap();
    let o = run(&["fit", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let first = bin().env("CUBIC_VPT_CACHE_DIR", dir.path()).args(["series", "-k", "10"]).output().unwrap();
    assert!(dir.path().join("bender_wu.json").exists());
    let second = bin().env("CUBIC_VPT_CACHE_DIR", dir.path()).args(["series", "-k", "10"]).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first), golden("series_10.txt"));

    let flag = tempfile::tempdir().unwrap();
    run(&["veff", "-l", "3", "--cache-dir", flag.path().to_str().unwrap()]);
    assert!(flag.path().join("effective_potential.json").exists());
    let leftovers = std::fs::read_dir(flag.path()).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp")).count();
    assert_eq!(leftovers, 0);
}

#[test]
fn byte_stable_output() {
    let a = run(&["vpt", "--variant", "veff", "--max-order", "3", "--format", "json"]);
    let b = run(&["vpt", "--variant", "veff", "--max-order", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
