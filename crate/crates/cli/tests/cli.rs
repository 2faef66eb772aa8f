use std::process::{Command, Output};

use gailrs_cli::{ExamplesReport, RunReport};

fn gailrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gailrs")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, String) {
    let mut argv = args.to_vec();
    argv.extend(["--json", "-"]);
    let out = gailrs(&argv);
    let text = String::from_utf8(out.stdout).unwrap();
    let json = text[text.find("\n{").expect("json on stdout") + 1..].to_string();
    (out.status.code().unwrap(), json)
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gailrs").chain(args.iter().copied());
    let code = gailrs_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn integral_of_square() {
    let (code, json) = report(&["integral", "--f", "x^2", "--a", "0", "--b", "1", "--abstol", "1e-6"]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&json).unwrap();
    assert_eq!(r.command, "integral");
    assert!((r.scalar().unwrap() - 1.0 / 3.0).abs() <= 1e-6);
}

#[test]
fn bernoulli_ninth() {
    let (code, json) = report(&["meanmcber", "--p", "0.111111", "--abstol", "1e-2", "--alpha", "0.05", "--seed", "1"]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&json).unwrap();
    assert!((r.scalar().unwrap() - 1.0 / 9.0).abs() <= 1e-2);
}

#[test]
fn sobol_product() {
    let (code, json) = report(&[
        "cubsobol", "--f", "prod(x)", "--dim", "2", "--box", "0,1;0,1", "--abstol", "1e-5", "--reltol", "0", "--seed", "7",
    ]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&json).unwrap();
    assert!((r.scalar().unwrap() - 0.25).abs() <= 1e-5);
}

#[test]
fn funappx_grid_dump() {
    let (code, json) = report(&["funappx", "--f", "sin(x)", "--a", "0", "--b", "3", "--grid", "5"]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&json).unwrap();
    let grid = r.estimate["grid"].as_array().unwrap();
    assert_eq!(grid.len(), 5);
}

#[test]
fn warning_flags_exit_two() {
    let (code, json) = report(&["integral", "--f", "sin(50*x)", "--abstol", "1e-10", "--nmax", "500"]);
    assert_eq!(code, 2);
    let r: RunReport = serde_json::from_str(&json).unwrap();
    assert_eq!(r.diagnostics.exit_flags.0 & 1, 1);
}

#[test]
fn configuration_errors_exit_one() {
    for args in [
        &["integral", "--f", "x^2", "--bogus", "1"][..],
        &["integral", "--f", "x^^2"],
        &["integral", "--f", "y+1"],
        &["integral", "--f", "x", "--a", "1", "--b", "0"],
        &["cubmc", "--f", "x1", "--box", "0,inf"],
        &["cubsobol", "--f", "x1", "--box", "0,1;0,1", "--dim", "3"],
        &["cublattice", "--f", "x1", "--box", "-inf,inf", "--measure", "normal", "--transform", "tent"],
        &["meanmc", "--f", "x", "--alpha", "2"],
        &["frobnicate"],
    ] {
        let (code, _, err) = in_process(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = in_process(&["cubmc", "--f", "x1", "--box", "0,inf"]);
    assert!(err.contains("infinite"), "{err}");
    let (_, _, err) = in_process(&["integral", "--f", "y+1"]);
    assert!(err.contains("position"), "{err}");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = in_process(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("cubsobol"));
}

#[test]
fn failing_examples_exit_three() {
    let dir = std::env::temp_dir().join(format!("gailrs-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gailrs"))
        .args(["examples", "--seed", "1"])
        .env("GAILRS_DATA_DIR", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL  cubsobol/prod-2d"), "{text}");
}

#[test]
fn reports_round_trip() {
    for args in [
        &["funappx", "--f", "exp(x)", "--grid", "3"][..],
        &["funmin", "--f", "(x-0.3)^2+1"],
        &["integral", "--f", "x^3"],
        &["meanmc", "--f", "x^2", "--abstol", "1e-2", "--reltol", "0"],
        &["cubmc", "--f", "x1*x2", "--dim", "2", "--abstol", "1e-2"],
        &["cublattice", "--f", "x1.^2.*x2.^2.*x3.^2", "--box", "-inf,inf;-inf,inf;-inf,inf", "--measure", "normal", "--abstol", "1e-3"],
    ] {
        let (_, json) = report(args);
        let parsed: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_json().trim_end(), json.trim_end(), "{args:?}");
    }
    let out = gailrs(&["examples", "--seed", "2", "--json", "-"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let json = &text[text.find("\n{").unwrap() + 1..];
    let parsed: ExamplesReport = serde_json::from_str(json).unwrap();
    assert_eq!(parsed.reports.len(), gailrs_cli::FIXTURES.len());
    assert_eq!(parsed.to_json().trim_end(), json.trim_end());
}

#[test]
fn fixed_seed_is_byte_identical() {
    for args in [
        &["meanmc", "--f", "exp(x)", "--abstol", "5e-3", "--reltol", "0", "--seed", "11"][..],
        &["meanmcber", "--p", "0.3", "--abstol", "1e-2", "--seed", "11"],
        &["cubmc", "--f", "sin(x1+x2)", "--dim", "2", "--abstol", "5e-3", "--seed", "11"],
        &["cublattice", "--f", "exp(x1*x2)", "--dim", "2", "--seed", "11"],
        &["cubsobol", "--f", "exp(x1*x2)", "--dim", "2", "--seed", "11"],
    ] {
        let (a, b) = (report(args), report(args));
        assert_eq!(a, b, "{args:?}");
        let other: Vec<&str> = args.iter().map(|s| if *s == "11" { "12" } else { s }).collect();
        assert_ne!(report(&other).1, a.1, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let base = ["meanmc", "--f", "exp(x)", "--abstol", "2e-3", "--reltol", "0", "--seed", "5"];
    let one: RunReport = serde_json::from_str(&report(&base).1).unwrap();
    let mut four = base.to_vec();
    four.extend(["--threads", "4"]);
    let four: RunReport = serde_json::from_str(&report(&four).1).unwrap();
    assert_eq!(one.estimate, four.estimate);
    assert_eq!(one.diagnostics, four.diagnostics);
}

#[test]
fn timings_are_opt_in() {
    let (_, json) = report(&["integral", "--f", "x^2"]);
    assert!(!json.contains("elapsed_seconds"));
    let (_, json) = report(&["integral", "--f", "exp(sin(x))", "--abstol", "1e-10", "--timings"]);
    assert!(json.contains("elapsed_seconds"));
}

#[test]
fn json_written_to_file() {
    let path = std::env::temp_dir().join(format!("gailrs-report-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = gailrs(&["integral", "--f", "x^2", "--json", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let r: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.inputs["f"], "x^2");
}
