use std::process::{Command, Output};

use critpoly::construct::CriticalPolynomial;
use critpoly::exact::rat::{int, rat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn poly_json_round_trips() {
    let o = run(&["--output", "json", "poly", "--family", "gegenbauer", "--lambda", "1", "--n", "4"]);
    assert!(o.status.success());
    let p: CriticalPolynomial = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(p.n, 4);
    assert_eq!(p.poly.coeffs(), &[rat(63, 4), int(-15), int(15)]);
}

#[test]
fn chebyshev_forms_agree() {
    let json = |form: &str| {
        let o = run(&["--output", "json", "poly", "--family", "chebyshev", "--n", "6", "--form", form]);
        assert!(o.status.success(), "{form}");
        serde_json::from_str::<CriticalPolynomial>(&stdout(&o)).unwrap().poly
    };
    let s21 = json("s21");
    assert_eq!(json("recur"), s21);
}

#[test]
fn roots_lie_on_the_line() {
    let o = run(&["roots", "--lambda", "3/2", "--n", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("certificate PASS"), "{text}");
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("s = 1/2")).count(), 3);
}

#[test]
fn float_lambda_is_a_usage_error() {
    let o = run(&["poly", "--lambda", "0.5", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact rational"));
}

#[test]
fn invalid_lambda_is_a_usage_error() {
    let o = run(&["poly", "--lambda", "-1/2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_forms_succeeds() {
    let o = run(&["--output", "json", "verify", "--suite", "forms", "--nmax", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
}

#[test]
fn triangle_anchor_row() {
    let o = run(&["--output", "json", "triangle", "--kind", "b", "--k", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["entries"], serde_json::json!(["5", "5", "1"]));
}

#[test]
fn mellin_csv_matches_closed_form() {
    let o = run(&["--output", "csv", "mellin", "--kind", "gegenbauer", "--lambda", "1", "--n", "2", "--s", "2"]);
    assert!(o.status.success());
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rec = rdr.records().next().unwrap().unwrap();
    let rel: f64 = rec[6].parse().unwrap();
    assert!(rel <= 1e-10);
    let closed: f64 = rec[4].parse().unwrap();
    assert!((closed - 6.0 / 7.0).abs() < 1e-14);
}

#[test]
fn output_file_is_written() {
    let path = std::env::temp_dir().join(format!("critpoly-cli-{}.json", std::process::id()));
    let o = run(&["--output", "json", "--out", path.to_str().unwrap(), "poly", "--lambda", "2", "--n", "5"]);
    assert!(o.status.success());
    let p: CriticalPolynomial = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(p.n, 5);
}
