//! Black-box tests of the command-line interface: exit codes, output
//! formats, determinism, and the config file.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfcurv"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hopfcurv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_examples_and_exit_codes() {
    let o = run(&["classify", "1", "1", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PositiveCurvature"));

    let o = run(&["classify", "0.25", "0.25", "0.33"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("MixedCurvature") && s.contains("binding index 3"));

    let o = run(&["classify", "0.25", "0.25", "0.325"]);
    let s = stdout(&o);
    assert!(s.contains("Boundary"));
    // Z = 16/11 printed
    assert!(s.contains("1.4545454545"));

    let o = run(&["classify", "0", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    // unknown flag: usage error from the parser
    let o = run(&["classify", "--bogus", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_json_schema() {
    let o = run(&["classify", "0.25", "0.25", "0.325", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    assert_eq!(doc["t"][2], 0.325);
    let z = doc["verdict"]["Boundary"]["z"].as_f64().expect("boundary z");
    assert!((z - 16.0 / 11.0).abs() < 1e-9);
    assert!((doc["invariants"]["h_vals"][2].as_f64().unwrap() - 3.025).abs() < 1e-12);
}

#[test]
fn pinch_examples() {
    let o = run(&["pinch", "0.2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("delta = 0.04"));

    let o = run(&["pinch", "1.0", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["delta"], 1.0);

    let o = run(&["pinch", "1.2", "--verify", "--seed", "5"]);
    assert!(o.status.success(), "verify run failed: {}", stdout(&o));

    // outside the positively curved range
    let o = run(&["pinch", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_csv_format_and_determinism() {
    let o = run(&["sweep", "pinching", "--points", "40"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("t,delta,natural_delta,difference\n"));
    assert!(!s.contains('\r'), "LF line endings only");
    assert_eq!(s.lines().count(), 41);
    // 17 significant digits: mantissa with 16 decimal places
    let first = s.lines().nth(1).unwrap().split(',').next().unwrap();
    let mantissa = first.split('e').next().unwrap();
    assert_eq!(mantissa.split('.').nth(1).unwrap().len(), 16, "{first}");
    // byte-identical across runs
    let o2 = run(&["sweep", "pinching", "--points", "40"]);
    assert_eq!(o.stdout, o2.stdout);
}

#[test]
fn sweep_json_and_out_file() {
    let dir = std::env::temp_dir().join("hopfcurv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f7.json");
    let o = run(&["sweep", "slice", "--points", "10", "--format", "json", "--out",
        path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows[0]["boundary_t3"].is_f64());
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn sweep_rejects_bad_spec() {
    let o = run(&["sweep", "surface-gap", "--grid", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass_and_tamper_fails() {
    for suite in ["components", "oracle", "classifier"] {
        let o = run(&["verify", suite]);
        assert!(o.status.success(), "suite {suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("[pass]"));
    }
    let o = run(&["verify", "oracle", "--tamper"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[FAIL]"));
}

#[test]
fn config_file_defaults_and_flag_override() {
    let dir = std::env::temp_dir().join("hopfcurv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("settings.conf");
    std::fs::write(&path, "# test settings\nrestarts = 4\nseed = 9\nsamples = 1000\n").unwrap();
    let o = run(&["pinch", "1.2", "--verify", "--config", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    // --seed overrides the config value but the run still succeeds
    let o = run(&["pinch", "1.2", "--verify", "--config", path.to_str().unwrap(), "--seed", "3"]);
    assert!(o.status.success());
    // malformed config is a usage error
    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "nonsense-line\n").unwrap();
    let o = run(&["pinch", "1.2", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let unknown = dir.join("unknown.conf");
    std::fs::write(&unknown, "frobnicate = 3\n").unwrap();
    let o = run(&["pinch", "1.2", "--config", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jobs_flag_keeps_output_deterministic() {
    let a = run(&["sweep", "surface-gap", "--grid", "60", "--jobs", "1"]);
    let b = run(&["sweep", "surface-gap", "--grid", "60", "--jobs", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
