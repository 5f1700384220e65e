//! End-to-end runs of the `liyau` binary in scratch directories.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn liyau(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liyau")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    v.as_f64().is_some_and(|x| (x - want).abs() <= tol)
}

fn tmp() -> TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn params_reference_cell() {
    let d = tmp();
    let o = liyau(d.path(), &["params", "--n", "3", "--p", "2", "--policy", "midpoint"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], "liyau-report/1");
    let prm = &v["params"];
    assert!(close(&prm["c1"], 2.0 / 3.0, 1e-11));
    assert!(close(&prm["c2"], 1.0 / 6.0, 1e-11));
    assert!(close(&prm["c3"], 6.0, 1e-10));
    assert!(close(&prm["delta"], 0.40625, 1e-12));
}

#[test]
fn params_supercritical_exponent_is_infeasible() {
    let d = tmp();
    let o = liyau(d.path(), &["params", "--n", "3", "--p", "2.7"]);
    assert_eq!(code(&o), 2);
    assert!(format!("{}{}", stdout(&o), stderr(&o)).contains("2.686141"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let d = tmp();
    for args in [
        &["params", "--n", "1", "--p", "2"][..],
        &["params", "--n", "3", "--p", "abc"],
        &["frobnicate"],
        &["solve", "--points", "-3"],
        &["verify", "--windows", "1,,2"],
    ] {
        let o = liyau(d.path(), args);
        assert_eq!(code(&o), 64, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn identity_default_certifies_and_writes_file() {
    let d = tmp();
    let o = liyau(d.path(), &["identity"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let file: Value = serde_json::from_str(&fs::read_to_string(d.path().join("identity_certificate.json")).unwrap()).unwrap();
    assert_eq!(file, json(&o));
    assert_eq!(file["certified"], true);
    for name in ["eq8_no_utt", "eq8_no_w5", "eq10_match", "eq16_match"] {
        let step = file["steps"].as_array().unwrap().iter().find(|s| s["name"] == name).unwrap();
        assert_eq!(step["status"], "passed", "{name}");
    }
}

#[test]
fn identity_fault_injection_lists_w5() {
    let d = tmp();
    let o = liyau(d.path(), &["identity", "--perturb-lambda", "0.1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("W5"), "{}", stderr(&o));
    assert_eq!(json(&o)["certified"], false);
}

#[test]
fn identity_general_beta() {
    let d = tmp();
    let o = liyau(d.path(), &["identity", "--beta", "-1", "--lambda", "0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn sweep_grid_is_feasible_and_ordered() {
    let d = tmp();
    let o = liyau(d.path(), &["sweep", "--n", "3..6", "--p-min", "1.1", "--p-points", "10", "--pc-margin", "0.05"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 40);
    let keys: Vec<(u32, f64)> = rows.iter().map(|r| (r[col("n")].parse().unwrap(), r[col("p")].parse().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    assert_eq!(keys, sorted);
    for r in &rows {
        assert_eq!(r[col("feasible")], "true");
        assert!(r[col("min_eigenvalue")].parse::<f64>().unwrap() >= -1e-10);
    }
}

#[test]
fn single_cell_sweep_matches_params() {
    let d = tmp();
    let sweep = liyau(d.path(), &["sweep", "--n", "3", "--p", "2", "--policy", "midpoint"]);
    let params = liyau(d.path(), &["params", "--n", "3", "--p", "2", "--policy", "midpoint", "--format", "csv"]);
    assert_eq!(code(&sweep), 0);
    assert_eq!(stdout(&sweep), stdout(&params));

    let sweep = liyau(d.path(), &["sweep", "--n", "4", "--p", "1.7", "--format", "json"]);
    let params = liyau(d.path(), &["params", "--n", "4", "--p", "1.7", "--policy", "max_delta"]);
    let (s, p) = (json(&sweep), json(&params));
    let row = &s["rows"][0];
    for (field, its) in
        [("alpha", &p["alpha"]), ("delta", &p["params"]["delta"]), ("c3", &p["params"]["c3"]), ("min_eigenvalue", &p["min_eigenvalue"])]
    {
        assert_eq!(&row[field], its, "{field}");
    }
}

#[test]
fn sweep_flags_supercritical_rows() {
    let d = tmp();
    let o = liyau(d.path(), &["sweep", "--n", "3", "--p", "2,2.8,3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(rows[0].contains(",true,"));
    assert!(rows[1].contains(",false,") && rows[2].contains(",false,"));

    let o = liyau(d.path(), &["sweep", "--n", "3", "--p", "2.8,3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sweep_is_independent_of_job_count() {
    let d = tmp();
    let args = |j: &'static str| ["sweep", "--n", "3..8", "--p-points", "25", "--jobs", j];
    let one = liyau(d.path(), &args("1"));
    let four = liyau(d.path(), &args("4"));
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn exact_reference_values() {
    let d = tmp();
    let o = liyau(d.path(), &["exact", "--n", "3", "--p", "2", "--alpha", "1.5", "--T0", "0", "--t", "-1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert!(close(&v["u"], 1.0, 1e-12));
    assert!(close(&v["q"], 5.0 / 6.0, 1e-11));
}

#[test]
fn solve_detects_blowup_and_is_deterministic() {
    let d = tmp();
    let args = ["solve", "--n", "3", "--p", "2", "--init", "constant", "--value", "1", "--out-dir", "a"];
    let o = liyau(d.path(), &args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["status"], "blowup_detected");
    assert!(close(&v["blowup_time"], 1.0, 2e-3));
    let again = liyau(d.path(), &["solve", "--n", "3", "--p", "2", "--init", "constant", "--value", "1", "--out-dir", "b"]);
    assert_eq!(code(&again), 0);
    for f in ["manifest.json", "snapshots.csv"] {
        assert_eq!(fs::read(d.path().join("a").join(f)).unwrap(), fs::read(d.path().join("b").join(f)).unwrap(), "{f}");
    }
}

#[test]
fn verify_constant_data_has_zero_defect() {
    let d = tmp();
    let o = liyau(d.path(), &["verify", "--init", "constant", "--value", "0.1", "--windows", "1,2,4", "--out-dir", "v"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(d.path().join("v/verification_report.json")).unwrap()).unwrap();
    assert_eq!(report["kind"], "verification_report");
    let windows = report["trend"]["windows"].as_array().unwrap();
    assert_eq!(windows.len(), 3);
    for w in windows {
        assert!(w["epsilon"].as_f64().unwrap() <= 1e-6);
    }
    assert!(d.path().join("v/margins.csv").exists() && d.path().join("v/defect.dat").exists());
}

#[test]
fn verify_blowup_in_windows_exits_3_with_report() {
    let d = tmp();
    let o = liyau(d.path(), &["verify", "--p", "2", "--init", "constant", "--value", "1", "--out-dir", "v"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(d.path().join("v/verification_report.json")).unwrap()).unwrap();
    assert_eq!(report["verdicts"]["blowup_in_windows"], true);
    assert_eq!(report["trajectory_status"], "blowup_detected");
}

#[test]
fn verify_reads_a_solved_manifest() {
    let d = tmp();
    let s = liyau(d.path(), &["solve", "--n", "3", "--p", "1.5", "--points", "100", "--out-dir", "run"]);
    assert_eq!(code(&s), 0, "{}", stderr(&s));
    let o = liyau(d.path(), &["verify", "--manifest", "run/manifest.json", "--n", "3", "--out-dir", "v"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["passed"], true);
    let v: Value = serde_json::from_str(&fs::read_to_string(d.path().join("v/verification_report.json")).unwrap()).unwrap();
    assert!(close(&v["spec"]["p"], 1.5, 0.0));
    assert_eq!(v["verdicts"]["passed"], true);
}

#[test]
fn config_file_drives_a_run() {
    let d = tmp();
    fs::write(d.path().join("run.cfg"), "# constant level\nn = 3\np = 2\ninit = constant\nvalue = 1\nt-end = 2\nout_dir = cfg_out\n").unwrap();
    let o = liyau(d.path(), &["solve", "--config", "run.cfg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["status"], "blowup_detected");
    assert!(d.path().join("cfg_out/manifest.json").exists());

    fs::write(d.path().join("bad.cfg"), "n = 3\nmystery = 1\n").unwrap();
    let o = liyau(d.path(), &["solve", "--config", "bad.cfg", "--out-dir", "never"]);
    assert_eq!(code(&o), 64);
    assert!(!d.path().join("never").exists());
}

#[test]
fn validation_failures_leave_no_artifacts() {
    let d = tmp();
    for args in [
        &["solve", "--p", "0.5", "--out-dir", "x"][..],
        &["solve", "--length", "-1", "--out-dir", "x"],
        &["verify", "--p", "2.9", "--out-dir", "x"],
        &["params", "--n", "3", "--p", "2.7", "--output", "x"],
        &["identity", "--beta", "zz", "--output", "x"],
    ] {
        let o = liyau(d.path(), args);
        assert_ne!(code(&o), 0, "{args:?}");
        assert!(!d.path().join("x").exists(), "{args:?} left an artifact");
    }
}
