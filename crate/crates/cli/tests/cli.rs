//! End-to-end checks of the binary surface: flag grammar, exit codes,
//! output round-tripping, determinism.

use std::process::{Command, Output};

fn p3fox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p3fox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = p3fox(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn eval_three_paths_agree() {
    let text = stdout(&[
        "eval", "--n", "2", "--alpha", "0.98", "--d1", "0.55", "--d2", "0.71", "--x", "1.5",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["diff_det_backlund"].as_f64().unwrap() < 1e-8);
    assert!(v["diff_det_recurrence"].as_f64().unwrap() < 1e-8);
    let u = v["determinant"]["u"][0].as_f64().unwrap();
    assert!((u - 0.6891777040636857).abs() < 1e-12);
}

#[test]
fn asym_case1_record() {
    let text = stdout(&[
        "asym", "--n", "0", "--alpha", "6", "--d1", "0.55", "--d2", "0.71", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["u"]["case"], 1);
    assert_eq!(v["u"]["exponent"][0], 1.0);
    assert_eq!(v["u"]["coefficient"][0], -0.5);
}

#[test]
fn rational_alpha_is_exact() {
    let text = stdout(&[
        "asym", "--n", "5", "--alpha", "-223/225", "--d1", "0.55", "--d2", "0.71", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["alpha"][0].as_f64().unwrap(), -223.0 / 225.0);
    // the ascending window at j = 3: e = alpha + 1
    assert_eq!(v["u"]["case"], 2);
    let e = v["u"]["exponent"][0].as_f64().unwrap();
    assert!((e - (-223.0 / 225.0 + 1.0)).abs() < 1e-15);
}

#[test]
fn expand_csv_round_trips() {
    let text = stdout(&["expand", "--n", "0", "--alpha", "1", "--d1", "1", "--d2", "0"]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "m,l,exp_re,exp_im,coef_re,coef_im");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "-1");
    let coef: f64 = first[4].parse().unwrap();
    assert_eq!(coef, -1.0);
    // every numeric field reparses to the identical bits on a second run
    let again = stdout(&["expand", "--n", "0", "--alpha", "1", "--d1", "1", "--d2", "0"]);
    assert_eq!(text, again);
}

#[test]
fn trace_csv_is_deterministic_and_accurate() {
    let args = [
        "trace", "--n", "0", "--alpha", "1", "--d1", "1", "--d2", "0", "--x0", "0.5", "--x1",
        "4", "--tol", "1e-9",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b, "trace output must be byte-identical across runs");
    let last = a.lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    assert_eq!(cols.len(), 5);
    let x: f64 = cols[0].parse().unwrap();
    let u: f64 = cols[2].parse().unwrap();
    assert_eq!(x, 4.0);
    let want = -(4.0f64.cos() / 4.0f64.sin());
    assert!((u - want).abs() < 1e-7);
}

#[test]
fn grid_csv_shape() {
    let text = stdout(&[
        "grid", "--n", "0", "--alpha", "6.5", "--d1", "0.55", "--d2", "0.71", "--rect",
        "0.5,2.5,-0.4,0.4", "--nx", "9", "--ny", "3", "--tol", "1e-6",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x_re,x_im,u_re,u_im,status");
    assert_eq!(lines.len(), 1 + 9 * 3);
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
}

#[test]
fn exit_codes() {
    // unknown subcommand: usage
    assert_eq!(p3fox(&["frobnicate"]).status.code(), Some(2));
    // boundary alpha: domain
    let out = p3fox(&["asym", "--n", "3", "--alpha", "2", "--d1", "0.55", "--d2", "0.71"]);
    assert_eq!(out.status.code(), Some(3));
    // evaluation at a zero of the kernel determinant: numerical
    let out = p3fox(&[
        "eval", "--n", "0", "--alpha", "1", "--d1", "1", "--d2", "0", "--x",
        "3.141592653589793",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_fast_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_p3fox"))
        .args(["verify"])
        .env("P3FOX_VERIFY_FAST", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# seed: 20240817"));
    assert!(text.contains("0 failed"));
    assert!(!text.contains("FAIL "));
}
