//! End-to-end tests of the `rimmflow` binary: exit codes, file outputs,
//! config precedence, and byte-level determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rimmflow"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn steady_happy_path_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["steady", "--b", "1", "--eps1", "0.05", "--eps2", "0.05"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("steady.json")).unwrap()).unwrap();
    assert!(json["residual_norm"].as_f64().unwrap() < 1e-12);
    assert!(json["min_height"].as_f64().unwrap() > 0.9);

    let csv = fs::read_to_string(dir.path().join("steady.csv")).unwrap();
    assert!(csv.starts_with("# config sha256:"));
    assert_eq!(csv.lines().nth(1).unwrap(), "theta,value");
}

#[test]
fn physical_parameters_are_rescaled_and_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["steady", "--beta", "3", "--gamma", "0", "--delta", "1", "--n-max", "16"],
        dir.path(),
    );
    // The rescaled triple is echoed regardless of solver outcome.
    assert!(stdout(&out).contains("params: b=1 eps1=1 eps2=0"));

    let dir2 = tempfile::tempdir().unwrap();
    let out2 = run(
        &["steady", "--beta", "3", "--gamma", "3", "--delta", "0.1"],
        dir2.path(),
    );
    assert_eq!(code(&out2), 0);
    assert!(stdout(&out2).contains("eps1=0.01"));
}

#[test]
fn steady_far_outside_neighborhood_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["steady", "--b", "1", "--eps1", "9", "--eps2", "9"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn invalid_configs_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["steady", "--b", "-1"],
        vec!["steady", "--b", "1", "--beta", "3", "--gamma", "0", "--delta", "1"],
        vec!["steady", "--beta", "3"],
        vec!["evolve", "--dt", "0"],
        vec!["trace", "--grid-count", "0"],
        vec!["steady", "--n-max", "4"],
        vec!["trace", "--grid-start", "0.02", "--grid-stop", "0.01"],
    ] {
        let out = run(&args, dir.path());
        assert_eq!(code(&out), 3, "args {args:?}");
    }
}

#[test]
fn spectrum_at_origin_reports_leading_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["spectrum", "--b", "1", "--eps1", "0", "--eps2", "0", "--n-max", "16"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("conjugate pairing: pass"));

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["lambda_plus"][0].as_f64().unwrap(), 0.0);
    assert_eq!(json["lambda_plus"][1].as_f64().unwrap(), 1.0);
    assert!(json["gap_ok"].as_bool().unwrap());

    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    // comment + header + one row per mean-zero mode
    assert_eq!(csv.lines().count(), 2 + 32);
}

#[test]
fn trace_writes_increasing_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "trace", "--b", "1", "--grid-start", "0.005", "--grid-stop", "0.01",
            "--grid-count", "2", "--n-max", "16",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("trace.json")).unwrap()).unwrap();
    let slope = json["slope_fit"].as_f64().unwrap();
    assert!((slope - 1.0).abs() < 0.02, "slope {slope}");
    let samples = json["samples"].as_array().unwrap();
    assert!(samples[1]["e2_numeric"].as_f64() > samples[0]["e2_numeric"].as_f64());
}

#[test]
fn evolve_output_is_byte_identical_for_equal_seeds() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let args = [
        "evolve", "--b", "1", "--eps1", "0.01", "--eps2", "0.005", "--t-end", "2",
        "--n-max", "16", "--seed", "42",
    ];
    assert_eq!(code(&run(&args, dir_a.path())), 0);
    assert_eq!(code(&run(&args, dir_b.path())), 0);
    let a = fs::read(dir_a.path().join("timeseries.csv")).unwrap();
    let b = fs::read(dir_b.path().join("timeseries.csv")).unwrap();
    assert_eq!(a, b);

    // different seed -> different phase -> different bytes
    let dir_c = tempfile::tempdir().unwrap();
    let mut args_c: Vec<&str> = args.to_vec();
    *args_c.last_mut().unwrap() = "43";
    assert_eq!(code(&run(&args_c, dir_c.path())), 0);
    let c = fs::read(dir_c.path().join("timeseries.csv")).unwrap();
    assert_ne!(a, c);
}

#[test]
fn out_dir_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["steady", "--b", "1", "--eps1", "0.01", "--eps2", "0.0", "--n-max", "16"])
        .env("RIMMFLOW_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("steady.json").exists());
}

#[test]
fn malformed_config_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("broken.json");
    fs::write(&config, "{ not json").unwrap();
    let out = bin()
        .args(["steady", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);

    let missing = bin()
        .args(["steady", "--config", "/nonexistent/run.json"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&missing), 3);
}

#[test]
fn config_file_is_merged_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"b": 2.0, "eps1": 0.05, "eps2": 0.01, "n_max": 16}"#).unwrap();
    let out = bin()
        .args(["steady", "--config"])
        .arg(&config)
        .args(["--eps1", "0.06"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("params: b=2 eps1=0.06 eps2=0.01"));
}

#[test]
fn verify_quick_passes_and_detects_corrupted_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "--quick"], dir.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    for id in ["A1", "A2", "A3", "A4", "A5", "A6", "G1"] {
        assert!(text.contains(&format!("{id}   PASS")) || text.contains(&format!("{id}  PASS")),
            "missing PASS for {id} in:\n{text}");
    }

    // corrupt a golden copy and point the verifier at it
    let golden = dir.path().join("golden.json");
    let builtin = include_str!("../data/golden.json");
    fs::write(&golden, builtin.replace("-12.0", "-12.5")).unwrap();
    let out2 = bin()
        .args(["verify", "--quick"])
        .arg("--out")
        .arg(dir.path())
        .env("RIMMFLOW_GOLDEN", &golden)
        .output()
        .unwrap();
    assert_eq!(code(&out2), 3);
    let text2 = stdout(&out2);
    assert!(text2.contains("G1   FAIL") || text2.contains("G1  FAIL"));
    assert!(text2.contains("golden.json"));
}
