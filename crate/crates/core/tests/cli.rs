use std::process::{Command, Output};

use serde_json::Value;

fn zetalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .env_remove("ZETALAB_TOL")
        .env_remove("ZETALAB_THREADS")
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn phi_identity_single_record() {
    let out = zetalab(&["phi", "identity", "--sigma", "0.2", "--omega", "5", "--tol", "1e-9"]);
    assert_eq!(code(&out), 0);
    let r = records(&out);
    assert_eq!(r.len(), 1);
    assert!(r[0]["residual"].as_f64().unwrap() <= 1e-9);
    for key in ["phi_oracle", "interpolated", "config_hash", "quadrature_error"] {
        assert!(r[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn char_list_mod_4() {
    let out = zetalab(&["char", "list", "--modulus", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = records(&out);
    assert_eq!(r.len(), 2);
    let odd = r.iter().find(|c| c["parity"] == "odd").expect("odd character");
    let values: Vec<f64> = odd["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["re"].as_f64().unwrap())
        .collect();
    assert_eq!(values, vec![0.0, 1.0, 0.0, -1.0]);
}

#[test]
fn phi_zeros_first_three() {
    let out = zetalab(&["phi", "zeros", "--lo", "10", "--hi", "30", "--step", "0.05"]);
    assert_eq!(code(&out), 0);
    let got: Vec<f64> = records(&out).iter().map(|r| r["omega"].as_f64().unwrap()).collect();
    let want = [14.134725, 21.022040, 25.010858];
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-6, "{g} vs {w}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["dyn", "concentration", "--t", "4", "--epsilon", "0.1", "--samples", "5000", "--seed", "7"];
    let a = zetalab(&args);
    let b = zetalab(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn threads_do_not_change_output() {
    let base = ["dyn", "bounded", "--sigma-lo", "-0.1", "--sigma-hi", "0.1", "--omega-lo", "1", "--omega-hi", "2"];
    let one = zetalab(&[&base[..], &["--threads", "1"]].concat());
    let four = zetalab(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_has_header_and_flattened_complex() {
    let out = zetalab(&["phi", "eval", "--sigma", "0.1", "--omega", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    for col in ["phi_oracle_re", "phi_oracle_im", "residual", "config_hash"] {
        assert!(header.contains(&col), "missing column {col}");
    }
    assert_eq!(lines.count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&zetalab(&["phi", "identity", "--sigma", "0.7", "--omega", "1"])), 2);
    assert_eq!(code(&zetalab(&["phi", "eval", "--sigma", "0.5", "--omega", "0"])), 2);
    assert_eq!(code(&zetalab(&["phi", "nonsense"])), 2);
    assert_eq!(code(&zetalab(&["char", "list", "--modulus", "0"])), 2);
    assert_eq!(code(&zetalab(&["phi", "identity", "--sigma", "0.2", "--omega", "5", "--tol", "1e-30"])), 1);
    assert_eq!(code(&zetalab(&["--help"])), 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("zetalab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"sigma": 0.1, "omega": 7.0, "tol": 1e-3}"#).unwrap();
    let p = path.to_str().unwrap();
    let r = records(&zetalab(&["phi", "eval", "--config", p, "--omega", "8"]));
    assert_eq!(r[0]["sigma"].as_f64(), Some(0.1));
    assert_eq!(r[0]["omega"].as_f64(), Some(8.0));
    assert_eq!(r[0]["tol"].as_f64(), Some(1e-3));

    std::fs::write(&path, r#"{"unknown_key": 1}"#).unwrap();
    assert_eq!(code(&zetalab(&["phi", "eval", "--config", p])), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn env_sets_default_tolerance() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["phi", "eval"])
        .env("ZETALAB_TOL", "1e-4")
        .output()
        .unwrap();
    assert_eq!(records(&out)[0]["tol"].as_f64(), Some(1e-4));
    let flagged = Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(["phi", "eval", "--tol", "1e-6"])
        .env("ZETALAB_TOL", "1e-4")
        .output()
        .unwrap();
    assert_eq!(records(&flagged)[0]["tol"].as_f64(), Some(1e-6));
}

#[test]
fn config_hash_tracks_parameters_not_presentation() {
    let hash = |args: &[&str]| records(&zetalab(args))[0]["config_hash"].as_str().unwrap().to_string();
    let a = hash(&["phi", "eval", "--omega", "3"]);
    let b = hash(&["phi", "eval", "--omega", "3", "--threads", "3"]);
    let c = hash(&["phi", "eval", "--omega", "4"]);
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("zetalab-out-{}.jsonl", std::process::id()));
    let out = zetalab(&["char", "list", "--modulus", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["zn", "diverge", "--sigma", "0.2", "--omega", "5"],
        &["lfun", "eval", "--modulus", "4", "--label", "1", "--sigma", "0.1", "--omega", "3"],
        &["lfun", "residual", "--modulus", "5", "--label", "2", "--sigma", "0.1", "--omega", "3"],
        &["lfun", "zeros", "--modulus", "4", "--label", "1", "--lo", "1", "--hi", "8"],
        &["dyn", "trajectory", "--t-max", "2", "--t-step", "0.5"],
        &["verify", "theta"],
        &["verify", "all", "--criteria", "4,5"],
    ];
    for args in cases {
        let out = zetalab(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!records(&out).is_empty(), "{args:?}");
    }
}
