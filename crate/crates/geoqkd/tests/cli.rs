//! End-to-end tests of the `geoqkd` binary: exit-code contract,
//! encode/decode round trips through files, and output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geoqkd"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn geoqkd")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("geoqkd_cli_{name}"))
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    // unknown subcommand and unknown flag (clap-level)
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bb84", "--rounds", "10", "--bogus"]).status.code(), Some(1));
    // semantic usage errors
    assert_eq!(run(&["bb84", "--rounds", "0"]).status.code(), Some(1));
    assert_eq!(
        run(&["bb84", "--rounds", "10", "--eve", "clone"]).status.code(),
        Some(1)
    );
    let out = tmp("usage.json");
    assert_eq!(
        run(&["encode", "10a1", "--out", out.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn input_errors_exit_two() {
    // missing trajectory file
    assert_eq!(run(&["decode", "/nonexistent/traj.json"]).status.code(), Some(2));
    // corrupt trajectory JSON
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"dim\": 4}").unwrap();
    assert_eq!(run(&["decode", bad.to_str().unwrap()]).status.code(), Some(2));
    // walk leaves the index window
    let out = tmp("window.json");
    assert_eq!(
        run(&["encode", "11111", "--out", out.to_str().unwrap(), "--j0", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gradcheck_with_coarse_step_exits_three() {
    // a huge finite-difference step ruins the gradient comparison
    let out = run(&["gradcheck", "--h", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn selfcheck_passes_and_reports_groups() {
    let out = run(&["selfcheck"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for group in [
        "metric_axioms",
        "gradient_consistency",
        "local_unitary_invariance",
        "oracle_equivalence",
    ] {
        assert!(text.contains(group), "missing group {group} in:\n{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn encode_decode_round_trip_via_files() {
    let traj = tmp("roundtrip.json");
    let message = "1011001";
    let enc = run(&["encode", message, "--out", traj.to_str().unwrap()]);
    assert_eq!(enc.status.code(), Some(0));

    let idx = run(&["decode", traj.to_str().unwrap(), "--mode", "index"]);
    assert_eq!(idx.status.code(), Some(0));
    assert_eq!(stdout(&idx).trim(), message);

    // default key decodes the profile; wrong-family key yields erasures
    let prof = run(&["decode", traj.to_str().unwrap(), "--mode", "profile"]);
    assert_eq!(prof.status.code(), Some(0));
    assert_eq!(stdout(&prof).trim(), message);

    let flat_key = tmp("flat_key.json");
    std::fs::write(&flat_key, "{\"family\":\"standard_vn\"}").unwrap();
    let blind = run(&[
        "decode",
        traj.to_str().unwrap(),
        "--mode",
        "profile",
        "--key",
        flat_key.to_str().unwrap(),
    ]);
    assert_eq!(blind.status.code(), Some(2));
}

#[test]
fn hex_message_matches_bit_message() {
    let a = tmp("hex_a.json");
    let b = tmp("hex_b.json");
    assert_eq!(
        run(&["encode", "0xb", "--out", a.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["encode", "1011", "--out", b.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn classify_labels_encoded_moves() {
    let traj = tmp("classify.json");
    run(&["encode", "110", "--out", traj.to_str().unwrap()]);
    let out = run(&["--json", "classify", traj.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let labels: Vec<&str> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["U", "U", "D"]);
}

#[test]
fn bb84_stats_are_valid_json_and_deterministic() {
    let args = ["bb84", "--rounds", "500", "--eve", "intercept", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(v["n_rounds"].as_u64(), Some(500));
    assert!(v["qber"].as_f64().unwrap() > 0.1);

    // a different seed changes the transcript
    let c = run(&["bb84", "--rounds", "500", "--eve", "intercept", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bb84_log_has_one_record_per_round() {
    let log = tmp("rounds.jsonl");
    let out = run(&["bb84", "--rounds", "50", "--log", log.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&log).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 50);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["alice_basis"].is_string());
    }
}

#[test]
fn config_file_overrides_encoder_defaults() {
    let cfg = tmp("config.json");
    std::fs::write(
        &cfg,
        "{\"encoder\":{\"delta\":0.19634954084936207,\"j0\":2,\"j_min\":1,\"j_max\":7}}",
    )
    .unwrap();
    let traj = tmp("cfg_traj.json");
    // j0 = 2 from the file: "000" would underflow the default j0 = 4 window
    // only if j_min were higher, so use a walk that distinguishes j0 = 2
    let enc = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "encode",
        "0",
        "--out",
        traj.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(enc.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&enc).trim()).unwrap();
    assert_eq!(v["walk"], serde_json::json!([2, 1]));
}
