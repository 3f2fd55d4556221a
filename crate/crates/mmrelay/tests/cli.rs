//! Command-line interface behavior: flag validation, verify exit codes and
//! output shape.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mmrelay"))
}

#[test]
fn invalid_config_names_offending_field() {
    let out = bin()
        .args(["fig2", "--l1", "250", "--points", "4"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("l1"), "stderr was: {stderr}");
}

#[test]
fn unknown_verify_suite_is_usage_error() {
    let out = bin().args(["verify", "--suite", "bogus"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("suite"), "stderr was: {stderr}");
}

#[test]
fn verify_convexity_suite_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.csv");
    let out = bin()
        .args(["verify", "--suite", "convexity", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "stdout: {stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.starts_with("name,status,margin\n"));
    assert!(text.contains("sinr_rate_derivative_consistency,pass"));
    assert!(text.contains("kappa_power_monotonicity,pass"));
}

#[test]
fn rate_subcommand_prints_all_schemes() {
    let out = bin().args(["rate", "--xi-db", "100"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    for scheme in ["direct", "hd_half", "hd_opt", "fd", "fd_limit"] {
        assert!(stdout.contains(scheme), "missing {scheme} in: {stdout}");
    }
}

#[test]
fn theta_flag_accepts_degree_suffix() {
    let deg = bin()
        .args(["rate", "--theta-m", "30deg"])
        .output()
        .unwrap();
    let rad = bin()
        .args(["rate", "--theta-m", "0.5235987755982988rad"])
        .output()
        .unwrap();
    assert!(deg.status.success() && rad.status.success());
    assert_eq!(deg.stdout, rad.stdout);
}

#[test]
fn fig5_emits_long_format() {
    let out = bin().args(["fig5", "--points", "4"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.starts_with("mu_db,xi_db,fd_rate\n"));
    // 4 grid points x 4 budget levels + header
    assert_eq!(stdout.lines().count(), 17);
}

#[test]
fn plot_script_written_next_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig3.csv");
    let out = bin()
        .args(["fig3", "--points", "4", "--plot-script", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    let script = std::fs::read_to_string(dir.path().join("fig3.gnuplot")).unwrap();
    assert!(script.contains("fig3.csv"));
    assert!(script.contains("plot"));
}
