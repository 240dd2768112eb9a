use std::path::Path;
use std::process::{Command, Output};

fn sotmram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sotmram"))
        .args(args)
        .env_remove("SOTMRAM_CONFIG")
        .output()
        .expect("spawn sotmram")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn area_flags_the_flagpole_via() {
    let dir = tempfile::tempdir().unwrap();
    let o = sotmram(&["area", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let via = std::fs::read_to_string(dir.path().join("via.csv")).unwrap();
    let fv = via.lines().find(|l| l.starts_with("2T1R-FV")).unwrap();
    assert!(fv.ends_with("true"), "{via}");
    let rv = via.lines().find(|l| l.starts_with("2T1R-RV")).unwrap();
    assert!(rv.ends_with("false"), "{via}");
    assert!(dir.path().join("area.csv").exists());
}

#[test]
fn retention_prints_five_rows() {
    let o = sotmram(&["retention"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 6, "{s}");
    assert!(s.starts_with("retention,tau_ret_s,delta_t_op,delta_t_ref"));
}

#[test]
fn json_and_svg_formats() {
    let o = sotmram(&["--format", "json", "switching", "--points", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["switching"].as_array().unwrap().len() >= 5);
    let o = sotmram(&["--format", "svg", "devices", "dump-iv", "--points", "11"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn read_overrides_apply() {
    let o = sotmram(&[
        "read",
        "--cell",
        "1T1D1R",
        "--selector",
        "schottky",
        "--vread",
        "1.8",
        "--rows",
        "32",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let row = s.lines().nth(1).unwrap();
    assert!(row.starts_with("1T1D1R,schottky,32,1.8,"), "{row}");
}

#[test]
fn write_csv_is_byte_identical_across_runs() {
    let a = sotmram(&["write", "--rows", "16", "--rows", "128"]);
    let b = sotmram(&["write", "--rows", "16", "--rows", "128"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_config_fails_cleanly_without_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = sotmram(&["--config", "/nonexistent.json", "--out", out.to_str().unwrap(), "area"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "config");
    assert!(!out.exists());
}

#[test]
fn invalid_config_value_names_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cfg.json");
    std::fs::write(&p, r#"{"schema_version": 1, "retention": {"tau_0": "soon"}}"#).unwrap();
    let o = sotmram(&["--config", p.to_str().unwrap(), "retention"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(v["error"]["message"].as_str().unwrap().contains("retention.tau_0"));
}

#[test]
fn invalid_parameters_are_reported() {
    let o = sotmram(&["read", "--cell", "1T1R1T-VGA"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "invalid_parameter");
    let o = sotmram(&["write", "--corner", "hot"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "usage");
}

#[test]
fn config_file_sweep_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cfg.json");
    std::fs::write(
        &p,
        r#"{"schema_version": 1, "sweep": {"cells": [{"config": "1T1D1R", "selector": "schottky"}],
            "v_read": [1.4, 1.8], "ra": [100], "tmr": [150]}}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let o = sotmram(&[
        "--config",
        p.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "2",
        "sweep",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["sweep.csv", "min_v_read.csv", "ppa.csv", "ppa_detail.json"] {
        assert!(Path::new(&out.join(f)).exists(), "{f}");
    }
    let sweep = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 3);
}
