use sotmram_core::config::RunConfig;
use sotmram_core::explorer::read_design_space;
use sotmram_core::Error;

const SWEEP: &str = r#"{
  "schema_version": 1,
  "sweep": {
    "cells": [{"config": "1T1D1R", "selector": "schottky"}],
    "v_read": [1.4, 1.8],
    "ra": [100],
    "tmr": [150],
    "constraints": [{"kind": "sm_at_least", "value": 0.0}]
  }
}"#;

#[test]
fn file_round_trip_preserves_every_field() {
    let dir = std::env::temp_dir().join(format!("sotmram-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("cfg.json");
    let mut cfg = RunConfig::from_json(SWEEP).unwrap();
    cfg.models.read.line_cap_per_cell *= 1.5;
    std::fs::write(&p, cfg.to_json().unwrap()).unwrap();
    assert_eq!(RunConfig::load(&p).unwrap(), cfg);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn configured_sweep_runs() {
    let cfg = RunConfig::from_json(SWEEP).unwrap();
    let grid = cfg.sweep.as_ref().unwrap();
    let recs = read_design_space(grid, &cfg.models, Some(1)).unwrap();
    assert_eq!(recs.len(), 2);
}

#[test]
fn bad_values_are_rejected_with_a_location() {
    let e = RunConfig::from_json(r#"{"schema_version": 1, "models": {"tech": {"cpp": "wide"}}}"#).unwrap_err();
    match e {
        Error::Config { path, .. } => assert!(path.starts_with("models.tech"), "{path}"),
        other => panic!("unexpected {other:?}"),
    }
    let e =
        RunConfig::from_json(r#"{"schema_version": 1, "sweep": {"cells": [], "v_read": [1], "ra": [1], "tmr": [1]}}"#)
            .unwrap_err();
    assert_eq!(e.kind(), "invalid_parameter");
    assert!(RunConfig::load(std::path::Path::new("/nonexistent/cfg.json")).is_err());
}
