use std::path::PathBuf;
use std::process::{Command, Output};

fn kdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdp")).args(args).output().expect("binary runs")
}

fn config(name: &str, json: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kdp-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_selected_ids_passes() {
    let o = kdp(&["verify", "1.2", "2.2", "2.8", "4.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("PASS  1.2 spin-0"));
    assert!(out.contains("expected failure"), "2.2 on spin-1 should fail as expected:\n{out}");
}

#[test]
fn verify_json_lists_entries() {
    let o = kdp(&["verify", "--json", "1.2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e["report"]["passed"] == true));
}

#[test]
fn unknown_id_is_config_error() {
    assert_eq!(kdp(&["verify", "9.99"]).status.code(), Some(2));
}

#[test]
fn malformed_config_is_config_error() {
    let bad = config("bad.json", "{\"spins\": [0, 1,");
    assert_eq!(kdp(&["--config", bad.to_str().unwrap(), "verify", "1.2"]).status.code(), Some(2));
    let unknown = config("unknown.json", "{\"colour\": 3}");
    assert_eq!(kdp(&["--config", unknown.to_str().unwrap(), "verify", "1.2"]).status.code(), Some(2));
    let spin = config("spin.json", "{\"spins\": [2]}");
    assert_eq!(kdp(&["--config", spin.to_str().unwrap(), "verify", "1.2"]).status.code(), Some(2));
}

#[test]
fn zero_field_spectrum_is_config_error() {
    let cfg = config("zero-b.json", r#"{"spin0": {"b": [0, 1]}}"#);
    assert_eq!(kdp(&["--config", cfg.to_str().unwrap(), "spectrum", "--spin", "0"]).status.code(), Some(2));
}

#[test]
fn empty_modes_is_config_error() {
    let cfg = config("no-modes.json", r#"{"modes": []}"#);
    assert_eq!(kdp(&["--config", cfg.to_str().unwrap(), "currents"]).status.code(), Some(2));
}

#[test]
fn spectrum_csv_columns() {
    let cfg = config("coarse.json", r#"{"spin0": {"grid_n": 128, "n_max": 2}}"#);
    let o = kdp(&["--config", cfg.to_str().unwrap(), "spectrum", "--spin", "0", "--route", "finite-difference"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("spin,route,n,p_z,spin_projection,E2,E,est_error"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for (n, row) in rows.iter().enumerate() {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[1], "finite-difference");
        let e2: f64 = cols[5].parse().unwrap();
        let exact = 1.0 + (2 * n + 1) as f64;
        assert!((e2 - exact).abs() / exact < 1e-4, "n={n}: {e2}");
    }
}

#[test]
fn route_disagreement_exits_one() {
    // An unattainable tolerance makes the two spin-0 routes "disagree".
    let cfg = config("strict.json", r#"{"spin0": {"grid_n": 64, "n_max": 1}, "tolerance": {"spin0": 1e-15}}"#);
    let o = kdp(&["--config", cfg.to_str().unwrap(), "spectrum", "--spin", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disagree"));
}

#[test]
fn route_unavailable_for_spin_is_config_error() {
    assert_eq!(kdp(&["spectrum", "--spin", "0", "--route", "fourth-order"]).status.code(), Some(2));
}

#[test]
fn currents_writes_rational_pairs() {
    let out = std::env::temp_dir().join(format!("kdp-currents-{}.json", std::process::id()));
    let cfg = config(
        "modes.json",
        r#"{"spins": [1], "samples": 50,
            "modes": [{"momentum": [1, 0, 0], "frequency": "positive", "amplitude": [2, 3]},
                      {"momentum": [0, 1, 0], "frequency": "negative", "polarization": 1}]}"#,
    );
    let o = kdp(&["--config", cfg.to_str().unwrap(), "--seed", "11", "--jobs", "1", "--out", out.to_str().unwrap(), "currents"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let report = &v[0];
    assert_eq!(report["passed"], true);
    assert_eq!(report["modes"], 2);
    assert!(report["min_s0"].as_f64().unwrap() >= 0.0);
}
