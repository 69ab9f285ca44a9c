//! End-to-end tests of the `paintwave` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paintwave_cli::output::{parse_cell, parse_grid_layer_csv};
use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_paintwave");

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("PAINTWAVE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const REFERENCE_DESIGN: &str = r#"{"antenna": {"f_r": "150GHz", "eps_s": 1.03, "h_s": "10um", "eps_p": 4.5369, "n_p": 2.13, "z_in": 50}}"#;

#[test]
fn synth_reports_patch_dimensions_in_micrometres() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", REFERENCE_DESIGN);
    let out_dir = dir.path().join("out");
    let out = run(&["synth", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    let report = stdout_json(&out);
    assert_eq!(report["units"], "um");
    assert_eq!(report["L_p"].as_f64().unwrap(), 411.9);
    assert_eq!(report["W_f"].as_f64().unwrap(), 48.35);
    assert_eq!(report["L_s"].as_f64().unwrap(), 823.8);
    let written: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("synth.json")).unwrap()).unwrap();
    assert_eq!(written, report);
    assert!(String::from_utf8_lossy(&out.stderr).contains("L_p"));
}

#[test]
fn synth_units_rescale_the_same_dimensions() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", REFERENCE_DESIGN);
    let um = stdout_json(&run(&["synth", "--config", cfg.to_str().unwrap(), "--units", "um"]));
    let mm = stdout_json(&run(&["synth", "--config", cfg.to_str().unwrap(), "--units", "mm"]));
    assert_eq!(mm["units"], "mm");
    for key in ["W_p", "L_p", "L_eff", "W_f", "L_f", "W_s", "L_s"] {
        let a = um[key].as_f64().unwrap();
        let b = mm[key].as_f64().unwrap();
        assert!((a / 1000.0 - b).abs() <= 1e-12 * a.abs(), "{key}: {a} um vs {b} mm");
    }
    assert_eq!(um["B1"], mm["B1"]);
}

#[test]
fn synth_without_resonant_frequency_exits_2_naming_the_field() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"antenna": {"eps_s": 1.03, "h_s": "10um"}}"#);
    let out = run(&["synth", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f_r"));
}

#[test]
fn invalid_scene_exits_2_and_unreadable_config_exits_4() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"scene": {"burial_depth": "9mm"}}"#);
    let out = run(&["link", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("burial_depth"));

    let missing = dir.path().join("nope.json");
    let out = run(&["link", "--config", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn link_total_is_the_power_sum_of_reported_paths() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", "{}");
    let report = stdout_json(&run(&["link", "--config", cfg.to_str().unwrap(), "--beta-t", "0", "--beta-r", "180"]));
    let paths = report["paths"].as_array().unwrap();
    assert_eq!(paths.len(), 5);
    let sum: f64 = paths
        .iter()
        .map(|p| 10f64.powf(p["received_power_dbm"].as_f64().unwrap() / 10.0))
        .sum();
    let total = report["total_received_power_dbm"].as_f64().unwrap();
    assert!((10.0 * sum.log10() - total).abs() < 1e-9);
}

#[test]
fn link_marks_unformable_paths_absent_in_a_thin_separation() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"scene": {"los_distance": "1mm", "burial_depth": "2.5mm"}}"#);
    let report = stdout_json(&run(&["link", "--config", cfg.to_str().unwrap()]));
    for p in report["paths"].as_array().unwrap() {
        let kind = p["kind"].as_str().unwrap();
        let expect = kind == "DW";
        assert_eq!(p["exists"].as_bool().unwrap(), expect, "{kind}");
        if !expect {
            assert_eq!(p["received_power_dbm"], "-inf");
            assert!(p["path_loss_db"].is_null());
        }
    }
}

#[test]
fn no_path_exits_3() {
    // The direct wave forms in every valid scene, so the no-path code is only
    // reachable through the library error mapping.
    let err = paintwave_cli::CliError::from(paintwave_core::Error::NoPath);
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn unwritable_output_directory_exits_4() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", "{}");
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out_dir = blocker.join("sub");
    let out = run(&["sweep-boresight", "--config", cfg.to_str().unwrap(), "--step", "45", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["sweep-depth", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn coarse_boresight_sweep_writes_every_layer() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", "{}");
    let out_dir = dir.path().join("out");
    let out = run(&["sweep-boresight", "--config", cfg.to_str().unwrap(), "--step", "45", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    for slug in ["dw", "rw_a", "rw_d", "lw_a", "lw_d", "total"] {
        let csv = fs::read_to_string(out_dir.join(format!("boresight_{slug}.csv"))).unwrap();
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
        let rows = parse_grid_layer_csv(&csv).expect("well-formed CSV");
        assert_eq!(rows.len(), 64, "{slug}");

        let pgm = fs::read_to_string(out_dir.join(format!("heatmap_{slug}.pgm"))).unwrap();
        let mut lines = pgm.lines();
        assert_eq!(lines.next(), Some("P2"));
        assert_eq!(lines.next(), Some("8 8"));
        assert_eq!(lines.next(), Some("255"));
        assert_eq!(lines.count(), 8);
        let side: Value =
            serde_json::from_str(&fs::read_to_string(out_dir.join(format!("heatmap_{slug}.json"))).unwrap()).unwrap();
        let min = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
        assert_eq!(side["min_dbm"].as_f64().unwrap(), min);
    }
}

#[test]
fn extrema_json_matches_recomputation_from_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"scene": {"burial_depth": "0.6mm"}}"#);
    let out_dir = dir.path().join("out");
    let out = run(&["sweep-boresight", "--config", cfg.to_str().unwrap(), "--step", "10", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let ex: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("extrema.json")).unwrap()).unwrap();
    for slug in ["dw", "rw_a", "rw_d", "lw_a", "lw_d", "total"] {
        let rows = parse_grid_layer_csv(&fs::read_to_string(out_dir.join(format!("boresight_{slug}.csv"))).unwrap()).unwrap();
        // Rows are in (β_T, β_R) order; first strict improvement wins ties.
        let mut best = rows[0];
        let mut worst = rows[0];
        for &r in &rows {
            if r.2 > best.2 {
                best = r;
            }
            if r.2 < worst.2 {
                worst = r;
            }
        }
        let e = &ex["layers"][slug];
        assert_eq!(e["max_dbm"].as_f64().unwrap(), best.2, "{slug}");
        assert_eq!(e["argmax"]["beta_t_deg"].as_f64().unwrap(), best.0);
        assert_eq!(e["argmax"]["beta_r_deg"].as_f64().unwrap(), best.1);
        assert_eq!(e["min_dbm"].as_f64().unwrap(), worst.2, "{slug}");
        assert_eq!(e["argmin"]["beta_t_deg"].as_f64().unwrap(), worst.0);
        assert_eq!(e["argmin"]["beta_r_deg"].as_f64().unwrap(), worst.1);
    }
}

#[test]
fn sweep_is_byte_identical_across_runs_and_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", "{}");
    let mut dirs = Vec::new();
    for threads in ["1", "3", "1"] {
        let out_dir = dir.path().join(format!("out{}", dirs.len()));
        let out = run(&[
            "sweep-boresight", "--config", cfg.to_str().unwrap(), "--step", "30",
            "--threads", threads, "--out", out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        dirs.push(out_dir);
    }
    let mut names: Vec<_> = fs::read_dir(&dirs[0]).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 19);
    for name in &names {
        let a = fs::read(dirs[0].join(name)).unwrap();
        for other in &dirs[1..] {
            assert_eq!(a, fs::read(other.join(name)).unwrap(), "{name:?}");
        }
    }
}

#[test]
fn threads_fall_back_to_the_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", "{}");
    let out = Command::new(BIN)
        .args(["sweep-boresight", "--config", cfg.to_str().unwrap(), "--step", "90"])
        .args(["--out", dir.path().join("o").to_str().unwrap()])
        .env("PAINTWAVE_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "zero threads is a validation error");
}

#[test]
fn depth_sweep_direct_column_is_constant() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"beta_t": 265, "beta_r": 85}"#);
    let out_dir = dir.path().join("out");
    let out = run(&["sweep-depth", "--config", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(out_dir.join("depth_sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("h_a_mm,rp_dw,rp_rwa,rp_rwd,rp_lwa,rp_lwd,rp_total"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| parse_cell(c).unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 39);
    assert_eq!(rows[0][0], 0.6);
    assert_eq!(rows[38][0], 4.4);
    for r in &rows {
        assert_eq!(r.len(), 7);
        assert!((r[1] - rows[0][1]).abs() < 1e-9);
        assert_eq!(r[1], -72.03);
    }
}

#[test]
fn custom_pattern_file_is_resolved_next_to_the_config() {
    let dir = TempDir::new().unwrap();
    let mut csv = String::from("angle_deg,gain_dbi\n");
    for i in 0..36 {
        csv.push_str(&format!("{},{}\n", i * 10, 2.0));
    }
    fs::write(dir.path().join("flat.csv"), csv).unwrap();
    let cfg = write_config(dir.path(), "a.json", r#"{"pattern": "flat.csv"}"#);
    let report = stdout_json(&run(&["link", "--config", cfg.to_str().unwrap()]));
    for p in report["paths"].as_array().unwrap() {
        assert_eq!(p["gain_t_dbi"].as_f64().unwrap(), 2.0);
        assert_eq!(p["gain_r_dbi"].as_f64().unwrap(), 2.0);
    }
}
