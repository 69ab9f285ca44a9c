//! The four subcommands. Each takes a resolved [`RunConfig`], writes its
//! files, and returns the JSON document printed on stdout.

use std::path::PathBuf;

use paintwave_core::antenna::synthesize_patch;
use paintwave_core::channel::LinkModel;
use paintwave_core::sweep::{boresight_sweep, depth_sweep, extrema, Layer};
use paintwave_core::Error;
use serde_json::{json, Value};

use crate::output::{
    depth_series_csv, ensure_dir, extrema_json, format_sig, geometry_json, grid_layer_csv,
    grid_layer_pgm, heatmap_sidecar, json_number, quantize, round_sig, write_file,
};
use crate::run_config::RunConfig;
use crate::CliError;

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::validation("threads", "must be at least 1").into()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(Error::validation("threads", e.to_string())))?;
            Ok(pool.install(f))
        }
    }
}

/// Patch synthesis report; also written to `<out>/synth.json` when `write` is set.
pub fn synth(cfg: &RunConfig, write: bool) -> Result<Value, CliError> {
    let params = cfg
        .antenna
        .ok_or_else(|| Error::validation("antenna", "section is required (f_r, eps_s, h_s)"))?;
    let d = synthesize_patch(&params)?;
    let scale = cfg.units.per_meter();
    let len = |m: f64| round_sig(m * scale, 4);
    let report = json!({
        "units": cfg.units.label(),
        "W_p": len(d.patch_width),
        "L_p": len(d.patch_length),
        "L_eff": len(d.effective_length),
        "W_f": len(d.feed_width),
        "L_f": len(d.feed_length),
        "W_s": len(d.substrate_width),
        "L_s": len(d.substrate_length),
        "eps_eff": round_sig(d.eps_eff, 4),
        "eps_eff_p": round_sig(d.eps_eff_p, 4),
        "B1": round_sig(d.b1, 4),
        "B2": round_sig(d.b2, 4),
    });

    eprintln!("{:<10} {:>12}", "dimension", format!("size ({})", cfg.units.label()));
    for key in ["W_p", "L_p", "L_eff", "W_f", "L_f", "W_s", "L_s"] {
        eprintln!("{:<10} {:>12}", key, report[key]);
    }
    for key in ["eps_eff", "eps_eff_p", "B1", "B2"] {
        eprintln!("{:<10} {:>12}", key, report[key]);
    }

    if write {
        ensure_dir(&cfg.out)?;
        write_file(&cfg.out.join("synth.json"), &pretty(&report))?;
    }
    Ok(report)
}

/// Single-orientation link budget over all five paths.
pub fn link(cfg: &RunConfig, write: bool) -> Result<Value, CliError> {
    let pattern = cfg.pattern()?;
    let model = LinkModel::new(cfg.scene.clone())?;
    let result = model.evaluate(&pattern, cfg.beta_t_deg, &pattern, cfg.beta_r_deg)?;

    let paths: Vec<Value> = result
        .per_path
        .iter()
        .zip(model.geometry())
        .map(|(r, g)| {
            json!({
                "kind": r.kind.label(),
                "exists": r.exists,
                "geometry": geometry_json(g),
                "path_loss_db": r.path_loss_db,
                "gain_t_dbi": r.gain_t_dbi,
                "gain_r_dbi": r.gain_r_dbi,
                "received_power_dbm": json_number(r.received_power_dbm),
            })
        })
        .collect();
    let s = &cfg.scene;
    let report = json!({
        "scene": {
            "paint_thickness_mm": s.paint_thickness() * 1e3,
            "burial_depth_mm": s.burial_depth() * 1e3,
            "los_distance_mm": s.los_distance() * 1e3,
            "frequency_ghz": s.frequency() / 1e9,
            "tx_power_dbm": s.tx_power_dbm(),
        },
        "beta_t_deg": cfg.beta_t_deg,
        "beta_r_deg": cfg.beta_r_deg,
        "paths": paths,
        "total_received_power_dbm": result.total_received_power_dbm,
    });

    for r in &result.per_path {
        eprintln!("{:<5} {:>10} dBm", r.kind.label(), format_sig(r.received_power_dbm, 6));
    }
    eprintln!("total {:>10} dBm", format_sig(result.total_received_power_dbm, 6));

    if write {
        ensure_dir(&cfg.out)?;
        write_file(&cfg.out.join("link.json"), &pretty(&report))?;
    }
    Ok(report)
}

/// Full `(β_T, β_R)` grid: one CSV and one PGM heatmap (+ range sidecar) per
/// layer, plus `extrema.json`. Values are rounded to their CSV representation
/// before extrema and heatmaps are derived, so every file agrees with the CSVs.
pub fn sweep_boresight(cfg: &RunConfig, threads: Option<usize>) -> Result<Vec<PathBuf>, CliError> {
    let pattern = cfg.pattern()?;
    let grid = with_threads(threads, || {
        boresight_sweep(&cfg.scene, &pattern, &pattern, cfg.step_deg)
    })??
    .map_values(quantize);

    ensure_dir(&cfg.out)?;
    let mut written = Vec::new();
    for layer in Layer::ALL {
        let slug = layer.slug();
        let files = [
            (format!("boresight_{slug}.csv"), grid_layer_csv(&grid, layer)),
            (format!("heatmap_{slug}.pgm"), grid_layer_pgm(&grid, layer)),
            (format!("heatmap_{slug}.json"), pretty(&heatmap_sidecar(&grid, layer))),
        ];
        for (name, contents) in files {
            let path = cfg.out.join(name);
            write_file(&path, &contents)?;
            written.push(path);
        }
    }
    let ex = extrema(&grid);
    let path = cfg.out.join("extrema.json");
    write_file(&path, &pretty(&extrema_json(&ex, cfg.step_deg, cfg.scene.burial_depth())))?;
    written.push(path);

    for e in &ex.layers {
        eprintln!(
            "{:<6} max {:>10} dBm at ({}°, {}°)  min {:>10} dBm at ({}°, {}°)",
            e.layer.slug(),
            format_sig(e.max_dbm, 6),
            e.argmax_deg.0,
            e.argmax_deg.1,
            format_sig(e.min_dbm, 6),
            e.argmin_deg.0,
            e.argmin_deg.1
        );
    }
    Ok(written)
}

/// Received power versus burial depth at fixed orientations, `depth_sweep.csv`.
pub fn sweep_depth(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let pattern = cfg.pattern()?;
    let series = depth_sweep(
        &cfg.scene,
        &pattern,
        &pattern,
        cfg.beta_t_deg,
        cfg.beta_r_deg,
        &cfg.depths,
    )?;
    ensure_dir(&cfg.out)?;
    let path = cfg.out.join("depth_sweep.csv");
    write_file(&path, &depth_series_csv(&series))?;
    eprintln!(
        "{} depths at (β_T, β_R) = ({}°, {}°) -> {}",
        series.depths.len(),
        cfg.beta_t_deg,
        cfg.beta_r_deg,
        path.display()
    );
    Ok(path)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
