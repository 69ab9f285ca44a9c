//! Text encodings of results: CSV tables, PGM heatmaps and JSON reports.
//!
//! All numbers go through [`format_sig`] (6 significant digits, `.` decimal
//! separator); the `-inf` sentinel of absent paths is written literally.

use std::fmt::Write as _;
use std::path::Path;

use paintwave_core::geometry::PathGeometry;
use paintwave_core::sweep::{BoresightGrid, DepthSeries, Extrema, Layer, LayerExtrema};
use serde_json::{json, Value};

use crate::CliError;

pub const CSV_SIG_DIGITS: usize = 6;

/// Formats `v` with `sig` significant digits in fixed notation.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == f64::NEG_INFINITY {
        return "-inf".into();
    }
    if v == f64::INFINITY {
        return "inf".into();
    }
    if v == 0.0 {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// The value a reader recovers from the CSV representation of `v`.
pub fn quantize(v: f64) -> f64 {
    parse_cell(&format_sig(v, CSV_SIG_DIGITS)).expect("formatted numbers parse")
}

/// Parses one CSV cell, accepting the `-inf` sentinel.
pub fn parse_cell(text: &str) -> Option<f64> {
    match text {
        "-inf" => Some(f64::NEG_INFINITY),
        t => t.parse().ok(),
    }
}

/// Rounds to `sig` significant digits.
pub fn round_sig(v: f64, sig: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", sig.saturating_sub(1), v)
        .parse()
        .expect("scientific notation parses")
}

/// JSON number, or the string `"-inf"` / `"inf"` for infinities.
pub fn json_number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(format_sig(v, 1))
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn ensure_dir(path: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

/// One layer of a grid as `beta_t_deg,beta_r_deg,rp_dbm`, rows ordered by β_T then β_R.
pub fn grid_layer_csv(grid: &BoresightGrid, layer: Layer) -> String {
    let n = grid.size();
    let mut out = String::with_capacity(n * n * 24);
    out.push_str("beta_t_deg,beta_r_deg,rp_dbm\n");
    for i_t in 0..n {
        for i_r in 0..n {
            let v = grid.value(layer, i_t, i_r);
            let _ = writeln!(
                out,
                "{},{},{}",
                grid.beta(i_t),
                grid.beta(i_r),
                format_sig(v, CSV_SIG_DIGITS)
            );
        }
    }
    out
}

/// Reads a layer CSV back into `(β_T, β_R, value)` rows.
pub fn parse_grid_layer_csv(text: &str) -> Option<Vec<(f64, f64, f64)>> {
    let mut lines = text.lines();
    if lines.next()? != "beta_t_deg,beta_r_deg,rp_dbm" {
        return None;
    }
    lines
        .map(|l| {
            let mut c = l.split(',');
            let row = (parse_cell(c.next()?)?, parse_cell(c.next()?)?, parse_cell(c.next()?)?);
            c.next().is_none().then_some(row)
        })
        .collect()
}

/// Finite range of a layer, `None` when no cell is finite.
pub fn finite_range(values: &[f64]) -> Option<(f64, f64)> {
    values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

/// Grayscale pixel for `v` on the `[min, max]` range. Constant layers and
/// non-finite cells map to 0.
pub fn pixel(v: f64, min: f64, max: f64) -> u8 {
    if !v.is_finite() || max == min {
        return 0;
    }
    (255.0 * (v - min) / (max - min)).round().clamp(0.0, 255.0) as u8
}

/// ASCII PGM (P2) heatmap: x axis β_T, y axis β_R, first row is β_R = 0.
pub fn grid_layer_pgm(grid: &BoresightGrid, layer: Layer) -> String {
    let n = grid.size();
    let values = grid.layer(layer);
    let (min, max) = finite_range(values).unwrap_or((0.0, 0.0));
    let mut out = format!("P2\n{n} {n}\n255\n");
    for i_r in 0..n {
        let row: Vec<String> = (0..n)
            .map(|i_t| pixel(grid.value(layer, i_t, i_r), min, max).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Sidecar describing the value range of a heatmap.
pub fn heatmap_sidecar(grid: &BoresightGrid, layer: Layer) -> Value {
    let range = finite_range(grid.layer(layer));
    let (min, max) = range.unwrap_or((f64::NEG_INFINITY, f64::NEG_INFINITY));
    json!({
        "layer": layer.slug(),
        "width": grid.size(),
        "height": grid.size(),
        "x_axis": "beta_t_deg",
        "y_axis": "beta_r_deg",
        "step_deg": grid.step_deg(),
        "min_dbm": json_number(min),
        "max_dbm": json_number(max),
    })
}

fn layer_extrema_json(e: &LayerExtrema) -> Value {
    json!({
        "max_dbm": json_number(e.max_dbm),
        "argmax": {"beta_t_deg": e.argmax_deg.0, "beta_r_deg": e.argmax_deg.1},
        "min_dbm": json_number(e.min_dbm),
        "argmin": {"beta_t_deg": e.argmin_deg.0, "beta_r_deg": e.argmin_deg.1},
    })
}

pub fn extrema_json(ex: &Extrema, step_deg: f64, burial_depth_m: f64) -> Value {
    let layers: serde_json::Map<String, Value> = ex
        .layers
        .iter()
        .map(|e| (e.layer.slug().to_string(), layer_extrema_json(e)))
        .collect();
    json!({
        "step_deg": step_deg,
        "burial_depth_mm": burial_depth_m * 1e3,
        "layers": layers,
    })
}

pub const DEPTH_CSV_HEADER: &str = "h_a_mm,rp_dw,rp_rwa,rp_rwd,rp_lwa,rp_lwd,rp_total";

pub fn depth_series_csv(series: &DepthSeries) -> String {
    let columns: Vec<Vec<f64>> = Layer::ALL.iter().map(|&l| series.series(l)).collect();
    let mut out = String::from(DEPTH_CSV_HEADER);
    out.push('\n');
    for (row, depth) in series.depths.iter().enumerate() {
        out.push_str(&format_sig(depth * 1e3, CSV_SIG_DIGITS));
        for col in &columns {
            out.push(',');
            out.push_str(&format_sig(col[row], CSV_SIG_DIGITS));
        }
        out.push('\n');
    }
    out
}

pub fn geometry_json(g: &PathGeometry) -> Value {
    match g.rays {
        None => Value::Null,
        Some(r) => json!({
            "theta_deg": r.theta.map(f64::to_degrees),
            "seg_paint_mm": r.seg_paint * 1e3,
            "seg_second_mm": r.seg_second.map(|s| s * 1e3),
            "alpha_t_deg": r.alpha_t_deg,
            "alpha_r_deg": r.alpha_r_deg,
        }),
    }
}
