//! Structural properties of full boresight sweeps under the built-in pattern.

use paintwave_core::antenna::{default_pattern, DEFAULT_PEAK_ANGLE_DEG};
use paintwave_core::geometry::{path_geometry, PathKind, Scene};
use paintwave_core::materials::MaterialSet;
use paintwave_core::sweep::{boresight_sweep, extrema, BoresightGrid, Layer};
use paintwave_core::wrap_degrees;

fn scene(h_a: f64) -> Scene {
    Scene::new(5e-3, h_a, 0.05, 150e9, 10.0, MaterialSet::default()).unwrap()
}

/// Circular distance between two angles, degrees.
fn angle_gap(a: f64, b: f64) -> f64 {
    let d = wrap_degrees(a - b);
    d.min(360.0 - d)
}

fn separability_residual(grid: &BoresightGrid, layer: Layer, q: [usize; 4]) -> f64 {
    let [b1, b2, c1, c2] = q;
    grid.value(layer, b1, c1) - grid.value(layer, b1, c2) - grid.value(layer, b2, c1)
        + grid.value(layer, b2, c2)
}

#[test]
fn single_path_layers_are_separable() {
    let pat = default_pattern();
    let grid = boresight_sweep(&scene(2.5e-3), &pat, &pat, 10.0).unwrap();
    let n = grid.size();
    // deterministic spread of quadruples over the grid
    let mut state = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % n as u64) as usize
    };
    for _ in 0..200 {
        let q = [next(), next(), next(), next()];
        for kind in PathKind::ALL {
            let r = separability_residual(&grid, Layer::Path(kind), q);
            assert!(r.abs() < 1e-9, "{kind} {q:?}: {r}");
        }
    }
}

#[test]
fn total_dominates_each_path() {
    let pat = default_pattern();
    let grid = boresight_sweep(&scene(0.6e-3), &pat, &pat, 6.0).unwrap();
    let total = grid.layer(Layer::Total);
    for kind in PathKind::ALL {
        let layer = grid.layer(Layer::Path(kind));
        assert!(layer.iter().zip(total).all(|(p, t)| t >= p));
    }
    let ex = extrema(&grid);
    for kind in PathKind::ALL {
        let e = ex.get(Layer::Path(kind));
        assert!(ex.get(Layer::Total).max_dbm >= e.max_dbm);
        assert!(ex.get(Layer::Total).min_dbm >= e.min_dbm);
        assert!(e.max_dbm >= e.min_dbm);
    }
}

#[test]
fn argmax_aligns_pattern_peak_with_path_directions() {
    let pat = default_pattern();
    let s = scene(2.5e-3);
    let step = 1.0;
    let grid = boresight_sweep(&s, &pat, &pat, step).unwrap();
    let ex = extrema(&grid);
    for g in path_geometry(&s) {
        let rays = g.rays.expect("all five paths exist at the reference geometry");
        let predicted_t = wrap_degrees(rays.alpha_t_deg - DEFAULT_PEAK_ANGLE_DEG);
        let predicted_r = wrap_degrees(rays.alpha_r_deg - DEFAULT_PEAK_ANGLE_DEG);
        let (bt, br) = ex.get(Layer::Path(g.kind)).argmax_deg;
        assert!(angle_gap(bt, predicted_t) <= step, "{}: β_T {bt} vs {predicted_t}", g.kind);
        assert!(angle_gap(br, predicted_r) <= step, "{}: β_R {br} vs {predicted_r}", g.kind);
    }
}

#[test]
fn lateral_air_wave_drives_the_best_total_near_the_air_side() {
    // With the transceivers close to the air-paint interface the lateral air
    // wave is ~18 dB stronger than any other path, so the best total sits on
    // the LW-A optimum.
    let pat = default_pattern();
    let ex = extrema(&boresight_sweep(&scene(0.6e-3), &pat, &pat, 1.0).unwrap());
    let total = ex.get(Layer::Total);
    let lw_a = ex.get(Layer::Path(PathKind::LateralAir));
    assert!(total.max_dbm - lw_a.max_dbm < 0.1, "{} vs {}", total.max_dbm, lw_a.max_dbm);
    assert!(angle_gap(total.argmax_deg.0, lw_a.argmax_deg.0) <= 1.0);
    assert!(angle_gap(total.argmax_deg.1, lw_a.argmax_deg.1) <= 1.0);
}

#[test]
#[ignore = "fails under the default paint absorption: at 2.5 mm the direct and reflected \
            waves together outweigh the lateral air wave (total -67.17 dBm vs LW-A -69.27 dBm)"]
fn mid_depth_total_optimum_matches_lateral_optimum() {
    let pat = default_pattern();
    let ex = extrema(&boresight_sweep(&scene(2.5e-3), &pat, &pat, 1.0).unwrap());
    let total = ex.get(Layer::Total);
    let lw_a = ex.get(Layer::Path(PathKind::LateralAir));
    assert!(total.max_dbm - lw_a.max_dbm < 0.1, "{} vs {}", total.max_dbm, lw_a.max_dbm);
    assert!(angle_gap(total.argmax_deg.0, lw_a.argmax_deg.0) <= 1.0);
    assert!(angle_gap(total.argmax_deg.1, lw_a.argmax_deg.1) <= 1.0);
}
