//! Path loss and received power for the five propagation paths.
//!
//! Every loss is spreading plus absorption in dB. Reflected waves add the
//! interface reflection loss; lateral waves add a second spreading and
//! absorption term for the run through air or drywall. Per-path received
//! powers are summed in the linear domain (incoherent power sum).

use std::f64::consts::PI;

use serde::Serialize;

use crate::antenna::GainPattern;
use crate::geometry::{path_geometry, PathGeometry, PathKind, Rays, Scene};
use crate::materials::{Medium, ReflectionModel};
use crate::{db_to_linear, linear_to_db, Error, Result, DB_PER_NEPER};

/// Absorption loss `10·log10(e^{K·h})`, dB.
#[inline]
fn absorption_db(k: f64, length: f64) -> f64 {
    DB_PER_NEPER * k * length
}

/// Direct-wave loss: free-space spreading at the paint wave speed plus paint absorption.
pub fn path_loss_direct(scene: &Scene) -> f64 {
    let f = scene.frequency();
    let paint = &scene.materials().paint;
    let h_d = scene.los_distance();
    let k_p = paint_absorption(scene);
    20.0 * (4.0 * PI * f * h_d / paint.speed()).log10() + absorption_db(k_p, h_d)
}

/// Reflected-wave loss for an existing RW_A or RW_D geometry.
pub fn path_loss_reflected(scene: &Scene, g: &PathGeometry) -> Result<f64> {
    let (rays, lower, reflection) = match g.kind {
        PathKind::ReflectedAir => (g.rays, &scene.materials().air, &scene.materials().reflection_ap),
        PathKind::ReflectedDrywall => (
            g.rays,
            &scene.materials().drywall,
            &scene.materials().reflection_pd,
        ),
        other => return Err(wrong_kind(other, "reflected")),
    };
    let rays = rays.ok_or(Error::MissingPath(g.kind.label()))?;
    reflected_loss(scene, &rays, lower, reflection)
}

fn reflected_loss(scene: &Scene, rays: &Rays, lower: &Medium, reflection: &ReflectionModel) -> Result<f64> {
    let f = scene.frequency();
    let paint = &scene.materials().paint;
    let h_r = rays.seg_paint;
    let theta = rays.theta.expect("reflected rays carry an incidence angle");
    let r = reflection.power_ratio(f, theta, paint.refractive_index, lower.refractive_index)?;
    Ok(20.0 * (8.0 * PI * f * h_r / paint.speed()).log10()
        + absorption_db(2.0 * paint_absorption(scene), h_r)
        - 10.0 * r.log10())
}

/// Lateral-wave loss for an existing LW_A or LW_D geometry.
///
/// The second-medium spreading term uses `max(h_L2, λ_i)` where `λ_i` is the
/// wavelength in that medium, so a zero-length run at the tangency distance
/// stays finite.
pub fn path_loss_lateral(scene: &Scene, g: &PathGeometry) -> Result<f64> {
    let second = match g.kind {
        PathKind::LateralAir => &scene.materials().air,
        PathKind::LateralDrywall => &scene.materials().drywall,
        other => return Err(wrong_kind(other, "lateral")),
    };
    let rays = g.rays.ok_or(Error::MissingPath(g.kind.label()))?;
    Ok(lateral_loss(scene, &rays, second))
}

fn lateral_loss(scene: &Scene, rays: &Rays, second: &Medium) -> f64 {
    let f = scene.frequency();
    let paint = &scene.materials().paint;
    let h_l1 = rays.seg_paint;
    let h_l2 = rays.seg_second.expect("lateral rays carry a second segment");
    let c_i = second.speed();
    let k_i = second
        .absorption_at(f)
        .expect("frequency validated by Scene");
    let spread_run = h_l2.max(c_i / f);
    20.0 * (8.0 * PI * f * h_l1 / paint.speed()).log10()
        + absorption_db(2.0 * paint_absorption(scene), h_l1)
        + 20.0 * (4.0 * PI * f * spread_run / c_i).log10()
        + absorption_db(k_i, h_l2)
}

/// Loss of any existing path.
pub fn path_loss(scene: &Scene, g: &PathGeometry) -> Result<f64> {
    match g.kind {
        PathKind::Direct => Ok(path_loss_direct(scene)),
        k if k.is_reflected() => path_loss_reflected(scene, g),
        _ => path_loss_lateral(scene, g),
    }
}

fn paint_absorption(scene: &Scene) -> f64 {
    scene
        .materials()
        .paint
        .absorption_at(scene.frequency())
        .expect("frequency validated by Scene")
}

fn wrong_kind(kind: PathKind, expected: &str) -> Error {
    Error::validation("path", format!("{kind} is not a {expected} path"))
}

/// Link budget of one path. Absent paths carry `received_power_dbm = -inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathResult {
    pub kind: PathKind,
    pub exists: bool,
    pub path_loss_db: Option<f64>,
    pub gain_t_dbi: Option<f64>,
    pub gain_r_dbi: Option<f64>,
    pub received_power_dbm: f64,
}

impl PathResult {
    fn absent(kind: PathKind) -> Self {
        PathResult {
            kind,
            exists: false,
            path_loss_db: None,
            gain_t_dbi: None,
            gain_r_dbi: None,
            received_power_dbm: f64::NEG_INFINITY,
        }
    }
}

/// Received power over one path for the given antenna orientations.
pub fn received_power_path(
    scene: &Scene,
    g: &PathGeometry,
    pattern_t: &GainPattern,
    beta_t_deg: f64,
    pattern_r: &GainPattern,
    beta_r_deg: f64,
) -> Result<PathResult> {
    if !g.exists() {
        return Ok(PathResult::absent(g.kind));
    }
    let loss = path_loss(scene, g)?;
    Ok(budget(scene.tx_power_dbm(), g, loss, pattern_t, beta_t_deg, pattern_r, beta_r_deg))
}

fn budget(
    tx_power_dbm: f64,
    g: &PathGeometry,
    loss: f64,
    pattern_t: &GainPattern,
    beta_t_deg: f64,
    pattern_r: &GainPattern,
    beta_r_deg: f64,
) -> PathResult {
    let rays = g.rays.expect("caller checked existence");
    let g_t = pattern_t.effective_gain(beta_t_deg, rays.alpha_t_deg);
    let g_r = pattern_r.effective_gain(beta_r_deg, rays.alpha_r_deg);
    PathResult {
        kind: g.kind,
        exists: true,
        path_loss_db: Some(loss),
        gain_t_dbi: Some(g_t),
        gain_r_dbi: Some(g_r),
        received_power_dbm: tx_power_dbm + g_t + g_r - loss,
    }
}

/// Power sum over the existing paths, dBm.
///
/// Summed relative to the strongest path, so the result is never below it
/// (exactly, in floating point) and weak paths cannot underflow the sum.
pub fn total_received_power(results: &[PathResult]) -> Result<f64> {
    let powers = || results.iter().filter(|r| r.exists).map(|r| r.received_power_dbm);
    let max = powers().reduce(f64::max).ok_or(Error::NoPath)?;
    if !max.is_finite() {
        return Ok(max);
    }
    let relative: f64 = powers().map(|p| db_to_linear(p - max)).sum();
    Ok(max + linear_to_db(relative))
}

/// All five paths plus their power sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkResult {
    pub per_path: [PathResult; 5],
    pub total_received_power_dbm: f64,
}

impl LinkResult {
    pub fn path(&self, kind: PathKind) -> &PathResult {
        &self.per_path[kind.index()]
    }
}

/// A scene with its orientation-independent quantities (geometry, losses) precomputed.
#[derive(Debug, Clone)]
pub struct LinkModel {
    scene: Scene,
    geometry: [PathGeometry; 5],
    losses: [Option<f64>; 5],
}

impl LinkModel {
    pub fn new(scene: Scene) -> Result<Self> {
        let geometry = path_geometry(&scene);
        let mut losses = [None; 5];
        for (slot, g) in losses.iter_mut().zip(&geometry) {
            if g.exists() {
                *slot = Some(path_loss(&scene, g)?);
            }
        }
        Ok(LinkModel {
            scene,
            geometry,
            losses,
        })
    }

    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    pub fn geometry(&self) -> &[PathGeometry; 5] {
        &self.geometry
    }

    pub fn losses(&self) -> &[Option<f64>; 5] {
        &self.losses
    }

    pub fn evaluate(
        &self,
        pattern_t: &GainPattern,
        beta_t_deg: f64,
        pattern_r: &GainPattern,
        beta_r_deg: f64,
    ) -> Result<LinkResult> {
        let p_t = self.scene.tx_power_dbm();
        let per_path: [PathResult; 5] = std::array::from_fn(|i| {
            let g = &self.geometry[i];
            match self.losses[i] {
                Some(loss) => budget(p_t, g, loss, pattern_t, beta_t_deg, pattern_r, beta_r_deg),
                None => PathResult::absent(g.kind),
            }
        });
        let total = total_received_power(&per_path)?;
        Ok(LinkResult {
            per_path,
            total_received_power_dbm: total,
        })
    }
}

/// Evaluates all paths of `scene` for one pair of orientations.
pub fn evaluate_link(
    scene: &Scene,
    pattern_t: &GainPattern,
    beta_t_deg: f64,
    pattern_r: &GainPattern,
    beta_r_deg: f64,
) -> Result<LinkResult> {
    LinkModel::new(scene.clone())?.evaluate(pattern_t, beta_t_deg, pattern_r, beta_r_deg)
}

/// Paint absorption coefficient (1/m) that makes the direct wave arrive at
/// `target_dbm` with end gains `gain_t_dbi` and `gain_r_dbi`. The scene's own
/// paint absorption is ignored.
pub fn calibrate_paint_absorption(scene: &Scene, target_dbm: f64, gain_t_dbi: f64, gain_r_dbi: f64) -> f64 {
    let f = scene.frequency();
    let h_d = scene.los_distance();
    let spreading = 20.0 * (4.0 * PI * f * h_d / scene.materials().paint.speed()).log10();
    let loss = scene.tx_power_dbm() + gain_t_dbi + gain_r_dbi - target_dbm;
    (loss - spreading) / (DB_PER_NEPER * h_d)
}
