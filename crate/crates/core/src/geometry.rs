//! Ray geometry of the five propagation paths between two transceivers buried
//! at equal depth in the paint layer.
//!
//! World frame: `+x` points from the transmitter to the receiver, `+y` points up
//! toward the air–paint interface. Directions are bearings in degrees measured
//! counter-clockwise from `+x`. `alpha_t` is the departure bearing of the ray at
//! the transmitter; `alpha_r` is the bearing, seen from the receiver, toward
//! which the arriving ray points back (for the direct wave this is 180°). With
//! both transceivers at the same depth every path is mirror-symmetric about the
//! perpendicular bisector, so `alpha_r = 180° − alpha_t`.

use std::fmt;

use serde::Serialize;

use crate::materials::MaterialSet;
use crate::{wrap_degrees, Error, Result};

/// One of the five propagation paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PathKind {
    /// Line-of-sight wave inside the paint.
    #[serde(rename = "DW")]
    Direct,
    /// Reflection off the air–paint interface.
    #[serde(rename = "RW_A")]
    ReflectedAir,
    /// Reflection off the paint–drywall interface.
    #[serde(rename = "RW_D")]
    ReflectedDrywall,
    /// Lateral wave running through the air along the air–paint interface.
    #[serde(rename = "LW_A")]
    LateralAir,
    /// Lateral wave running through the drywall along the paint–drywall interface.
    #[serde(rename = "LW_D")]
    LateralDrywall,
}

impl PathKind {
    pub const ALL: [PathKind; 5] = [
        PathKind::Direct,
        PathKind::ReflectedAir,
        PathKind::ReflectedDrywall,
        PathKind::LateralAir,
        PathKind::LateralDrywall,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PathKind::Direct => "DW",
            PathKind::ReflectedAir => "RW_A",
            PathKind::ReflectedDrywall => "RW_D",
            PathKind::LateralAir => "LW_A",
            PathKind::LateralDrywall => "LW_D",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_reflected(self) -> bool {
        matches!(self, PathKind::ReflectedAir | PathKind::ReflectedDrywall)
    }

    pub fn is_lateral(self) -> bool {
        matches!(self, PathKind::LateralAir | PathKind::LateralDrywall)
    }
}

impl fmt::Display for PathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Physical layout of one link.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    paint_thickness: f64,
    burial_depth: f64,
    los_distance: f64,
    frequency: f64,
    tx_power_dbm: f64,
    materials: MaterialSet,
}

impl Scene {
    /// Builds a validated scene.
    ///
    /// * `paint_thickness` – `h_P`, m
    /// * `burial_depth` – `h_A`, depth of both transceivers below the air–paint interface, m
    /// * `los_distance` – `h_D`, horizontal transceiver separation, m
    /// * `frequency` – Hz
    /// * `tx_power_dbm` – transmit power, dBm
    pub fn new(
        paint_thickness: f64,
        burial_depth: f64,
        los_distance: f64,
        frequency: f64,
        tx_power_dbm: f64,
        materials: MaterialSet,
    ) -> Result<Self> {
        positive("paint_thickness", paint_thickness)?;
        positive("burial_depth", burial_depth)?;
        positive("los_distance", los_distance)?;
        positive("frequency", frequency)?;
        if !tx_power_dbm.is_finite() {
            return Err(Error::validation("tx_power_dbm", "must be finite"));
        }
        if burial_depth >= paint_thickness {
            return Err(Error::validation(
                "burial_depth",
                format!(
                    "must lie strictly inside the paint layer (0, {} m), got {} m",
                    paint_thickness, burial_depth
                ),
            ));
        }
        materials.validate()?;
        Ok(Scene {
            paint_thickness,
            burial_depth,
            los_distance,
            frequency,
            tx_power_dbm,
            materials,
        })
    }

    /// The reference scenario: 5 mm paint, 2.5 mm depth, 5 cm separation, 150 GHz, 10 dBm.
    pub fn reference(materials: MaterialSet) -> Result<Self> {
        Scene::new(5e-3, 2.5e-3, 0.05, 150e9, 10.0, materials)
    }

    /// Same scene with a different burial depth.
    pub fn with_burial_depth(&self, burial_depth: f64) -> Result<Self> {
        Scene::new(
            self.paint_thickness,
            burial_depth,
            self.los_distance,
            self.frequency,
            self.tx_power_dbm,
            self.materials.clone(),
        )
    }

    pub fn paint_thickness(&self) -> f64 {
        self.paint_thickness
    }

    pub fn burial_depth(&self) -> f64 {
        self.burial_depth
    }

    /// Distance from the transceivers down to the paint–drywall interface.
    pub fn depth_above_drywall(&self) -> f64 {
        self.paint_thickness - self.burial_depth
    }

    pub fn los_distance(&self) -> f64 {
        self.los_distance
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn tx_power_dbm(&self) -> f64 {
        self.tx_power_dbm
    }

    pub fn materials(&self) -> &MaterialSet {
        &self.materials
    }
}

fn positive(field: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(field, format!("must be positive and finite, got {v}")))
    }
}

/// Critical angle `asin(n_lo / n_hi)` for light inside `n_hi`, radians.
pub fn critical_angle(n_hi: f64, n_lo: f64) -> Result<f64> {
    if !(n_lo > 0.0 && n_hi.is_finite()) {
        return Err(Error::validation("n_lo", "must be positive"));
    }
    if n_lo > n_hi {
        return Err(Error::validation(
            "n_lo",
            format!("{n_lo} exceeds n_hi = {n_hi}; no total internal reflection"),
        ));
    }
    Ok((n_lo / n_hi).asin())
}

/// Ray parameters of a path that exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rays {
    /// Incidence angle at the interface from its normal, radians. `None` for the direct wave.
    pub theta: Option<f64>,
    /// One-way paint segment (`h_R` or `h_L1`); the full separation for the direct wave, m.
    pub seg_paint: f64,
    /// Run through the second medium along the interface (`h_L2`), lateral paths only, m.
    pub seg_second: Option<f64>,
    pub alpha_t_deg: f64,
    pub alpha_r_deg: f64,
}

/// Geometry of one path; `rays` is `None` when the path does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathGeometry {
    pub kind: PathKind,
    pub rays: Option<Rays>,
}

impl PathGeometry {
    pub fn exists(&self) -> bool {
        self.rays.is_some()
    }

    fn absent(kind: PathKind) -> Self {
        PathGeometry { kind, rays: None }
    }
}

/// Evaluates the geometry of all five paths, in [`PathKind::ALL`] order.
/// Paths that cannot form are returned with `rays = None`.
pub fn path_geometry(scene: &Scene) -> [PathGeometry; 5] {
    let m = scene.materials();
    let n_p = m.paint.refractive_index;
    // MaterialSet validation guarantees paint is the densest medium.
    let theta_c_ap = critical_angle(n_p, m.air.refractive_index).expect("validated materials");
    let theta_c_pd = critical_angle(n_p, m.drywall.refractive_index).expect("validated materials");
    let h_d = scene.los_distance();
    let up = scene.burial_depth();
    let down = scene.depth_above_drywall();

    [
        PathGeometry {
            kind: PathKind::Direct,
            rays: Some(Rays {
                theta: None,
                seg_paint: h_d,
                seg_second: None,
                alpha_t_deg: 0.0,
                alpha_r_deg: 180.0,
            }),
        },
        reflected(PathKind::ReflectedAir, up, h_d, theta_c_ap, true),
        reflected(PathKind::ReflectedDrywall, down, h_d, theta_c_pd, false),
        lateral(PathKind::LateralAir, up, h_d, theta_c_ap, true),
        lateral(PathKind::LateralDrywall, down, h_d, theta_c_pd, false),
    ]
}

/// Bearings for a ray leaving at `theta` from the interface normal, upward or downward.
fn bearings(theta: f64, upward: bool) -> (f64, f64) {
    let elevation = 90.0 - theta.to_degrees();
    let alpha_t = if upward {
        elevation
    } else {
        wrap_degrees(-elevation)
    };
    (alpha_t, wrap_degrees(180.0 - alpha_t))
}

fn reflected(kind: PathKind, depth: f64, h_d: f64, theta_c: f64, upward: bool) -> PathGeometry {
    // Equal depths put the specular point at the horizontal midpoint.
    let half = 0.5 * h_d;
    let theta = half.atan2(depth);
    if theta <= theta_c {
        return PathGeometry::absent(kind);
    }
    let (alpha_t_deg, alpha_r_deg) = bearings(theta, upward);
    PathGeometry {
        kind,
        rays: Some(Rays {
            theta: Some(theta),
            seg_paint: depth.hypot(half),
            seg_second: None,
            alpha_t_deg,
            alpha_r_deg,
        }),
    }
}

fn lateral(kind: PathKind, depth: f64, h_d: f64, theta_c: f64, upward: bool) -> PathGeometry {
    let seg_second = h_d - 2.0 * depth * theta_c.tan();
    if seg_second < 0.0 {
        return PathGeometry::absent(kind);
    }
    let (alpha_t_deg, alpha_r_deg) = bearings(theta_c, upward);
    PathGeometry {
        kind,
        rays: Some(Rays {
            theta: Some(theta_c),
            seg_paint: depth / theta_c.cos(),
            seg_second: Some(seg_second),
            alpha_t_deg,
            alpha_r_deg,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn scene(h_a: f64, h_d: f64) -> Scene {
        Scene::new(5e-3, h_a, h_d, 150e9, 10.0, MaterialSet::default()).unwrap()
    }

    /// Horizontal distance covered by walking the rays of a path, m.
    fn walked_distance(g: &PathGeometry) -> f64 {
        let r = g.rays.unwrap();
        match r.theta {
            None => r.seg_paint,
            Some(t) => 2.0 * r.seg_paint * t.sin() + r.seg_second.unwrap_or(0.0),
        }
    }

    #[test]
    fn critical_angles() {
        assert_relative_eq!(critical_angle(2.13, 1.0).unwrap().to_degrees(), 28.0008, epsilon = 1e-4);
        assert_relative_eq!(critical_angle(2.13, 1.61).unwrap().to_degrees(), 49.1013, epsilon = 1e-4);
        assert_eq!(critical_angle(1.7, 1.7).unwrap(), std::f64::consts::FRAC_PI_2);
        assert!(critical_angle(1.0, 2.13).is_err());
    }

    #[test]
    fn scene_validation() {
        let m = MaterialSet::default();
        assert!(Scene::new(5e-3, 5e-3, 0.05, 150e9, 10.0, m.clone()).is_err());
        assert!(Scene::new(5e-3, 0.0, 0.05, 150e9, 10.0, m.clone()).is_err());
        assert!(Scene::new(5e-3, 1e-3, 0.0, 150e9, 10.0, m.clone()).is_err());
        assert!(Scene::new(5e-3, 1e-3, 0.05, -1.0, 10.0, m.clone()).is_err());
        let mut bad = m;
        bad.paint.refractive_index = 1.0;
        let err = Scene::new(5e-3, 1e-3, 0.05, 150e9, 10.0, bad).unwrap_err();
        assert_eq!(err.to_string(), "paint.n must exceed air.n");
    }

    #[test]
    fn direct_wave() {
        let g = path_geometry(&scene(2.5e-3, 0.05))[0];
        assert_eq!(g.kind, PathKind::Direct);
        let r = g.rays.unwrap();
        assert_eq!(r.seg_paint, 0.05);
        assert_eq!((r.alpha_t_deg, r.alpha_r_deg), (0.0, 180.0));
        assert_eq!(r.theta, None);
    }

    #[test]
    fn reflected_air_reference() {
        let g = path_geometry(&scene(2.5e-3, 0.05))[1];
        assert_eq!(g.kind, PathKind::ReflectedAir);
        let r = g.rays.unwrap();
        assert_relative_eq!(r.theta.unwrap().to_degrees(), 84.2894, epsilon = 1e-4);
        // right-triangle oracle √(2.5² + 25²) mm
        assert_relative_eq!(r.seg_paint, 25.124_689e-3, max_relative = 1e-7);
        assert_relative_eq!(r.alpha_t_deg, 90.0 - 84.289_407, epsilon = 1e-5);
        assert_relative_eq!(r.alpha_r_deg, 90.0 + 84.289_407, epsilon = 1e-5);
    }

    #[test]
    fn lateral_air_reference() {
        let g = path_geometry(&scene(2.5e-3, 0.05))[3];
        let r = g.rays.unwrap();
        assert_eq!(r.theta, Some((1.0f64 / 2.13).asin()));
        // 50 − 2·2.5·tan(28.0008°) mm
        assert_relative_eq!(r.seg_second.unwrap(), 47.341_366e-3, max_relative = 1e-7);
        assert_relative_eq!(r.seg_paint, 2.831_446e-3, max_relative = 1e-6);
        assert_relative_eq!(r.alpha_t_deg, 61.999_22, epsilon = 1e-5);
        assert_relative_eq!(r.alpha_r_deg, 118.000_78, epsilon = 1e-5);
    }

    #[test]
    fn drywall_paths_point_down() {
        let geo = path_geometry(&scene(2.5e-3, 0.05));
        let rw_d = geo[2].rays.unwrap();
        let lw_d = geo[4].rays.unwrap();
        let theta_c = (1.61f64 / 2.13).asin();
        assert_relative_eq!(lw_d.alpha_t_deg, 270.0 + theta_c.to_degrees(), epsilon = 1e-9);
        assert_relative_eq!(lw_d.alpha_r_deg, 270.0 - theta_c.to_degrees(), epsilon = 1e-9);
        assert!(rw_d.alpha_t_deg > 270.0 && rw_d.alpha_r_deg < 270.0);
        assert_relative_eq!(
            lw_d.seg_second.unwrap(),
            0.05 - 2.0 * 2.5e-3 * theta_c.tan(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn colocated_limit_only_direct_exists() {
        let geo = path_geometry(&scene(2.5e-3, 1e-9));
        assert!(geo[0].exists());
        assert!(geo[1..].iter().all(|g| !g.exists()), "{geo:?}");
        // 1 mm is still too short for any bounce at 2.5 mm depth
        let geo = path_geometry(&scene(2.5e-3, 1e-3));
        assert!(geo[1..].iter().all(|g| !g.exists()));
    }

    #[test]
    fn lateral_path_at_tangency_exists() {
        let theta_c = (1.0f64 / 2.13).asin();
        let h_a = 2.5e-3;
        let h_d = 2.0 * h_a * theta_c.tan();
        let g = path_geometry(&scene(h_a, h_d))[3];
        assert!(g.exists());
        assert!(g.rays.unwrap().seg_second.unwrap().abs() < 1e-15);
    }

    #[test]
    fn lateral_alpha_is_depth_independent() {
        let a = path_geometry(&scene(0.6e-3, 0.05))[3].rays.unwrap().alpha_t_deg;
        let b = path_geometry(&scene(4.4e-3, 0.05))[3].rays.unwrap().alpha_t_deg;
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn ray_walk_closes(h_a in 1e-5f64..4.99e-3, h_d in 1e-4f64..0.2) {
            for g in path_geometry(&scene(h_a, h_d)).iter().filter(|g| g.exists()) {
                let d = walked_distance(g);
                prop_assert!(((d - h_d) / h_d).abs() < 1e-12, "{:?}: {d} vs {h_d}", g.kind);
                let r = g.rays.unwrap();
                prop_assert!(r.seg_paint > 0.0);
                prop_assert!(r.seg_second.is_none_or(|s| s >= 0.0));
            }
        }

        #[test]
        fn reflected_segment_is_pythagorean(h_a in 1e-5f64..4.99e-3, h_d in 1e-3f64..0.2) {
            let geo = path_geometry(&scene(h_a, h_d));
            for (g, depth) in [(geo[1], h_a), (geo[2], 5e-3 - h_a)] {
                if let Some(r) = g.rays {
                    let oracle = (depth * depth + h_d * h_d / 4.0).sqrt();
                    prop_assert!((r.seg_paint - oracle).abs() <= 1e-15 + 1e-13 * oracle);
                    prop_assert!(r.seg_paint >= depth);
                }
            }
        }

        #[test]
        fn mirror_symmetry(h_a in 1e-5f64..4.99e-3, h_d in 1e-3f64..0.2) {
            let base = scene(h_a, h_d);
            let mut swapped_m = MaterialSet::default();
            std::mem::swap(&mut swapped_m.air, &mut swapped_m.drywall);
            let swapped = Scene::new(5e-3, 5e-3 - h_a, h_d, 150e9, 10.0, swapped_m).unwrap();
            let a = path_geometry(&base);
            let b = path_geometry(&swapped);
            for (x, y) in [(1, 2), (2, 1), (3, 4), (4, 3)] {
                prop_assert_eq!(a[x].exists(), b[y].exists());
                if let (Some(p), Some(q)) = (a[x].rays, b[y].rays) {
                    // h_P − (h_P − h_A) is not bit-exact, so compare to rounding
                    prop_assert!((p.theta.unwrap() - q.theta.unwrap()).abs() < 1e-12);
                    prop_assert!((p.seg_paint - q.seg_paint).abs() <= 1e-12 * p.seg_paint);
                    if let (Some(s), Some(t)) = (p.seg_second, q.seg_second) {
                        prop_assert!((s - t).abs() <= 1e-12 * h_d);
                    } else {
                        prop_assert_eq!(p.seg_second, q.seg_second);
                    }
                    // mirrored about the x axis
                    prop_assert!((wrap_degrees(-p.alpha_t_deg) - q.alpha_t_deg).abs() < 1e-9
                        || (wrap_degrees(-p.alpha_t_deg) - q.alpha_t_deg).abs() > 360.0 - 1e-9);
                }
            }
        }

        #[test]
        fn reflected_elevation_grows_with_depth(h1 in 1e-4f64..4.8e-3, dh in 1e-5f64..1e-4) {
            let a = path_geometry(&scene(h1, 0.05))[1].rays.unwrap().alpha_t_deg;
            let b = path_geometry(&scene(h1 + dh, 0.05))[1].rays.unwrap().alpha_t_deg;
            prop_assert!(b > a);
        }
    }
}
