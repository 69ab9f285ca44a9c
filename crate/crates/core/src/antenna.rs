//! In-paint microstrip patch antenna: dimension synthesis and gain patterns.
//!
//! The patch sits on a thin low-permittivity substrate with the paint acting
//! as superstrate, so the guided wavelength is set by the wave speed in paint
//! `c_p = c / n_p` and by the superstrate-loaded effective permittivity.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{wrap_degrees, Error, Result, SPEED_OF_LIGHT};

/// Inputs to patch synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignParams {
    /// Resonant frequency in paint, Hz.
    pub resonant_frequency: f64,
    pub substrate_permittivity: f64,
    /// Substrate thickness, m.
    pub substrate_thickness: f64,
    /// Paint (superstrate) relative permittivity.
    pub superstrate_permittivity: f64,
    /// Paint refractive index, used for the wave speed in paint.
    pub superstrate_refractive_index: f64,
    /// Feed input impedance, ohms.
    pub input_impedance: f64,
}

impl DesignParams {
    /// Foam substrate under titanium-white paint, resonant at 150 GHz, 50 Ω feed.
    pub fn reference() -> Self {
        DesignParams {
            resonant_frequency: 150e9,
            substrate_permittivity: 1.03,
            substrate_thickness: 10e-6,
            superstrate_permittivity: 4.5369,
            superstrate_refractive_index: 2.13,
            input_impedance: 50.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("f_r", self.resonant_frequency, 0.0, false),
            ("h_s", self.substrate_thickness, 0.0, false),
            ("z_in", self.input_impedance, 0.0, false),
            ("n_p", self.superstrate_refractive_index, 0.0, false),
            ("eps_s", self.substrate_permittivity, 1.0, true),
            ("eps_p", self.superstrate_permittivity, 1.0, true),
        ];
        for (field, v, lo, inclusive) in checks {
            let ok = v.is_finite() && if inclusive { v >= lo } else { v > lo };
            if !ok {
                let bound = if inclusive { "at least" } else { "greater than" };
                return Err(Error::validation(field, format!("must be finite and {bound} {lo}, got {v}")));
            }
        }
        Ok(())
    }

    /// Wave speed in the paint, m/s.
    pub fn paint_wave_speed(&self) -> f64 {
        SPEED_OF_LIGHT / self.superstrate_refractive_index
    }

    fn width_ratio_term(&self, patch_width: f64) -> Result<f64> {
        let h = self.substrate_thickness;
        if !(patch_width / h > 1.0) {
            return Err(Error::validation(
                "patch_width",
                format!(
                    "W_p/h_s must exceed 1 for the effective-permittivity model, got {}",
                    patch_width / h
                ),
            ));
        }
        Ok((1.0 + 12.0 * h / patch_width).powf(-0.5))
    }
}

/// Effective permittivity of the bare microstrip (no superstrate).
pub fn effective_permittivity_bare(p: &DesignParams, patch_width: f64) -> Result<f64> {
    let es = p.substrate_permittivity;
    let w = p.width_ratio_term(patch_width)?;
    Ok((es + 1.0) / 2.0 + (es - 1.0) / 2.0 * w)
}

/// Effective permittivity with the paint as superstrate.
pub fn effective_permittivity_superstrate(p: &DesignParams, patch_width: f64) -> Result<f64> {
    let es = p.substrate_permittivity;
    let ep = p.superstrate_permittivity;
    let w = p.width_ratio_term(patch_width)?;
    Ok((es + ep) / 2.0 + (es - ep) / 2.0 * w)
}

/// Synthesized antenna dimensions. Lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatchDimensions {
    pub patch_width: f64,
    pub patch_length: f64,
    pub effective_length: f64,
    pub feed_width: f64,
    pub feed_length: f64,
    pub substrate_width: f64,
    pub substrate_length: f64,
    /// Effective permittivity without superstrate, at `patch_width`.
    pub eps_eff: f64,
    /// Effective permittivity with the paint superstrate, at `patch_width`.
    pub eps_eff_p: f64,
    pub b1: f64,
    pub b2: f64,
}

/// Computes all patch, feed and substrate dimensions for `p`.
pub fn synthesize_patch(p: &DesignParams) -> Result<PatchDimensions> {
    p.validate()?;
    let f = p.resonant_frequency;
    let h = p.substrate_thickness;
    let es = p.substrate_permittivity;
    let c_p = p.paint_wave_speed();

    let patch_width = c_p / (2.0 * f) * (2.0 / (es + 1.0)).sqrt();
    let eps_eff = effective_permittivity_bare(p, patch_width)?;
    let eps_eff_p = effective_permittivity_superstrate(p, patch_width)?;
    let effective_length = c_p / (2.0 * f * eps_eff_p.sqrt());

    let wh = patch_width / h;
    let fringe = 0.412 * h * ((eps_eff_p + 0.3) * (wh + 0.264)) / ((eps_eff_p - 0.258) * (wh + 0.8));
    let patch_length = effective_length - 2.0 * fringe;
    if !(patch_length > 0.0) {
        return Err(Error::NonPhysical(format!(
            "fringing extension 2·{fringe:e} m consumes the effective length {effective_length:e} m"
        )));
    }

    let b1 = 377.0 * PI / (2.0 * p.input_impedance * es.sqrt());
    if !(b1 > 1.0) {
        return Err(Error::NonPhysical(format!("feed-line parameter B1 = {b1} must exceed 1")));
    }
    let b2 = (es - 1.0) / (2.0 * es) * ((b1 - 1.0).ln() + 0.39 - 0.61 / es);
    let feed_width = 2.0 * h / PI * (b1 - 1.0 - (2.0 * b1 - 1.0).ln() + b2);
    if !(feed_width > 0.0) {
        return Err(Error::NonPhysical(format!("feed width {feed_width:e} m is not positive")));
    }

    Ok(PatchDimensions {
        patch_width,
        patch_length,
        effective_length,
        feed_width,
        feed_length: 2.0 * feed_width,
        substrate_width: 2.0 * patch_width,
        substrate_length: 2.0 * patch_length,
        eps_eff,
        eps_eff_p,
        b1,
        b2,
    })
}

/// Peak of the built-in pattern, dBi.
pub const DEFAULT_PEAK_GAIN_DBI: f64 = 6.03;
/// Direction of the built-in pattern's peak, degrees.
pub const DEFAULT_PEAK_ANGLE_DEG: f64 = 95.0;
/// Floor of the built-in pattern relative to its peak, dB.
pub const DEFAULT_FLOOR_DB: f64 = -25.0;
/// Angular resolution of the tabulated built-in pattern, samples per degree.
const DEFAULT_SAMPLES_PER_DEGREE: usize = 10;
const MIN_SAMPLES: usize = 8;

/// Analytic broadside lobe used for the built-in pattern:
/// `peak + max(20·log10(cos(φ − peak_angle)), floor)`.
pub fn default_pattern_gain(angle_deg: f64) -> f64 {
    let c = (angle_deg - DEFAULT_PEAK_ANGLE_DEG).to_radians().cos();
    let rel = if c > 0.0 {
        (20.0 * c.log10()).max(DEFAULT_FLOOR_DB)
    } else {
        DEFAULT_FLOOR_DB
    };
    DEFAULT_PEAK_GAIN_DBI + rel
}

/// Tabulated single-cut gain pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct GainPattern {
    /// `(angle_deg, gain_dbi)`, angles strictly increasing in `[0, 360)`.
    samples: Vec<(f64, f64)>,
    peak_gain: f64,
    peak_angle: f64,
}

impl GainPattern {
    /// Builds a pattern from samples in any order.
    pub fn from_samples(mut samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(Error::validation(
                "pattern",
                format!("needs at least {MIN_SAMPLES} samples, got {}", samples.len()),
            ));
        }
        for &(a, g) in &samples {
            if !(a.is_finite() && (0.0..360.0).contains(&a)) {
                return Err(Error::validation("pattern.angle_deg", format!("{a} is outside [0, 360)")));
            }
            if !g.is_finite() {
                return Err(Error::validation("pattern.gain_dbi", format!("gain at {a}° is not finite")));
            }
        }
        samples.sort_by(|x, y| x.0.total_cmp(&y.0));
        if let Some(w) = samples.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::validation("pattern.angle_deg", format!("duplicate angle {}", w[0].0)));
        }
        let (peak_angle, peak_gain) = samples
            .iter()
            .copied()
            .fold((f64::NAN, f64::NEG_INFINITY), |best, s| if s.1 > best.1 { s } else { best });
        Ok(GainPattern {
            samples,
            peak_gain,
            peak_angle,
        })
    }

    /// Pattern with the same gain in every direction.
    pub fn isotropic(gain_dbi: f64) -> Self {
        let samples = (0..36).map(|k| (k as f64 * 10.0, gain_dbi)).collect();
        GainPattern::from_samples(samples).expect("valid isotropic pattern")
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn peak_gain(&self) -> f64 {
        self.peak_gain
    }

    pub fn peak_angle(&self) -> f64 {
        self.peak_angle
    }

    /// Gain toward `angle_deg` in the pattern frame, dBi.
    ///
    /// Linear in dB between the bracketing samples, wrapping across 360°→0°.
    pub fn gain(&self, angle_deg: f64) -> f64 {
        let a = wrap_degrees(angle_deg);
        let s = &self.samples;
        let n = s.len();
        let idx = s.partition_point(|&(x, _)| x <= a);
        let ((a0, g0), (a1, g1)) = match idx {
            0 => ((s[n - 1].0 - 360.0, s[n - 1].1), s[0]),
            i if i == n => (s[n - 1], (s[0].0 + 360.0, s[0].1)),
            i => (s[i - 1], s[i]),
        };
        if a == a0 {
            return g0;
        }
        g0 + (g1 - g0) * ((a - a0) / (a1 - a0))
    }

    /// Gain of an antenna whose pattern is rotated rigidly by `boresight_deg`,
    /// toward the world-frame direction `direction_deg`.
    pub fn effective_gain(&self, boresight_deg: f64, direction_deg: f64) -> f64 {
        self.gain(direction_deg - boresight_deg)
    }
}

/// The built-in pattern: [`default_pattern_gain`] tabulated every 0.1°.
pub fn default_pattern() -> GainPattern {
    let n = 360 * DEFAULT_SAMPLES_PER_DEGREE;
    let samples = (0..n)
        .map(|k| {
            let a = k as f64 / DEFAULT_SAMPLES_PER_DEGREE as f64;
            (a, default_pattern_gain(a))
        })
        .collect();
    GainPattern::from_samples(samples).expect("built-in pattern is valid")
}

/// Reads a pattern from CSV text with header `angle_deg,gain_dbi`.
pub fn load_pattern(csv_text: &str) -> Result<GainPattern> {
    let mut lines = csv_text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == "angle_deg,gain_dbi" => {}
        Some((_, header)) => {
            return Err(Error::Parse(format!(
                "pattern CSV header must be `angle_deg,gain_dbi`, got {:?}",
                header.trim()
            )))
        }
        None => return Err(Error::Parse("pattern CSV is empty".into())),
    }
    let mut samples = Vec::new();
    for (i, line) in lines {
        let mut cols = line.trim().split(',');
        let (Some(a), Some(g), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::Parse(format!("line {}: expected two columns", i + 1)));
        };
        let parse = |t: &str| -> Result<f64> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("line {}: cannot read number {:?}", i + 1, t)))
        };
        samples.push((parse(a)?, parse(g)?));
    }
    GainPattern::from_samples(samples)
}

/// Renders a pattern as CSV readable by [`load_pattern`].
pub fn pattern_to_csv(pattern: &GainPattern) -> String {
    let mut out = String::from("angle_deg,gain_dbi\n");
    for (a, g) in pattern.samples() {
        out.push_str(&format!("{a},{g}\n"));
    }
    out
}
