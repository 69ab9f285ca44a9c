//! Media of the wall stack (air / paint / drywall) and their loss models.
//!
//! The absorption and interface-reflection laws are parametric so they can be
//! calibrated against measurements; see [`AbsorptionModel`] and [`ReflectionModel`].

use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::config::{parse_document, Section};
use crate::geometry::critical_angle;
use crate::{Error, Result, SPEED_OF_LIGHT};

/// Refractive index of titanium-dioxide white paint.
pub const PAINT_REFRACTIVE_INDEX: f64 = 2.13;
/// Relative permittivity of the paint (`n_p²`).
pub const PAINT_DIELECTRIC_CONSTANT: f64 = 4.5369;
pub const DRYWALL_REFRACTIVE_INDEX: f64 = 1.61;

/// Default paint absorption coefficient, 1/m.
///
/// Back-calculated so that a peak-aligned direct wave over 5 cm at 150 GHz
/// (10 dBm transmit power, 6.03 dBi at both ends) is received at -72.03 dBm.
/// `channel::calibrate_paint_absorption` reproduces this number.
pub const DEFAULT_PAINT_ABSORPTION: f64 = 173.0319;

/// Default drywall absorption coefficient, 1/m.
///
/// With zero drywall loss the LW-D path overtakes the direct wave at a burial
/// depth of ~3.3 mm in a 5 mm paint layer. Any positive value pushes that
/// crossover deeper.
pub const DEFAULT_DRYWALL_ABSORPTION: f64 = 0.0;

/// Attenuation law of a medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AbsorptionModel {
    /// Frequency-independent power absorption coefficient `K`, 1/m.
    Constant(f64),
    /// Derived from the extinction coefficient `kappa`: `K(f) = 4π·f·kappa / c`.
    FromExtinction(f64),
}

impl AbsorptionModel {
    /// Power absorption coefficient at frequency `f` (Hz), in 1/m.
    pub fn coefficient(&self, f: f64) -> Result<f64> {
        if !(f > 0.0 && f.is_finite()) {
            return Err(Error::validation("frequency", "must be positive and finite"));
        }
        Ok(match *self {
            AbsorptionModel::Constant(k) => k,
            AbsorptionModel::FromExtinction(kappa) => 4.0 * PI * f * kappa / SPEED_OF_LIGHT,
        })
    }

    fn validate(&self, field: &str) -> Result<()> {
        let (v, what) = match *self {
            AbsorptionModel::Constant(k) => (k, "absorption coefficient"),
            AbsorptionModel::FromExtinction(kappa) => (kappa, "extinction coefficient"),
        };
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::validation(
                field,
                format!("{what} must be finite and non-negative, got {v}"),
            ));
        }
        Ok(())
    }
}

/// Power reflection law at a paint interface under total internal reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReflectionModel {
    /// Fixed power reflection ratio in `(0, 1]`.
    Constant(f64),
    /// Unit Fresnel magnitude scaled by the Rayleigh roughness factor for a
    /// surface with the given RMS height, meters.
    FresnelRough(f64),
}

impl ReflectionModel {
    /// Power reflection ratio for a wave in the medium of index `n_hi` hitting
    /// the interface to `n_lo` at `theta` (radians from the normal).
    ///
    /// Only the total-internal-reflection regime is modelled: incidence at or
    /// below the critical angle is rejected. The result never underflows to 0.
    pub fn power_ratio(&self, f: f64, theta: f64, n_hi: f64, n_lo: f64) -> Result<f64> {
        if !(f > 0.0 && f.is_finite()) {
            return Err(Error::validation("frequency", "must be positive and finite"));
        }
        if !(theta > 0.0 && theta < PI / 2.0) {
            return Err(Error::validation("theta", "must lie in (0, 90°)"));
        }
        if !(n_hi > n_lo && n_lo > 0.0) {
            return Err(Error::validation(
                "n_hi",
                "must exceed n_lo (no total internal reflection otherwise)",
            ));
        }
        let theta_c = critical_angle(n_hi, n_lo)?;
        if theta <= theta_c {
            return Err(Error::validation(
                "theta",
                format!(
                    "incidence {:.4}° does not exceed the critical angle {:.4}°",
                    theta.to_degrees(),
                    theta_c.to_degrees()
                ),
            ));
        }
        Ok(match *self {
            ReflectionModel::Constant(r) => r,
            ReflectionModel::FresnelRough(sigma) => {
                let g = 2.0 * PI * f * sigma * theta.cos() * n_hi / SPEED_OF_LIGHT;
                (-2.0 * g * g).exp().max(f64::MIN_POSITIVE)
            }
        })
    }

    fn validate(&self, field: &str) -> Result<()> {
        match *self {
            ReflectionModel::Constant(r) if !(r > 0.0 && r <= 1.0) => Err(Error::validation(
                field,
                format!("reflection ratio must lie in (0, 1], got {r}"),
            )),
            ReflectionModel::FresnelRough(s) if !(s >= 0.0 && s.is_finite()) => {
                Err(Error::validation(
                    field,
                    format!("roughness must be finite and non-negative, got {s}"),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// One homogeneous medium.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    pub name: String,
    pub refractive_index: f64,
    pub dielectric_constant: f64,
    pub absorption: AbsorptionModel,
}

impl Medium {
    pub fn new(
        name: impl Into<String>,
        refractive_index: f64,
        dielectric_constant: f64,
        absorption: AbsorptionModel,
    ) -> Result<Self> {
        let m = Medium {
            name: name.into(),
            refractive_index,
            dielectric_constant,
            absorption,
        };
        m.validate()?;
        Ok(m)
    }

    /// Phase velocity `c / n`, m/s.
    pub fn speed(&self) -> f64 {
        SPEED_OF_LIGHT / self.refractive_index
    }

    pub fn absorption_at(&self, f: f64) -> Result<f64> {
        self.absorption.coefficient(f)
    }

    fn validate(&self) -> Result<()> {
        let n = self.refractive_index;
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::validation(
                format!("{}.n", self.name),
                format!("must be positive and finite, got {n}"),
            ));
        }
        let eps = self.dielectric_constant;
        if !(eps >= 1.0 && eps.is_finite()) {
            return Err(Error::validation(
                format!("{}.eps", self.name),
                format!("must be finite and at least 1, got {eps}"),
            ));
        }
        self.absorption
            .validate(&format!("{}.absorption", self.name))
    }
}

/// The three media of the wall stack and the loss laws of its two interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSet {
    pub air: Medium,
    pub paint: Medium,
    pub drywall: Medium,
    /// Air–paint interface.
    pub reflection_ap: ReflectionModel,
    /// Paint–drywall interface.
    pub reflection_pd: ReflectionModel,
}

impl Default for MaterialSet {
    fn default() -> Self {
        MaterialSet {
            air: Medium {
                name: "air".into(),
                refractive_index: 1.0,
                dielectric_constant: 1.0,
                absorption: AbsorptionModel::Constant(0.0),
            },
            paint: Medium {
                name: "paint".into(),
                refractive_index: PAINT_REFRACTIVE_INDEX,
                dielectric_constant: PAINT_DIELECTRIC_CONSTANT,
                absorption: AbsorptionModel::Constant(DEFAULT_PAINT_ABSORPTION),
            },
            drywall: Medium {
                name: "drywall".into(),
                refractive_index: DRYWALL_REFRACTIVE_INDEX,
                dielectric_constant: DRYWALL_REFRACTIVE_INDEX * DRYWALL_REFRACTIVE_INDEX,
                absorption: AbsorptionModel::Constant(DEFAULT_DRYWALL_ABSORPTION),
            },
            reflection_ap: ReflectionModel::FresnelRough(0.0),
            reflection_pd: ReflectionModel::FresnelRough(0.0),
        }
    }
}

impl MaterialSet {
    /// Checks every medium and interface, and that paint is the densest layer.
    pub fn validate(&self) -> Result<()> {
        self.air.validate()?;
        self.paint.validate()?;
        self.drywall.validate()?;
        self.reflection_ap.validate("reflection_ap")?;
        self.reflection_pd.validate("reflection_pd")?;
        if self.paint.refractive_index <= self.air.refractive_index {
            return Err(Error::validation("paint.n", "must exceed air.n"));
        }
        if self.paint.refractive_index <= self.drywall.refractive_index {
            return Err(Error::validation("paint.n", "must exceed drywall.n"));
        }
        Ok(())
    }

    /// Renders the set as a configuration document that [`load_materials`] reads back.
    pub fn to_config(&self) -> Value {
        json!({
            "air": medium_to_config(&self.air),
            "paint": medium_to_config(&self.paint),
            "drywall": medium_to_config(&self.drywall),
            "reflection_ap": reflection_to_config(&self.reflection_ap),
            "reflection_pd": reflection_to_config(&self.reflection_pd),
        })
    }

    /// Builds a set from an already-parsed config object, starting from defaults.
    pub fn from_section(section: &Section<'_>) -> Result<Self> {
        section.deny_unknown(&["air", "paint", "drywall", "reflection_ap", "reflection_pd"])?;
        let defaults = MaterialSet::default();
        let set = MaterialSet {
            air: medium_from_config(&section.child("air")?, defaults.air)?,
            paint: medium_from_config(&section.child("paint")?, defaults.paint)?,
            drywall: medium_from_config(&section.child("drywall")?, defaults.drywall)?,
            reflection_ap: reflection_from_config(
                &section.child("reflection_ap")?,
                defaults.reflection_ap,
            )?,
            reflection_pd: reflection_from_config(
                &section.child("reflection_pd")?,
                defaults.reflection_pd,
            )?,
        };
        set.validate()?;
        Ok(set)
    }
}

/// Parses and validates a materials document; omitted fields take the defaults.
pub fn load_materials(text: &str) -> Result<MaterialSet> {
    let doc = parse_document(text)?;
    MaterialSet::from_section(&Section::new("", Some(&doc))?)
}

fn medium_to_config(m: &Medium) -> Value {
    let absorption = match m.absorption {
        AbsorptionModel::Constant(k) => json!({"type": "constant", "value": k}),
        AbsorptionModel::FromExtinction(kappa) => json!({"type": "extinction", "value": kappa}),
    };
    json!({
        "n": m.refractive_index,
        "eps": m.dielectric_constant,
        "absorption": absorption,
    })
}

fn reflection_to_config(r: &ReflectionModel) -> Value {
    match *r {
        ReflectionModel::Constant(ratio) => json!({"type": "constant", "value": ratio}),
        ReflectionModel::FresnelRough(sigma) => json!({"type": "fresnel_rough", "value": sigma}),
    }
}

fn medium_from_config(section: &Section<'_>, mut medium: Medium) -> Result<Medium> {
    section.deny_unknown(&["n", "eps", "absorption"])?;
    if let Some(n) = section.number("n")? {
        medium.refractive_index = n;
    }
    if let Some(eps) = section.number("eps")? {
        medium.dielectric_constant = eps;
    }
    let abs = section.child("absorption")?;
    if abs.is_present() {
        abs.deny_unknown(&["type", "value"])?;
        let kind = abs.required("type", abs.string("type")?)?;
        medium.absorption = match kind {
            "constant" => AbsorptionModel::Constant(abs.required("value", abs.absorption("value")?)?),
            "extinction" => {
                AbsorptionModel::FromExtinction(abs.required("value", abs.number("value")?)?)
            }
            other => {
                return Err(Error::validation(
                    abs.key_path("type"),
                    format!("unknown absorption model {other:?} (expected \"constant\" or \"extinction\")"),
                ))
            }
        };
    }
    medium.validate()?;
    Ok(medium)
}

fn reflection_from_config(section: &Section<'_>, default: ReflectionModel) -> Result<ReflectionModel> {
    if !section.is_present() {
        return Ok(default);
    }
    section.deny_unknown(&["type", "value"])?;
    let kind = section.required("type", section.string("type")?)?;
    let model = match kind {
        "constant" => ReflectionModel::Constant(section.required("value", section.number("value")?)?),
        "fresnel_rough" => {
            ReflectionModel::FresnelRough(section.required("value", section.length("value")?)?)
        }
        other => {
            return Err(Error::validation(
                section.key_path("type"),
                format!("unknown reflection model {other:?} (expected \"constant\" or \"fresnel_rough\")"),
            ))
        }
    };
    model.validate(section.path())?;
    Ok(model)
}
