//! Run configuration: one JSON document per invocation, with command-line overrides.

use std::path::{Path, PathBuf};

use paintwave_core::antenna::{default_pattern, load_pattern, DesignParams, GainPattern};
use paintwave_core::config::{parse_document, Section};
use paintwave_core::geometry::Scene;
use paintwave_core::materials::MaterialSet;
use paintwave_core::sweep::default_depths;
use paintwave_core::units::parse_length;
use paintwave_core::Error;

use crate::CliError;

const TOP_LEVEL_KEYS: &[&str] = &[
    "scene", "materials", "antenna", "pattern", "beta_t", "beta_r", "step", "depths", "out", "units",
];

/// Command-line values that take precedence over the config document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub step: Option<f64>,
    pub beta_t: Option<f64>,
    pub beta_r: Option<f64>,
    pub pattern: Option<PathBuf>,
    pub units: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternSource {
    Default,
    File(PathBuf),
}

/// Length unit of the synthesis report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportUnit {
    Micrometer,
    Millimeter,
    Meter,
}

impl ReportUnit {
    pub fn parse(text: &str) -> Result<Self, Error> {
        match text {
            "um" | "μm" => Ok(ReportUnit::Micrometer),
            "mm" => Ok(ReportUnit::Millimeter),
            "m" => Ok(ReportUnit::Meter),
            other => Err(Error::validation("units", format!("expected um, mm or m, got {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ReportUnit::Micrometer => "um",
            ReportUnit::Millimeter => "mm",
            ReportUnit::Meter => "m",
        }
    }

    /// Multiplier from meters.
    pub fn per_meter(self) -> f64 {
        match self {
            ReportUnit::Micrometer => 1e6,
            ReportUnit::Millimeter => 1e3,
            ReportUnit::Meter => 1.0,
        }
    }
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub materials: MaterialSet,
    pub scene: Scene,
    /// `None` when the document has no `antenna` section.
    pub antenna: Option<DesignParams>,
    pub pattern_source: PatternSource,
    pub beta_t_deg: f64,
    pub beta_r_deg: f64,
    pub step_deg: f64,
    pub depths: Vec<f64>,
    pub out: PathBuf,
    pub units: ReportUnit,
}

impl RunConfig {
    /// Reads and resolves the config file at `path`. Relative pattern paths in
    /// the document are taken relative to the config file.
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Ok(RunConfig::from_text(&text, base, overrides)?)
    }

    pub fn from_text(text: &str, base_dir: &Path, overrides: &Overrides) -> Result<Self, Error> {
        let doc = parse_document(text)?;
        let root = Section::new("", Some(&doc))?;
        root.deny_unknown(TOP_LEVEL_KEYS)?;

        let materials = MaterialSet::from_section(&root.child("materials")?)?;
        let scene = scene_from(&root.child("scene")?, materials.clone())?;
        let antenna = antenna_from(&root.child("antenna")?, &materials)?;

        let pattern_source = match (&overrides.pattern, root.string("pattern")?) {
            (Some(p), _) => PatternSource::File(p.clone()),
            (None, None | Some("default")) => PatternSource::Default,
            (None, Some(p)) => PatternSource::File(base_dir.join(p)),
        };

        let beta_t_deg = pick(overrides.beta_t, root.angle_deg("beta_t")?, 0.0);
        let beta_r_deg = pick(overrides.beta_r, root.angle_deg("beta_r")?, 0.0);
        let step_deg = pick(overrides.step, root.angle_deg("step")?, 1.0);
        for (field, v) in [("beta_t", beta_t_deg), ("beta_r", beta_r_deg), ("step", step_deg)] {
            if !v.is_finite() {
                return Err(Error::validation(field, "must be finite"));
            }
        }

        let depths = match root.get("depths") {
            None => default_depths(),
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .enumerate()
                .map(|(i, v)| depth_item(i, v))
                .collect::<Result<Vec<_>, _>>()?,
            Some(_) => return Err(Error::validation("depths", "must be an array of lengths")),
        };

        let out = overrides
            .out
            .clone()
            .or_else(|| root.string("out").ok().flatten().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("paintwave-out"));

        let units = match (&overrides.units, root.string("units")?) {
            (Some(u), _) => ReportUnit::parse(u)?,
            (None, Some(u)) => ReportUnit::parse(u)?,
            (None, None) => ReportUnit::Micrometer,
        };

        Ok(RunConfig {
            materials,
            scene,
            antenna,
            pattern_source,
            beta_t_deg,
            beta_r_deg,
            step_deg,
            depths,
            out,
            units,
        })
    }

    pub fn pattern(&self) -> Result<GainPattern, CliError> {
        match &self.pattern_source {
            PatternSource::Default => Ok(default_pattern()),
            PatternSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                Ok(load_pattern(&text)?)
            }
        }
    }
}

fn depth_item(i: usize, v: &serde_json::Value) -> Result<f64, Error> {
    let field = || format!("depths[{i}]");
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::validation(field(), "must be a finite number")),
        serde_json::Value::String(t) => parse_length(t).map_err(|e| Error::validation(field(), e.to_string())),
        _ => Err(Error::validation(field(), "must be a length")),
    }
}

fn pick(over: Option<f64>, doc: Option<f64>, default: f64) -> f64 {
    over.or(doc).unwrap_or(default)
}

fn scene_from(s: &Section<'_>, materials: MaterialSet) -> Result<Scene, Error> {
    s.deny_unknown(&[
        "paint_thickness",
        "burial_depth",
        "los_distance",
        "frequency",
        "tx_power_dbm",
    ])?;
    Scene::new(
        s.length("paint_thickness")?.unwrap_or(5e-3),
        s.length("burial_depth")?.unwrap_or(2.5e-3),
        s.length("los_distance")?.unwrap_or(0.05),
        s.frequency("frequency")?.unwrap_or(150e9),
        s.number("tx_power_dbm")?.unwrap_or(10.0),
        materials,
    )
    .map_err(|e| match e {
        Error::Validation { field, message } => Error::validation(s.key_path(&field), message),
        other => other,
    })
}

fn antenna_from(s: &Section<'_>, materials: &MaterialSet) -> Result<Option<DesignParams>, Error> {
    if !s.is_present() {
        return Ok(None);
    }
    s.deny_unknown(&["f_r", "eps_s", "h_s", "eps_p", "n_p", "z_in"])?;
    let p = DesignParams {
        resonant_frequency: s.required("f_r", s.frequency("f_r")?)?,
        substrate_permittivity: s.required("eps_s", s.number("eps_s")?)?,
        substrate_thickness: s.required("h_s", s.length("h_s")?)?,
        superstrate_permittivity: s
            .number("eps_p")?
            .unwrap_or(materials.paint.dielectric_constant),
        superstrate_refractive_index: s.number("n_p")?.unwrap_or(materials.paint.refractive_index),
        input_impedance: s.number("z_in")?.unwrap_or(50.0),
    };
    p.validate().map_err(|e| match e {
        Error::Validation { field, message } => Error::validation(s.key_path(&field), message),
        other => other,
    })?;
    Ok(Some(p))
}
