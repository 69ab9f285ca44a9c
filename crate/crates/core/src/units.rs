//! Parsing of unit-suffixed quantities such as `"50um"`, `"150 GHz"` or `"95deg"`.
//!
//! Every parser also accepts a bare number, which is taken to be in SI units
//! (meters, Hz, 1/m) or degrees for angles.

use crate::{Error, Result};

const LENGTH_UNITS: &[(&str, i32)] = &[
    ("km", 3),
    ("mm", -3),
    ("cm", -2),
    ("um", -6),
    ("μm", -6),
    ("µm", -6),
    ("nm", -9),
    ("m", 0),
];

const FREQUENCY_UNITS: &[(&str, i32)] = &[
    ("THz", 12),
    ("GHz", 9),
    ("MHz", 6),
    ("kHz", 3),
    ("Hz", 0),
];

const RADIANS: &str = "rad";

const ABSORPTION_UNITS: &[(&str, i32)] = &[
    ("1/mm", 3),
    ("1/cm", 2),
    ("1/m", 0),
    ("/mm", 3),
    ("/cm", 2),
    ("/m", 0),
];

/// `units` maps a suffix to its decimal exponent relative to the SI unit.
fn parse_with(text: &str, units: &[(&str, i32)], what: &str) -> Result<f64> {
    let t = text.trim();
    for &(suffix, exponent) in units {
        if let Some(num) = t.strip_suffix(suffix) {
            let num = num.trim_end();
            if num.is_empty() {
                break;
            }
            // divide for negative exponents so that e.g. 50um is exactly 5e-5
            return parse_number(num, what).map(|v| match exponent {
                e if e >= 0 => v * 10f64.powi(e),
                e => v / 10f64.powi(-e),
            });
        }
    }
    parse_number(t, what)
}

fn parse_number(text: &str, what: &str) -> Result<f64> {
    let v: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("cannot read {what} from {text:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what} must be finite, got {text:?}")));
    }
    Ok(v)
}

/// Parses a length; the result is in meters.
pub fn parse_length(text: &str) -> Result<f64> {
    parse_with(text, LENGTH_UNITS, "length")
}

/// Parses a frequency; the result is in Hz.
pub fn parse_frequency(text: &str) -> Result<f64> {
    parse_with(text, FREQUENCY_UNITS, "frequency")
}

/// Parses an angle; the result is in degrees.
pub fn parse_angle_deg(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Some(rad) = t.strip_suffix(RADIANS) {
        return parse_number(rad.trim_end(), "angle").map(f64::to_degrees);
    }
    let deg = t.strip_suffix("deg").or_else(|| t.strip_suffix('°')).unwrap_or(t);
    parse_number(deg.trim_end(), "angle")
}

/// Parses an absorption coefficient; the result is in 1/m.
pub fn parse_absorption(text: &str) -> Result<f64> {
    parse_with(text, ABSORPTION_UNITS, "absorption coefficient")
}
