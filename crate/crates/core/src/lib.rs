//! Link-level simulator for sub-THz transceivers buried in a paint layer on drywall.
//!
//! The crate is organised bottom-up:
//!
//! - [`materials`]: media (air, paint, drywall) and their absorption / reflection models.
//! - [`antenna`]: in-paint microstrip patch synthesis and tabulated gain patterns.
//! - [`geometry`]: the five propagation paths (direct, two reflected, two lateral).
//! - [`channel`]: per-path loss, received power and the power sum over paths.
//! - [`sweep`]: boresight grids, burial-depth series and their extrema.
//!
//! Lengths are meters, frequencies Hz and angles radians internally. Angles at
//! public boundaries that describe antenna orientation are in degrees.

pub mod antenna;
pub mod channel;
pub mod config;
mod error;
pub mod geometry;
pub mod materials;
pub mod sweep;
pub mod units;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// `10·log10(e)`, the dB value of one neper of power attenuation per unit `K·h`.
pub const DB_PER_NEPER: f64 = 4.342_944_819_032_518;

/// Converts a dBm (or dB) quantity to linear scale.
#[inline]
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to dB. Zero maps to `-inf`.
#[inline]
pub fn linear_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Normalizes an angle in degrees to `[0, 360)`.
#[inline]
pub fn wrap_degrees(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}
