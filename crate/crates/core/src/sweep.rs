//! Orientation grids, burial-depth series and their extrema.

use rayon::prelude::*;
use serde::Serialize;

use crate::antenna::GainPattern;
use crate::channel::{LinkModel, LinkResult};
use crate::geometry::{PathKind, Scene};
use crate::{Error, Result};

/// Smallest supported grid step, degrees.
pub const MIN_STEP_DEG: f64 = 0.1;

/// One output layer of a sweep: a single path or the power sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Layer {
    Path(PathKind),
    Total,
}

impl Layer {
    pub const ALL: [Layer; 6] = [
        Layer::Path(PathKind::Direct),
        Layer::Path(PathKind::ReflectedAir),
        Layer::Path(PathKind::ReflectedDrywall),
        Layer::Path(PathKind::LateralAir),
        Layer::Path(PathKind::LateralDrywall),
        Layer::Total,
    ];

    pub fn index(self) -> usize {
        match self {
            Layer::Path(k) => k.index(),
            Layer::Total => 5,
        }
    }

    /// Lower-case name used in file names and CSV columns.
    pub fn slug(self) -> &'static str {
        match self {
            Layer::Path(PathKind::Direct) => "dw",
            Layer::Path(PathKind::ReflectedAir) => "rw_a",
            Layer::Path(PathKind::ReflectedDrywall) => "rw_d",
            Layer::Path(PathKind::LateralAir) => "lw_a",
            Layer::Path(PathKind::LateralDrywall) => "lw_d",
            Layer::Total => "total",
        }
    }

    fn pick(self, link: &LinkResult) -> f64 {
        match self {
            Layer::Path(k) => link.path(k).received_power_dbm,
            Layer::Total => link.total_received_power_dbm,
        }
    }
}

/// Validates a grid step and returns the number of grid points per axis.
pub fn grid_size(step_deg: f64) -> Result<usize> {
    if !(MIN_STEP_DEG - 1e-12..=360.0).contains(&step_deg) {
        return Err(Error::validation(
            "step",
            format!("must lie in [{MIN_STEP_DEG}, 360] degrees, got {step_deg}"),
        ));
    }
    let n = (360.0 / step_deg).round();
    if (n * step_deg - 360.0).abs() > 1e-9 {
        return Err(Error::validation("step", format!("{step_deg}° does not divide 360°")));
    }
    Ok(n as usize)
}

/// Received power (dBm) for every `(β_T, β_R)` pair, one dense layer per [`Layer`].
///
/// Cell `(i, j)` holds `β_T = i·step`, `β_R = j·step`, stored row-major by `β_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoresightGrid {
    step_deg: f64,
    size: usize,
    layers: Vec<Vec<f64>>,
}

impl BoresightGrid {
    /// Wraps precomputed layers, e.g. values re-read from disk.
    pub fn from_layers(step_deg: f64, layers: Vec<Vec<f64>>) -> Result<Self> {
        let size = grid_size(step_deg)?;
        if layers.len() != Layer::ALL.len() || layers.iter().any(|l| l.len() != size * size) {
            return Err(Error::validation(
                "grid",
                format!("expected {} layers of {} cells", Layer::ALL.len(), size * size),
            ));
        }
        Ok(BoresightGrid {
            step_deg,
            size,
            layers,
        })
    }

    pub fn step_deg(&self) -> f64 {
        self.step_deg
    }

    /// Grid points per axis.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn beta(&self, index: usize) -> f64 {
        index as f64 * self.step_deg
    }

    pub fn layer(&self, layer: Layer) -> &[f64] {
        &self.layers[layer.index()]
    }

    pub fn value(&self, layer: Layer, i_t: usize, i_r: usize) -> f64 {
        self.layers[layer.index()][i_t * self.size + i_r]
    }

    /// Applies `f` to every cell of every layer.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        BoresightGrid {
            step_deg: self.step_deg,
            size: self.size,
            layers: self
                .layers
                .iter()
                .map(|l| l.iter().map(|&v| f(v)).collect())
                .collect(),
        }
    }
}

/// Evaluates the link at every grid orientation.
///
/// Rows are computed in parallel on the current rayon pool; every cell is an
/// independent pure evaluation, so the result does not depend on the pool size.
pub fn boresight_sweep(
    scene: &Scene,
    pattern_t: &GainPattern,
    pattern_r: &GainPattern,
    step_deg: f64,
) -> Result<BoresightGrid> {
    let n = grid_size(step_deg)?;
    let model = LinkModel::new(scene.clone())?;
    let mut cells = vec![[0.0f64; 6]; n * n];
    cells
        .par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(i_t, row)| -> Result<()> {
            let beta_t = i_t as f64 * step_deg;
            for (i_r, cell) in row.iter_mut().enumerate() {
                let link = model.evaluate(pattern_t, beta_t, pattern_r, i_r as f64 * step_deg)?;
                for layer in Layer::ALL {
                    cell[layer.index()] = layer.pick(&link);
                }
            }
            Ok(())
        })?;
    let layers = (0..6).map(|l| cells.iter().map(|c| c[l]).collect()).collect();
    Ok(BoresightGrid {
        step_deg,
        size: n,
        layers,
    })
}

/// Link results at fixed orientations over a list of burial depths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthSeries {
    pub beta_t_deg: f64,
    pub beta_r_deg: f64,
    /// Burial depths, m, strictly increasing.
    pub depths: Vec<f64>,
    pub links: Vec<LinkResult>,
}

impl DepthSeries {
    pub fn series(&self, layer: Layer) -> Vec<f64> {
        self.links.iter().map(|l| layer.pick(l)).collect()
    }
}

/// Burial depths from 0.6 mm to 4.4 mm in 0.1 mm steps.
pub fn default_depths() -> Vec<f64> {
    (6..=44).map(|k| k as f64 * 1e-4).collect()
}

pub fn depth_sweep(
    scene: &Scene,
    pattern_t: &GainPattern,
    pattern_r: &GainPattern,
    beta_t_deg: f64,
    beta_r_deg: f64,
    depths: &[f64],
) -> Result<DepthSeries> {
    if depths.is_empty() {
        return Err(Error::validation("depths", "must not be empty"));
    }
    if let Some(w) = depths.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::validation(
            "depths",
            format!("must be strictly increasing ({} m then {} m)", w[0], w[1]),
        ));
    }
    let links = depths
        .iter()
        .map(|&h| {
            let s = scene.with_burial_depth(h).map_err(|e| match e {
                Error::Validation { message, .. } => Error::validation("depths", message),
                other => other,
            })?;
            LinkModel::new(s)?.evaluate(pattern_t, beta_t_deg, pattern_r, beta_r_deg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DepthSeries {
        beta_t_deg,
        beta_r_deg,
        depths: depths.to_vec(),
        links,
    })
}

/// Best and worst cell of one layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayerExtrema {
    pub layer: Layer,
    pub max_dbm: f64,
    /// `(β_T, β_R)` in degrees.
    pub argmax_deg: (f64, f64),
    pub min_dbm: f64,
    pub argmin_deg: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrema {
    pub layers: Vec<LayerExtrema>,
}

impl Extrema {
    pub fn get(&self, layer: Layer) -> &LayerExtrema {
        &self.layers[layer.index()]
    }
}

/// Per-layer maximum and minimum. Ties go to the smallest `β_T`, then `β_R`.
pub fn extrema(grid: &BoresightGrid) -> Extrema {
    let n = grid.size();
    let layers = Layer::ALL
        .iter()
        .map(|&layer| {
            let values = grid.layer(layer);
            let (mut imax, mut imin) = (0, 0);
            for (i, &v) in values.iter().enumerate() {
                if v > values[imax] {
                    imax = i;
                }
                if v < values[imin] {
                    imin = i;
                }
            }
            let at = |i: usize| (grid.beta(i / n), grid.beta(i % n));
            LayerExtrema {
                layer,
                max_dbm: values[imax],
                argmax_deg: at(imax),
                min_dbm: values[imin],
                argmin_deg: at(imin),
            }
        })
        .collect();
    Extrema { layers }
}
