//! Exponential radial mesh.
//!
//! Bound Dirac components behave like r^γ near the origin and decay
//! exponentially at large r, so the mesh is uniform in t = ln r. All
//! grid-based quadrature and differentiation in this crate works in t.

use super::NumericsError;

/// Strictly increasing exponential mesh from `r_min` to `r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    r_min: f64,
    r_max: f64,
    log_step: f64,
}

/// Default number of points for physics grids.
pub const DEFAULT_GRID_POINTS: usize = 6001;

/// Builds an exponentially spaced grid with exact endpoints.
pub fn make_grid(r_min: f64, r_max: f64, n: usize) -> Result<RadialGrid, NumericsError> {
    if !(r_min > 0.0 && r_min.is_finite()) || !(r_max > r_min && r_max.is_finite()) {
        return Err(NumericsError::InvalidGrid(format!(
            "need 0 < r_min < r_max, got r_min = {r_min}, r_max = {r_max}"
        )));
    }
    if n < 16 {
        return Err(NumericsError::InvalidGrid(format!(
            "need at least 16 points, got {n}"
        )));
    }
    let log_step = (r_max / r_min).ln() / (n - 1) as f64;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        points.push(r_min * (i as f64 * log_step).exp());
    }
    points[0] = r_min;
    points[n - 1] = r_max;
    for i in 1..n {
        if points[i] <= points[i - 1] {
            return Err(NumericsError::InvalidGrid(format!(
                "grid not strictly increasing near index {i}"
            )));
        }
    }
    Ok(RadialGrid {
        points,
        r_min,
        r_max,
        log_step,
    })
}

impl RadialGrid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    /// Uniform spacing in t = ln r.
    pub fn log_step(&self) -> f64 {
        self.log_step
    }

    /// Index of the last point with r ≤ x (points are sorted).
    pub fn last_index_at_or_below(&self, x: f64) -> Option<usize> {
        if x < self.r_min {
            return None;
        }
        let idx = self
            .points
            .partition_point(|&r| r <= x)
            .saturating_sub(1);
        Some(idx)
    }

    /// A grid over the same range with `factor` times the point density.
    pub fn refined(&self, factor: usize) -> Result<RadialGrid, NumericsError> {
        make_grid(self.r_min, self.r_max, (self.len() - 1) * factor + 1)
    }
}
