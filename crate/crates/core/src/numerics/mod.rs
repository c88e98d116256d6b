//! Shared numerical machinery: exponential radial grid, quadrature,
//! root bracketing, the ODE stepper used by the Dirac solver, and
//! spline interpolation. Stateless routines over caller-owned buffers.

pub mod grid;
pub mod interp;
pub mod ode;
pub mod quadrature;
pub mod roots;

pub use grid::{make_grid, RadialGrid, DEFAULT_GRID_POINTS};
pub use quadrature::{integrate_adaptive, integrate_on_grid, integrate_on_grid_range, QuadratureResult};
pub use roots::find_root_bracketed;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("sample length {actual} does not match grid length {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("adaptive quadrature did not converge (best value {best_value}, error estimate {abs_error_estimate})")]
    QuadratureNonConvergence {
        best_value: f64,
        abs_error_estimate: f64,
    },
    #[error("no sign change on bracket: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { f_lo: f64, f_hi: f64 },
    #[error("root refinement did not converge (best estimate {best})")]
    RootNonConvergence { best: f64 },
    #[error("non-finite state while integrating at t = {t}")]
    NonFiniteState { t: f64 },
}

/// d/dr of grid samples via 5-point stencils in t = ln r (chain rule 1/r).
pub fn derivative_on_grid(samples: &[f64], grid: &RadialGrid) -> Result<Vec<f64>, NumericsError> {
    let n = grid.len();
    if samples.len() != n {
        return Err(NumericsError::LengthMismatch {
            expected: n,
            actual: samples.len(),
        });
    }
    if n < 5 {
        return Err(NumericsError::InvalidGrid("need at least 5 points".into()));
    }
    let h = grid.log_step();
    let r = grid.points();
    let mut out = vec![0.0; n];
    let dt = |i: usize| -> f64 {
        let f = samples;
        if i == 0 {
            (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
        } else if i == 1 {
            (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
        } else if i == n - 2 {
            (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
                / (12.0 * h)
        } else if i == n - 1 {
            (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
                + 3.0 * f[n - 5])
                / (12.0 * h)
        } else {
            (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
        }
    };
    for i in 0..n {
        out[i] = dt(i) / r[i];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_matches_analytic() {
        let g = make_grid(0.01, 10.0, 2001).unwrap();
        let samples: Vec<f64> = g.points().iter().map(|&r| (r * r).sin()).collect();
        let d = derivative_on_grid(&samples, &g).unwrap();
        for (i, &r) in g.points().iter().enumerate().step_by(100) {
            if r > 2.5 {
                // the oscillation outruns the mesh beyond this radius
                break;
            }
            let exact = 2.0 * r * (r * r).cos();
            assert!(
                (d[i] - exact).abs() < 1e-6 * (1.0 + exact.abs()),
                "at r = {r}: {} vs {exact}",
                d[i]
            );
        }
    }
}
