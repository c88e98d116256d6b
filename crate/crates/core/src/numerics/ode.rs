//! Fixed-cell Cash–Karp propagation of the coupled radial components
//! in the log variable t = ln r.
//!
//! In t the radial Dirac system (natural units, m = 1) reads
//!   dg/dt = -κ g + r (E + 1 - V) f
//!   df/dt =  κ f - r (E - 1 - V) g
//! which is smooth both at the r^γ origin and in the exponential tail.
//! Each grid cell is subdivided so that the local phase Λ·h stays below
//! a cap, keeping the fifth-order truncation error uniform.

use super::NumericsError;

// Cash–Karp tableau (fifth-order weights).
const C2: f64 = 0.2;
const C3: f64 = 0.3;
const C4: f64 = 0.6;
const C5: f64 = 1.0;
const C6: f64 = 0.875;
const A21: f64 = 0.2;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 0.3;
const A42: f64 = -0.9;
const A43: f64 = 1.2;
const A51: f64 = -11.0 / 54.0;
const A52: f64 = 2.5;
const A53: f64 = -70.0 / 27.0;
const A54: f64 = 35.0 / 27.0;
const A61: f64 = 1631.0 / 55296.0;
const A62: f64 = 175.0 / 512.0;
const A63: f64 = 575.0 / 13824.0;
const A64: f64 = 44275.0 / 110592.0;
const A65: f64 = 253.0 / 4096.0;
const B1: f64 = 37.0 / 378.0;
const B3: f64 = 250.0 / 621.0;
const B4: f64 = 125.0 / 594.0;
const B6: f64 = 512.0 / 1771.0;

/// Default cap on Λ·h per substep.
pub const DEFAULT_MAX_PHASE_STEP: f64 = 8e-3;

/// Two-component state (g, f).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Components {
    pub g: f64,
    pub f: f64,
}

/// Right-hand side parameters for one propagation run.
pub struct DiracRhs<'a> {
    pub kappa: f64,
    /// Total energy in units of m_e (rest mass included).
    pub energy: f64,
    /// Potential V(r) in units of m_e, as a function of r (natural units).
    pub potential: &'a dyn Fn(f64) -> f64,
}

impl DiracRhs<'_> {
    #[inline]
    fn eval(&self, r: f64, y: Components) -> Components {
        let v = (self.potential)(r);
        Components {
            g: -self.kappa * y.g + r * (self.energy + 1.0 - v) * y.f,
            f: self.kappa * y.f - r * (self.energy - 1.0 - v) * y.g,
        }
    }

    /// Local rate bound used for substep control: the magnitude of the
    /// eigenvalues of the system matrix in t, √(κ² + r²|1 − (E − V)²|).
    #[inline]
    fn phase_rate(&self, r: f64) -> f64 {
        let w = self.energy - (self.potential)(r);
        (self.kappa * self.kappa + (r * r * (1.0 - w * w)).abs()).sqrt()
    }
}

#[inline]
fn ck5_step(rhs: &DiracRhs<'_>, t0: f64, h: f64, y: Components) -> Components {
    let r_at = |c: f64| (t0 + c * h).exp();
    let k1 = rhs.eval(t0.exp(), y);
    let k2 = rhs.eval(
        r_at(C2),
        Components {
            g: y.g + h * A21 * k1.g,
            f: y.f + h * A21 * k1.f,
        },
    );
    let k3 = rhs.eval(
        r_at(C3),
        Components {
            g: y.g + h * (A31 * k1.g + A32 * k2.g),
            f: y.f + h * (A31 * k1.f + A32 * k2.f),
        },
    );
    let k4 = rhs.eval(
        r_at(C4),
        Components {
            g: y.g + h * (A41 * k1.g + A42 * k2.g + A43 * k3.g),
            f: y.f + h * (A41 * k1.f + A42 * k2.f + A43 * k3.f),
        },
    );
    let k5 = rhs.eval(
        r_at(C5),
        Components {
            g: y.g + h * (A51 * k1.g + A52 * k2.g + A53 * k3.g + A54 * k4.g),
            f: y.f + h * (A51 * k1.f + A52 * k2.f + A53 * k3.f + A54 * k4.f),
        },
    );
    let k6 = rhs.eval(
        r_at(C6),
        Components {
            g: y.g + h * (A61 * k1.g + A62 * k2.g + A63 * k3.g + A64 * k4.g + A65 * k5.g),
            f: y.f + h * (A61 * k1.f + A62 * k2.f + A63 * k3.f + A64 * k4.f + A65 * k5.f),
        },
    );
    Components {
        g: y.g + h * (B1 * k1.g + B3 * k3.g + B4 * k4.g + B6 * k6.g),
        f: y.f + h * (B1 * k1.f + B3 * k3.f + B4 * k4.f + B6 * k6.f),
    }
}

/// Propagates (g, f) across one grid cell from t0 to t0 + h_cell.
///
/// `h_cell` may be negative for inward integration.
pub fn propagate_cell(
    rhs: &DiracRhs<'_>,
    t0: f64,
    h_cell: f64,
    y0: Components,
    max_phase_step: f64,
) -> Result<Components, NumericsError> {
    let r_far = (t0 + h_cell).exp().max(t0.exp());
    let rate = rhs.phase_rate(r_far).max(1e-30);
    let substeps = ((h_cell.abs() * rate / max_phase_step).ceil() as usize).max(1);
    let h = h_cell / substeps as f64;
    let mut y = y0;
    let mut t = t0;
    for _ in 0..substeps {
        y = ck5_step(rhs, t, h, y);
        t += h;
        if !(y.g.is_finite() && y.f.is_finite()) {
            return Err(NumericsError::NonFiniteState { t });
        }
    }
    Ok(y)
}
