//! The Uehling vacuum-polarization potential
//!
//!   V_U(r) = −(2 Zα²)/(3π r) ∫₁^∞ e^(−2 m r y) (1 + 1/(2y²)) √(y²−1)/y² dy
//!
//! with the sign fixed so that vacuum polarization strengthens the
//! binding. The y-integral is evaluated with the substitution y = cosh t,
//! which removes the square-root endpoint singularity.

use crate::constants::ConstantsSet;
use crate::dirac::RadialPotential;
use crate::numerics::interp::UniformCubicSpline;
use crate::numerics::{integrate_adaptive, NumericsError, RadialGrid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UehlingError {
    #[error("Uehling potential needs r > 0, got {0} fm")]
    NonPositiveR(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Exponent below which e^(−s) underflows and the integral is zero in f64.
const UNDERFLOW_S: f64 = 745.0;

/// Dimensionless kernel K(s) = ∫₁^∞ e^(−s y) (1 + 1/(2y²)) √(y²−1)/y² dy.
///
/// Relative accuracy 1e-10 via adaptive quadrature in t with y = cosh t.
pub fn uehling_kernel(s: f64) -> Result<f64, UehlingError> {
    debug_assert!(s > 0.0);
    if s >= UNDERFLOW_S {
        return Ok(0.0);
    }
    // e^(−s cosh t) is below 1e−19·e^(−s) once s(cosh t − 1) > 43.8
    let t_max = (1.0 + 43.8 / s + (43.8 / s * (2.0 + 43.8 / s)).sqrt()).ln();
    let q = integrate_adaptive(
        |t| {
            let ch = t.cosh();
            let sh = t.sinh();
            let tanh = sh / ch;
            (-s * ch).exp() * (1.0 + 0.5 / (ch * ch)) * tanh * tanh
        },
        0.0,
        t_max,
        1e-10,
        1e-305,
    )?;
    Ok(q.value)
}

/// V_U at a point, in eV.
pub fn uehling_point(z: u32, r_fm: f64, consts: &ConstantsSet) -> Result<f64, UehlingError> {
    if !(r_fm > 0.0) {
        return Err(UehlingError::NonPositiveR(r_fm));
    }
    let r_nat = r_fm / consts.lambda_bar_fm();
    let s = 2.0 * r_nat;
    let kernel = uehling_kernel(s)?;
    let prefactor = -2.0 * z as f64 * consts.alpha * consts.alpha
        / (3.0 * std::f64::consts::PI * r_nat);
    Ok(prefactor * kernel * consts.electron_mass_ev)
}

/// The log-kernel spline must stop well short of where K underflows.
const KERNEL_SPLINE_MAX: f64 = 600.0;

fn log_kernel_spline() -> &'static UniformCubicSpline {
    use std::sync::OnceLock;
    static SPLINE: OnceLock<UniformCubicSpline> = OnceLock::new();
    SPLINE.get_or_init(|| {
        let n = 6000;
        let u_min = (1e-10_f64).ln();
        let u_max = KERNEL_SPLINE_MAX.ln();
        let du = (u_max - u_min) / (n - 1) as f64;
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let x = (u_min + i as f64 * du).exp();
                uehling_kernel(x).expect("uehling kernel").ln()
            })
            .collect();
        UniformCubicSpline::new(u_min, du, values)
    })
}

/// Splined kernel for the folding integral.
fn kernel_fast(x: f64) -> f64 {
    if x >= KERNEL_SPLINE_MAX {
        return 0.0;
    }
    // K varies like ln(2/x) below the spline range; contributions there
    // carry negligible weight, so clamping suffices
    log_kernel_spline().eval(x.max(1e-10).ln()).exp()
}

// 8-point Gauss–Legendre on [-1, 1].
#[allow(clippy::excessive_precision)]
const GL8_X: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
#[allow(clippy::excessive_precision)]
const GL8_W: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..4 {
        let dx = half * GL8_X[i];
        acc += GL8_W[i] * (f(center - dx) + f(center + dx));
    }
    acc * half
}

/// Composite Gauss with panels shrinking geometrically toward `a`,
/// resolving the kernel's logarithmic variation near the left endpoint.
fn gauss_geometric<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, octaves: usize) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let width = b - a;
    let mut acc = gauss8(f, a, a + width * 0.5_f64.powi(octaves as i32));
    for k in (0..octaves).rev() {
        let lo = a + width * 0.5_f64.powi(k as i32 + 1);
        let hi = a + width * 0.5_f64.powi(k as i32);
        acc += gauss8(f, lo, hi);
    }
    acc
}

/// Uehling potential of the extended nucleus: the point-source form
/// folded with the uniform charge density of `model`, in eV.
///
/// Swapping the fold's integration order gives a positive integrand
///   V(r) = −(2Zα²/3π)·(3/(2R³r))·∫ K(2s) Λ(s) ds
/// with the chord weight Λ(s) = 2rs for s ≤ |R − r| inside the nucleus
/// and ½[R² − (r − s)²] up to s = R + r. For r well outside the folding
/// window this reduces to [`uehling_point`].
pub fn uehling_folded(
    model: &crate::nuclear::NuclearModel,
    r_fm: f64,
    consts: &ConstantsSet,
) -> Result<f64, UehlingError> {
    if !(r_fm > 0.0) {
        return Err(UehlingError::NonPositiveR(r_fm));
    }
    let lambda_bar = consts.lambda_bar_fm();
    let r = r_fm / lambda_bar;
    let rn = model.radius_fm() / lambda_bar;
    let z = model.z() as f64;

    if r > rn + 40.0 {
        return uehling_point(model.z(), r_fm, consts);
    }

    let s_break = (rn - r).abs();
    let s_hi = (rn + r).min(0.5 * KERNEL_SPLINE_MAX);
    let near = |s: f64| kernel_fast(2.0 * s) * 2.0 * r * s;
    let far = |s: f64| kernel_fast(2.0 * s) * 0.5 * (rn * rn - (r - s) * (r - s));

    let mut radial = 0.0;
    if r < rn {
        // inner piece has the full-chord weight 2rs
        radial += gauss_geometric(&near, 0.0, s_break, 44);
    }
    let s_lo = if r < rn { s_break } else { s_break.min(s_hi) };
    if s_hi > s_lo {
        radial += gauss_geometric(&far, s_lo, s_hi, 44);
    }

    let prefactor = -2.0 * z * consts.alpha * consts.alpha / (3.0 * std::f64::consts::PI)
        * 3.0
        / (2.0 * rn.powi(3) * r);
    Ok(prefactor * radial * consts.electron_mass_ev)
}

/// Which charge distribution sources the vacuum-polarization potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum UehlingSource {
    /// Z/r point-Coulomb source everywhere.
    PointCharge,
    /// Point-source form folded with the nucleus' uniform charge density.
    FoldedUniform,
}

/// V_U sampled on a grid and wrapped for the solver.
///
/// Between nodes the solver needs values at integrator substeps; those
/// come from a cubic spline of V_U·r in the log variable, which is smooth
/// through both the logarithmic origin enhancement and the exponential
/// tail.
#[derive(Debug, Clone)]
pub struct UehlingTable {
    z: u32,
    values_ev: Vec<f64>,
    grid: RadialGrid,
    spline_vr: UniformCubicSpline,
}

/// Samples [`uehling_point`] at every node of `grid`.
pub fn uehling_on_grid(
    z: u32,
    grid: &RadialGrid,
    consts: &ConstantsSet,
) -> Result<UehlingTable, UehlingError> {
    let mut values = Vec::with_capacity(grid.len());
    for &r in grid.points() {
        values.push(uehling_point(z, r, consts)?);
    }
    finish_table(z, grid, values)
}

/// Samples the potential of the requested source at every node.
pub fn uehling_table_for(
    model: &crate::nuclear::NuclearModel,
    grid: &RadialGrid,
    consts: &ConstantsSet,
    source: UehlingSource,
) -> Result<UehlingTable, UehlingError> {
    match source {
        UehlingSource::PointCharge => uehling_on_grid(model.z(), grid, consts),
        UehlingSource::FoldedUniform => {
            let mut values = Vec::with_capacity(grid.len());
            for &r in grid.points() {
                values.push(uehling_folded(model, r, consts)?);
            }
            finish_table(model.z(), grid, values)
        }
    }
}

fn finish_table(
    z: u32,
    grid: &RadialGrid,
    values: Vec<f64>,
) -> Result<UehlingTable, UehlingError> {
    let vr: Vec<f64> = grid
        .points()
        .iter()
        .zip(&values)
        .map(|(&r, &v)| v * r)
        .collect();
    let spline = UniformCubicSpline::new(grid.r_min().ln(), grid.log_step(), vr);
    Ok(UehlingTable {
        z,
        values_ev: values,
        grid: grid.clone(),
        spline_vr: spline,
    })
}

impl UehlingTable {
    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Node values in eV.
    pub fn values_ev(&self) -> &[f64] {
        &self.values_ev
    }
}

impl RadialPotential for UehlingTable {
    fn value_ev(&self, r_fm: f64) -> f64 {
        self.spline_vr.eval(r_fm.ln()) / r_fm
    }
}
