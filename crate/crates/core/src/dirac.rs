//! Bound states of the radial Dirac equation for an electron in the
//! nuclear potential, optionally augmented by an extra radial potential
//! (the vacuum-polarization term in the main pipeline).
//!
//! Convention: ψ = (1/r)(g Ω_κ, i f Ω_{−κ}) with
//!   dg/dr = −(κ/r) g + ((E + m − V)/ħc) f
//!   df/dr =  (κ/r) f − ((E − m − V)/ħc) g
//! and E the total energy including the rest mass. Internally everything
//! runs in natural units (m_e = 1, lengths in reduced Compton
//! wavelengths) on the log mesh; stored states carry r in fm with
//! ∫(g² + f²) dr = 1 in fm.

use crate::constants::ConstantsSet;
use crate::nuclear::{NuclearModel, NuclearShape};
use crate::numerics::ode::{propagate_cell, Components, DiracRhs, DEFAULT_MAX_PHASE_STEP};
use crate::numerics::{
    find_root_bracketed, integrate_on_grid, make_grid, NumericsError, RadialGrid,
};

/// Extra radial potential added on top of the nuclear Coulomb term.
pub trait RadialPotential: Sync {
    /// Potential energy in eV at radius `r_fm`.
    fn value_ev(&self, r_fm: f64) -> f64;
}

/// A potential scaled by a dimensionless strength (used by the
/// perturbative cross-check).
pub struct ScaledPotential<'a> {
    pub inner: &'a dyn RadialPotential,
    pub strength: f64,
}

impl RadialPotential for ScaledPotential<'_> {
    fn value_ev(&self, r_fm: f64) -> f64 {
        self.strength * self.inner.value_ev(r_fm)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("invalid quantum numbers n = {n}, kappa = {kappa}")]
    InvalidQuantumNumbers { n: u32, kappa: i32 },
    #[error("point-Coulomb bound state undefined for alpha*Z = {z_alpha} >= |kappa|")]
    SupercriticalCharge { z_alpha: f64 },
    #[error(
        "no eigenvalue with {target_nodes} nodes in ({e_lo_ev} eV, {e_hi_ev} eV)"
    )]
    NoEigenvalueInBracket {
        e_lo_ev: f64,
        e_hi_ev: f64,
        target_nodes: usize,
    },
    #[error(
        "boundary amplitude {boundary_ratio:.2e} above 1e-12 of the peak; \
         enlarge the grid to r_max >= {suggest_r_max_fm:.3e} fm"
    )]
    GridTooSmall {
        boundary_ratio: f64,
        suggest_r_max_fm: f64,
    },
    #[error("converged to {found} nodes, expected {expected}")]
    WrongNodeCount { expected: usize, found: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// One bound solution on its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracState {
    n: u32,
    kappa: i32,
    energy_ev: f64,
    g: Vec<f64>,
    f: Vec<f64>,
    grid: RadialGrid,
}

impl DiracState {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    /// Total energy including the rest mass, in eV.
    pub fn energy_ev(&self) -> f64 {
        self.energy_ev
    }

    /// Binding energy m_e − E in eV (positive for bound states).
    pub fn binding_energy_ev(&self, consts: &ConstantsSet) -> f64 {
        consts.electron_mass_ev - self.energy_ev
    }

    /// Large component on the grid; ∫(g² + f²) dr_fm = 1.
    pub fn g(&self) -> &[f64] {
        &self.g
    }

    /// Small component on the grid.
    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Orbital angular momentum of the large component.
    pub fn orbital_l(&self) -> u32 {
        orbital_l(self.kappa)
    }

    /// Radial overlap ∫(g₁g₂ + f₁f₂) dr with another state on the same grid.
    pub fn overlap(&self, other: &DiracState) -> Result<f64, SolverError> {
        if self.grid != other.grid {
            return Err(SolverError::Numerics(NumericsError::InvalidGrid(
                "overlap requires identical grids".into(),
            )));
        }
        let samples: Vec<f64> = (0..self.g.len())
            .map(|i| self.g[i] * other.g[i] + self.f[i] * other.f[i])
            .collect();
        Ok(integrate_on_grid(&samples, &self.grid)?.value)
    }

    /// ⟨ψ|H|ψ⟩ in eV, with the kinetic part applied to the stored
    /// components by numerical differentiation on the grid.
    pub fn energy_expectation_ev(
        &self,
        potential_ev: impl Fn(f64) -> f64,
        consts: &ConstantsSet,
    ) -> Result<f64, SolverError> {
        let r = self.grid.points();
        let n = r.len();
        let dg = crate::numerics::derivative_on_grid(&self.g, &self.grid)?;
        let df = crate::numerics::derivative_on_grid(&self.f, &self.grid)?;
        let m = consts.electron_mass_ev;
        let hbar_c = consts.hbar_c_ev_fm;
        let kappa = self.kappa as f64;
        let mut samples = vec![0.0; n];
        for i in 0..n {
            let v = potential_ev(r[i]);
            let h_g = (m + v) * self.g[i] + hbar_c * (-df[i] + kappa * self.f[i] / r[i]);
            let h_f = hbar_c * (dg[i] + kappa * self.g[i] / r[i]) + (v - m) * self.f[i];
            samples[i] = self.g[i] * h_g + self.f[i] * h_f;
        }
        Ok(integrate_on_grid(&samples, &self.grid)?.value)
    }
}

/// ℓ for the large component: κ for κ > 0, −κ − 1 for κ < 0.
pub fn orbital_l(kappa: i32) -> u32 {
    if kappa > 0 {
        kappa as u32
    } else {
        (-kappa - 1) as u32
    }
}

fn validate_quantum_numbers(n: u32, kappa: i32) -> Result<usize, SolverError> {
    if n == 0 || kappa == 0 || kappa < -(n as i32) || kappa > n as i32 - 1 {
        return Err(SolverError::InvalidQuantumNumbers { n, kappa });
    }
    let l = orbital_l(kappa);
    if l > n - 1 {
        return Err(SolverError::InvalidQuantumNumbers { n, kappa });
    }
    Ok((n - l - 1) as usize)
}

/// Closed-form point-Coulomb (Sommerfeld) energy in eV, rest mass included.
pub fn sommerfeld_energy_ev(
    z: u32,
    n: u32,
    kappa: i32,
    consts: &ConstantsSet,
) -> Result<f64, SolverError> {
    validate_quantum_numbers(n, kappa)?;
    let z_alpha = consts.alpha * z as f64;
    let abs_kappa = kappa.unsigned_abs() as f64;
    if z_alpha >= abs_kappa {
        return Err(SolverError::SupercriticalCharge { z_alpha });
    }
    let gamma = (abs_kappa * abs_kappa - z_alpha * z_alpha).sqrt();
    let n_eff = n as f64 - abs_kappa + gamma;
    let e_natural = 1.0 / (1.0 + (z_alpha / n_eff).powi(2)).sqrt();
    Ok(e_natural * consts.electron_mass_ev)
}

/// Solver controls; the defaults reproduce the accuracy targets used by
/// the table pipeline.
#[derive(Debug, Clone)]
pub struct SolverParams {
    /// Cap on local phase per integrator substep.
    pub max_phase_step: f64,
    /// Absolute tolerance on the eigenvalue, as a fraction of the binding energy.
    pub energy_tol_rel: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            max_phase_step: DEFAULT_MAX_PHASE_STEP,
            energy_tol_rel: 1e-14,
        }
    }
}

/// Builds a grid suited to the bound states of principal quantum number
/// `n_max` for this nucleus: r_min resolves the nuclear interior, r_max
/// reaches the exponential tail floor.
pub fn default_grid(
    model: &NuclearModel,
    n_max: u32,
    consts: &ConstantsSet,
    points: usize,
) -> Result<RadialGrid, SolverError> {
    let lambda_bar = consts.lambda_bar_fm();
    let r_min_fm = 1e-4 * model.radius_fm();
    let z_alpha = consts.alpha * model.z() as f64;
    let e_guess = sommerfeld_energy_ev(model.z(), n_max, -1, consts)? / consts.electron_mass_ev;
    let lambda = (1.0 - e_guess * e_guess).sqrt();
    let r_turn = z_alpha / (1.0 - e_guess);
    let r_max_fm = (r_turn + 45.0 / lambda) * lambda_bar;
    Ok(make_grid(r_min_fm, r_max_fm, points)?)
}

struct Shooter<'a> {
    grid_t: Vec<f64>,
    kappa: f64,
    potential_nat: Box<dyn Fn(f64) -> f64 + 'a>,
    max_phase_step: f64,
    // interior expansion data
    shape: NuclearShape,
    z_alpha: f64,
    v0: f64,
    v2: f64,
    g_out: Vec<f64>,
    f_out: Vec<f64>,
    g_in: Vec<f64>,
    f_in: Vec<f64>,
}

struct Shot {
    mismatch: f64,
    nodes: usize,
    match_index: usize,
}

impl<'a> Shooter<'a> {
    fn shoot(&mut self, energy: f64, forced_match: Option<usize>) -> Result<Shot, SolverError> {
        let n = self.grid_t.len();
        let rhs = DiracRhs {
            kappa: self.kappa,
            energy,
            potential: self.potential_nat.as_ref(),
        };
        let match_index = forced_match.unwrap_or_else(|| self.match_index(energy));

        // outward
        let r0 = self.grid_t[0].exp();
        let y0 = self.series_start(energy, r0);
        self.g_out[0] = y0.g;
        self.f_out[0] = y0.f;
        let mut y = y0;
        for i in 0..match_index {
            let h = self.grid_t[i + 1] - self.grid_t[i];
            y = propagate_cell(&rhs, self.grid_t[i], h, y, self.max_phase_step)?;
            self.g_out[i + 1] = y.g;
            self.f_out[i + 1] = y.f;
            let mag = y.g.abs().max(y.f.abs());
            if mag > 1e250 {
                let s = 1e-250;
                for k in 0..=i + 1 {
                    self.g_out[k] *= s;
                    self.f_out[k] *= s;
                }
                y.g *= s;
                y.f *= s;
            }
        }

        // inward, from the local asymptotic decay at r_max
        let r_last = self.grid_t[n - 1].exp();
        let v_last = (self.potential_nat)(r_last);
        let w = energy - v_last;
        let lambda = (1.0 - w * w).max(1e-18).sqrt();
        let mut yin = Components {
            g: 1.0,
            f: (-lambda + self.kappa / r_last) / (energy + 1.0 - v_last),
        };
        self.g_in[n - 1] = yin.g;
        self.f_in[n - 1] = yin.f;
        for i in (match_index..n - 1).rev() {
            let h = self.grid_t[i] - self.grid_t[i + 1];
            yin = propagate_cell(&rhs, self.grid_t[i + 1], h, yin, self.max_phase_step)?;
            self.g_in[i] = yin.g;
            self.f_in[i] = yin.f;
            let mag = yin.g.abs().max(yin.f.abs());
            if mag > 1e250 {
                let s = 1e-250;
                for k in i..n {
                    self.g_in[k] *= s;
                    self.f_in[k] *= s;
                }
                yin.g *= s;
                yin.f *= s;
            }
        }

        let (go, fo) = (self.g_out[match_index], self.f_out[match_index]);
        let (gi, fi) = (self.g_in[match_index], self.f_in[match_index]);
        let scale = go.abs() * gi.abs() + fo.abs() * fi.abs();
        let mismatch = (fo * gi - fi * go) / scale.max(f64::MIN_POSITIVE);

        let nodes = self.count_nodes(match_index);
        Ok(Shot {
            mismatch,
            nodes,
            match_index,
        })
    }

    /// Outer classical turning point index for this energy, clamped away
    /// from the grid ends.
    fn match_index(&self, energy: f64) -> usize {
        let n = self.grid_t.len();
        let mut idx = n / 2;
        for i in (0..n).rev() {
            let r = self.grid_t[i].exp();
            if (self.potential_nat)(r) <= energy - 1.0 {
                idx = i;
                break;
            }
        }
        idx.clamp(8, n - 9)
    }

    /// Regular series start at r0.
    fn series_start(&self, energy: f64, r0: f64) -> Components {
        match self.shape {
            NuclearShape::Point => {
                let gamma = (self.kappa * self.kappa - self.z_alpha * self.z_alpha).sqrt();
                let p0 = 1.0;
                let q0 = (gamma + self.kappa) / self.z_alpha;
                let det = 2.0 * gamma + 1.0;
                let p1 = ((gamma + 1.0 - self.kappa) * (energy + 1.0) * q0
                    - self.z_alpha * (energy - 1.0) * p0)
                    / det;
                let q1 = (-self.z_alpha * (energy + 1.0) * q0
                    - (gamma + 1.0 + self.kappa) * (energy - 1.0) * p0)
                    / det;
                let scale = r0.powf(gamma);
                Components {
                    g: scale * (p0 + p1 * r0),
                    f: scale * (q0 + q1 * r0),
                }
            }
            NuclearShape::UniformSphere => {
                // interior quadratic potential V = v0 + v2 r²
                let a = energy + 1.0 - self.v0;
                let c = 1.0 - energy + self.v0;
                if self.kappa < 0.0 {
                    // s_1/2: g ~ r, f ~ r²
                    let q1 = c / 3.0;
                    let p2 = a * q1 / 2.0;
                    let q3 = (c * p2 + self.v2) / 5.0;
                    Components {
                        g: r0 + p2 * r0.powi(3),
                        f: q1 * r0 * r0 + q3 * r0.powi(4),
                    }
                } else {
                    // p_1/2: f ~ r, g ~ r²
                    let p1 = a / 3.0;
                    let q2 = c * p1 / 2.0;
                    let p3 = (a * q2 - self.v2) / 5.0;
                    Components {
                        g: p1 * r0 * r0 + p3 * r0.powi(4),
                        f: r0 + q2 * r0.powi(3),
                    }
                }
            }
        }
    }

    fn count_nodes(&self, match_index: usize) -> usize {
        let n = self.grid_t.len();
        let scale = if self.g_in[match_index].abs() > f64::MIN_POSITIVE {
            self.g_out[match_index] / self.g_in[match_index]
        } else {
            1.0
        };
        let peak_out = self.g_out[..=match_index]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        let peak = peak_out.max(
            self.g_in[match_index..]
                .iter()
                .fold(0.0_f64, |m, v| m.max(v.abs()))
                * scale.abs(),
        );
        let floor = peak * 1e-9;
        let mut nodes = 0;
        let mut prev = 0.0_f64;
        for i in 0..n {
            let val = if i <= match_index {
                self.g_out[i]
            } else {
                self.g_in[i] * scale
            };
            if val.abs() <= floor {
                continue;
            }
            if prev != 0.0 && val.signum() != prev.signum() {
                nodes += 1;
            }
            prev = val;
        }
        nodes
    }
}

/// Solves one bound state on the given grid.
pub fn solve_bound_state_on_grid(
    model: &NuclearModel,
    extra_potential: Option<&dyn RadialPotential>,
    n: u32,
    kappa: i32,
    consts: &ConstantsSet,
    grid: &RadialGrid,
    params: &SolverParams,
) -> Result<DiracState, SolverError> {
    let target_nodes = validate_quantum_numbers(n, kappa)?;
    let z_alpha = consts.alpha * model.z() as f64;
    if model.shape() == NuclearShape::Point && z_alpha >= kappa.unsigned_abs() as f64 {
        return Err(SolverError::SupercriticalCharge { z_alpha });
    }

    let lambda_bar = consts.lambda_bar_fm();
    let m_ev = consts.electron_mass_ev;
    let grid_t: Vec<f64> = grid.points().iter().map(|&r| (r / lambda_bar).ln()).collect();

    let model_clone = model.clone();
    let consts_clone = consts.clone();
    let potential_nat: Box<dyn Fn(f64) -> f64 + '_> = match extra_potential {
        Some(extra) => {
            let lambda = consts.lambda_bar_fm();
            let mass = consts.electron_mass_ev;
            Box::new(move |r_nat: f64| {
                model_clone.coulomb_potential_natural(r_nat, &consts_clone)
                    + extra.value_ev(r_nat * lambda) / mass
            })
        }
        None => Box::new(move |r_nat: f64| {
            model_clone.coulomb_potential_natural(r_nat, &consts_clone)
        }),
    };

    let r_nucl_nat = model.radius_fm() / lambda_bar;
    let v0 = match model.shape() {
        NuclearShape::Point => 0.0,
        NuclearShape::UniformSphere => {
            -1.5 * z_alpha / r_nucl_nat + extra_potential.map_or(0.0, |p| {
                p.value_ev(grid.r_min()) / m_ev
            })
        }
    };
    let v2 = match model.shape() {
        NuclearShape::Point => 0.0,
        NuclearShape::UniformSphere => 0.5 * z_alpha / r_nucl_nat.powi(3),
    };

    let npts = grid.len();
    let mut shooter = Shooter {
        grid_t,
        kappa: kappa as f64,
        potential_nat,
        max_phase_step: params.max_phase_step,
        shape: model.shape(),
        z_alpha,
        v0,
        v2,
        g_out: vec![0.0; npts],
        f_out: vec![0.0; npts],
        g_in: vec![0.0; npts],
        f_in: vec![0.0; npts],
    };

    // Initial window around the point-Coulomb estimate; widened on demand
    // until its ends straddle the target node count. An extra potential's
    // boundary value offsets the whole spectrum (constant shifts move the
    // eigenvalue rigidly); the nuclear Coulomb tail at r_max only bounds
    // the estimate's uncertainty, so it widens the margins instead.
    let r_edge = shooter.grid_t[npts - 1].exp();
    let v_extra_edge = extra_potential
        .map_or(0.0, |p| p.value_ev(grid.r_max()) / m_ev);
    let v_edge = (shooter.potential_nat)(r_edge);
    let tail = (v_edge - v_extra_edge).abs();
    let e_center = sommerfeld_energy_ev(model.z(), n, kappa, consts)? / m_ev + v_extra_edge;
    let binding = 1.0 + v_extra_edge - e_center;
    let e_floor = v_edge - 0.999;
    let e_ceiling = 1.0 + v_edge;
    let mut e_lo = (e_center - 0.05 * binding - 2.0 * tail).max(e_floor);
    let mut e_hi = (e_center + 0.10 * binding + 2.0 * tail).min(e_ceiling - 1e-13);
    let mut nodes_lo = shooter.shoot(e_lo, None)?.nodes;
    let mut nodes_hi = shooter.shoot(e_hi, None)?.nodes;
    let mut expansions = 0;
    while nodes_lo > target_nodes || nodes_hi < target_nodes {
        if nodes_lo > target_nodes {
            e_lo = (e_center - (e_center - e_lo) * 3.0).max(e_floor);
            nodes_lo = shooter.shoot(e_lo, None)?.nodes;
        }
        if nodes_hi < target_nodes {
            e_hi = (e_center + (e_hi - e_center) * 3.0).min(e_ceiling - 1e-14);
            nodes_hi = shooter.shoot(e_hi, None)?.nodes;
        }
        expansions += 1;
        if expansions > 60 {
            return Err(SolverError::NoEigenvalueInBracket {
                e_lo_ev: e_lo * m_ev,
                e_hi_ev: e_hi * m_ev,
                target_nodes,
            });
        }
    }

    // The eigenvalue is the mismatch zero inside the energy interval where
    // the assembled solution carries exactly the target node count; node
    // transitions themselves sit between eigenvalues. Pull both window ends
    // into that interval by bisection.
    let no_eigenvalue = |lo: f64, hi: f64| SolverError::NoEigenvalueInBracket {
        e_lo_ev: lo * m_ev,
        e_hi_ev: hi * m_ev,
        target_nodes,
    };
    if nodes_lo < target_nodes {
        // raise e_lo to the lower edge of the target-node interval
        let mut a = e_lo;
        let mut b = if nodes_hi == target_nodes {
            e_hi
        } else {
            // find any interior point with the target count first
            let mut b = e_hi;
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                let nodes = shooter.shoot(mid, None)?.nodes;
                match nodes.cmp(&target_nodes) {
                    std::cmp::Ordering::Less => a = mid,
                    std::cmp::Ordering::Greater => b = mid,
                    std::cmp::Ordering::Equal => {
                        b = mid;
                        break;
                    }
                }
            }
            if shooter.shoot(b, None)?.nodes != target_nodes {
                return Err(no_eigenvalue(e_lo, e_hi));
            }
            b
        };
        for _ in 0..60 {
            if b - a <= 1e-4 * binding {
                break;
            }
            let mid = 0.5 * (a + b);
            if shooter.shoot(mid, None)?.nodes < target_nodes {
                a = mid;
            } else {
                b = mid;
            }
        }
        e_lo = b;
    }
    if nodes_hi > target_nodes {
        // lower e_hi to the upper edge of the target-node interval
        let mut a = e_lo;
        let mut b = e_hi;
        for _ in 0..60 {
            if b - a <= 1e-4 * binding {
                break;
            }
            let mid = 0.5 * (a + b);
            if shooter.shoot(mid, None)?.nodes > target_nodes {
                b = mid;
            } else {
                a = mid;
            }
        }
        e_hi = a;
    }
    if shooter.shoot(e_lo, None)?.nodes != target_nodes
        || shooter.shoot(e_hi, None)?.nodes != target_nodes
    {
        return Err(no_eigenvalue(e_lo, e_hi));
    }

    // Freeze the matching index so the root function is continuous in E,
    // then bracket the mismatch zero inside [e_lo, e_hi].
    let tol_e = params.energy_tol_rel * binding;
    let im = shooter.match_index(0.5 * (e_lo + e_hi));
    let mut bracket = None;
    let mut samples = 8;
    'scan: for _ in 0..4 {
        let mut prev_e = e_lo;
        let mut prev_d = shooter.shoot(prev_e, Some(im))?.mismatch;
        for k in 1..=samples {
            let e = e_lo + (e_hi - e_lo) * k as f64 / samples as f64;
            let d = shooter.shoot(e, Some(im))?.mismatch;
            if prev_d == 0.0 {
                bracket = Some((prev_e, prev_e));
                break 'scan;
            }
            if d == 0.0 || d.signum() != prev_d.signum() {
                bracket = Some((prev_e, e));
                break 'scan;
            }
            prev_e = e;
            prev_d = d;
        }
        samples *= 4;
    }
    let (b_lo, b_hi) = bracket.ok_or_else(|| no_eigenvalue(e_lo, e_hi))?;
    let energy = if b_lo == b_hi {
        b_lo
    } else {
        let mut shoot_error: Option<SolverError> = None;
        let root = find_root_bracketed(
            |e| match shooter.shoot(e, Some(im)) {
                Ok(s) => s.mismatch,
                Err(err) => {
                    shoot_error.get_or_insert(err);
                    f64::NAN
                }
            },
            b_lo,
            b_hi,
            tol_e,
        );
        if let Some(err) = shoot_error {
            return Err(err);
        }
        root?
    };

    // Final assembly at the converged energy.
    let final_shot = shooter.shoot(energy, Some(im))?;
    if final_shot.nodes != target_nodes {
        return Err(SolverError::WrongNodeCount {
            expected: target_nodes,
            found: final_shot.nodes,
        });
    }
    let im = final_shot.match_index;
    let (go, fo) = (shooter.g_out[im], shooter.f_out[im]);
    let (gi, fi) = (shooter.g_in[im], shooter.f_in[im]);
    let scale = if gi.abs() >= fi.abs() * 0.1 && gi != 0.0 {
        go / gi
    } else {
        fo / fi
    };
    let mut g = vec![0.0; npts];
    let mut f = vec![0.0; npts];
    g[..=im].copy_from_slice(&shooter.g_out[..=im]);
    f[..=im].copy_from_slice(&shooter.f_out[..=im]);
    for i in im + 1..npts {
        g[i] = shooter.g_in[i] * scale;
        f[i] = shooter.f_in[i] * scale;
    }

    // Normalize in fm: ∫(g² + f²) dr_fm = 1.
    let samples: Vec<f64> = (0..npts).map(|i| g[i] * g[i] + f[i] * f[i]).collect();
    let norm = integrate_on_grid(&samples, grid)?.value.sqrt();
    for i in 0..npts {
        g[i] /= norm;
        f[i] /= norm;
    }

    // Boundary hygiene: the tail must be dead at r_max.
    let peak = g.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let boundary_ratio = g[npts - 1].abs().max(f[npts - 1].abs()) / peak;
    if boundary_ratio > 1e-12 {
        return Err(SolverError::GridTooSmall {
            boundary_ratio,
            suggest_r_max_fm: grid.r_max() * 2.0,
        });
    }

    Ok(DiracState {
        n,
        kappa,
        energy_ev: energy * m_ev,
        g,
        f,
        grid: grid.clone(),
    })
}

/// Convenience entry: builds a default grid and solves.
pub fn solve_bound_state(
    model: &NuclearModel,
    extra_potential: Option<&dyn RadialPotential>,
    n: u32,
    kappa: i32,
    consts: &ConstantsSet,
    grid_points: usize,
) -> Result<DiracState, SolverError> {
    let grid = default_grid(model, n, consts, grid_points)?;
    solve_bound_state_on_grid(
        model,
        extra_potential,
        n,
        kappa,
        consts,
        &grid,
        &SolverParams::default(),
    )
}
