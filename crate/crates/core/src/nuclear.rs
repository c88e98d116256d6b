//! Nuclear charge distribution, the nuclear Coulomb potential, and the
//! normalized density that enters the parity-violating contact operator.

use crate::constants::ConstantsSet;
use serde::Serialize;

/// Radius rule coefficient in fm for R = 1.2 A^(1/3).
pub const RADIUS_COEFF_FM: f64 = 1.2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NuclearModelError {
    #[error("atomic weight must be positive, got {0}")]
    NonPositiveA(f64),
    #[error("proton number must be at least 1, got {0}")]
    InvalidZ(u32),
    #[error("negative neutron count for Z = {z}, A = {a}")]
    NegativeNeutronCount { z: u32, a: f64 },
    #[error("radius must be positive, got {0} fm")]
    NonPositiveRadius(f64),
    #[error("radius must be positive, got r = {0} fm")]
    NonPositiveR(f64),
    #[error("malformed isotope CSV line {line}: {reason}")]
    MalformedCsv { line: usize, reason: String },
}

/// Charge-density shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NuclearShape {
    /// Point charge; PNC integrals evaluate the integrand at contact.
    Point,
    /// Uniformly charged sphere of the model radius.
    UniformSphere,
}

/// How the density enters a radial integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityProfile {
    /// Evaluate the (integrand / 4πr²) limit at the contact scale.
    Contact,
    /// Constant ρ₀ inside `radius_fm`, zero outside.
    Uniform { rho_fm3: f64, radius_fm: f64 },
}

/// Returns R = 1.2 A^(1/3) in fm.
pub fn nuclear_radius(a: f64) -> Result<f64, NuclearModelError> {
    if !(a > 0.0) {
        return Err(NuclearModelError::NonPositiveA(a));
    }
    Ok(RADIUS_COEFF_FM * a.cbrt())
}

/// Immutable description of one nucleus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuclearModel {
    z: u32,
    a: f64,
    neutrons: u32,
    radius_fm: f64,
    shape: NuclearShape,
}

impl NuclearModel {
    /// Uniform sphere with the default radius rule.
    pub fn uniform_sphere(z: u32, a: f64) -> Result<Self, NuclearModelError> {
        let radius = nuclear_radius(a)?;
        Self::with_radius(z, a, radius)
    }

    /// Uniform sphere with an explicit radius.
    pub fn with_radius(z: u32, a: f64, radius_fm: f64) -> Result<Self, NuclearModelError> {
        if z < 1 {
            return Err(NuclearModelError::InvalidZ(z));
        }
        if !(a > 0.0) {
            return Err(NuclearModelError::NonPositiveA(a));
        }
        if !(radius_fm > 0.0) {
            return Err(NuclearModelError::NonPositiveRadius(radius_fm));
        }
        let neutrons = neutron_count(z, a)?;
        Ok(Self {
            z,
            a,
            neutrons,
            radius_fm,
            shape: NuclearShape::UniformSphere,
        })
    }

    /// Point nucleus (solver validation only).
    pub fn point(z: u32, a: f64) -> Result<Self, NuclearModelError> {
        if z < 1 {
            return Err(NuclearModelError::InvalidZ(z));
        }
        if !(a > 0.0) {
            return Err(NuclearModelError::NonPositiveA(a));
        }
        let neutrons = neutron_count(z, a)?;
        let radius = nuclear_radius(a)?;
        Ok(Self {
            z,
            a,
            neutrons,
            radius_fm: radius,
            shape: NuclearShape::Point,
        })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Integer neutron count, round(A) − Z.
    pub fn neutrons(&self) -> u32 {
        self.neutrons
    }

    /// Fractional neutron count A − Z.
    pub fn neutrons_from_atomic_weight(&self) -> f64 {
        self.a - self.z as f64
    }

    pub fn radius_fm(&self) -> f64 {
        self.radius_fm
    }

    pub fn shape(&self) -> NuclearShape {
        self.shape
    }

    /// Nuclear Coulomb potential energy for the electron at `r_fm`, in eV.
    pub fn coulomb_potential(
        &self,
        r_fm: f64,
        consts: &ConstantsSet,
    ) -> Result<f64, NuclearModelError> {
        if !(r_fm > 0.0) {
            return Err(NuclearModelError::NonPositiveR(r_fm));
        }
        let z_alpha_hbarc = self.z as f64 * consts.alpha * consts.hbar_c_ev_fm;
        Ok(match self.shape {
            NuclearShape::Point => -z_alpha_hbarc / r_fm,
            NuclearShape::UniformSphere => {
                let rn = self.radius_fm;
                if r_fm <= rn {
                    let x = r_fm / rn;
                    -(z_alpha_hbarc / (2.0 * rn)) * (3.0 - x * x)
                } else {
                    -z_alpha_hbarc / r_fm
                }
            }
        })
    }

    /// Same potential in units of m_e with r in reduced Compton wavelengths.
    #[inline]
    pub fn coulomb_potential_natural(&self, r_nat: f64, consts: &ConstantsSet) -> f64 {
        debug_assert!(r_nat > 0.0);
        let z_alpha = self.z as f64 * consts.alpha;
        match self.shape {
            NuclearShape::Point => -z_alpha / r_nat,
            NuclearShape::UniformSphere => {
                let rn = self.radius_fm / consts.lambda_bar_fm();
                if r_nat <= rn {
                    let x = r_nat / rn;
                    -(z_alpha / (2.0 * rn)) * (3.0 - x * x)
                } else {
                    -z_alpha / r_nat
                }
            }
        }
    }

    /// Normalized charge density at `r_fm` in fm⁻³ (zero for the point shape,
    /// which integrates by contact evaluation instead — see
    /// [`NuclearModel::density_profile`]).
    pub fn density(&self, r_fm: f64) -> f64 {
        match self.shape {
            NuclearShape::Point => 0.0,
            NuclearShape::UniformSphere => {
                if r_fm <= self.radius_fm {
                    3.0 / (4.0 * std::f64::consts::PI * self.radius_fm.powi(3))
                } else {
                    0.0
                }
            }
        }
    }

    /// Density description for radial integrators.
    pub fn density_profile(&self) -> DensityProfile {
        match self.shape {
            NuclearShape::Point => DensityProfile::Contact,
            NuclearShape::UniformSphere => DensityProfile::Uniform {
                rho_fm3: 3.0 / (4.0 * std::f64::consts::PI * self.radius_fm.powi(3)),
                radius_fm: self.radius_fm,
            },
        }
    }
}

fn neutron_count(z: u32, a: f64) -> Result<u32, NuclearModelError> {
    let mass_number = a.round() as i64;
    let n = mass_number - z as i64;
    if n < 0 {
        return Err(NuclearModelError::NegativeNeutronCount { z, a });
    }
    Ok(n as u32)
}

/// Parses `(Z, A)` pairs from CSV text (one `Z,A` pair per line; `#`
/// comments and an optional `Z,A` header are skipped).
pub fn parse_isotope_csv(text: &str) -> Result<Vec<(u32, f64)>, NuclearModelError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if idx == 0 && line.to_ascii_lowercase().starts_with('z') {
            continue;
        }
        let mut fields = line.split(',');
        let z_text = fields.next().unwrap_or_default().trim();
        let a_text = fields
            .next()
            .ok_or_else(|| NuclearModelError::MalformedCsv {
                line: idx + 1,
                reason: "missing A column".into(),
            })?
            .trim();
        let z: u32 = z_text.parse().map_err(|_| NuclearModelError::MalformedCsv {
            line: idx + 1,
            reason: format!("bad Z `{z_text}`"),
        })?;
        let a: f64 = a_text.parse().map_err(|_| NuclearModelError::MalformedCsv {
            line: idx + 1,
            reason: format!("bad A `{a_text}`"),
        })?;
        out.push((z, a));
    }
    Ok(out)
}
