//! Physical constants and energy-unit conversions.
//!
//! Every other module takes its numbers from here. Electromagnetic and
//! electron constants follow CODATA 2018; the Z-boson mass is the PDG
//! world average. The effective low-momentum-transfer Weinberg angle
//! defaults to sin²θ_W*(q²=0) = 0.2394, and the rescaled boson mass
//! M_Z* is stored so that (M_Z/M_Z*)² − 1 = 0.0880 exactly.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Fine-structure constant α (CODATA 2018).
pub const ALPHA: f64 = 7.297_352_569_3e-3;

/// Electron rest energy m_e c² in eV (CODATA 2018).
pub const ELECTRON_MASS_EV: f64 = 510_998.950_00;

/// ħc in eV·fm (CODATA 2018: 197.326 980 4 MeV·fm).
pub const HBAR_C_EV_FM: f64 = 197_326_980.4;

/// Fermi constant G_F in GeV⁻² (CODATA 2018: G_F/(ħc)³).
pub const FERMI_CONSTANT_GEV2: f64 = 1.166_378_7e-5;

/// Z-boson mass in GeV (PDG).
pub const MZ_GEV: f64 = 91.1876;

/// Reference "oblique" mass correction δ_P^M = (M_Z/M_Z*)² − 1.
pub const DELTA_P_M_REF: f64 = 0.0880;

/// Effective Weinberg angle sin²θ_W* scaled to q² = 0.
pub const SIN2_THETA_W_STAR: f64 = 0.2394;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstantsError {
    #[error("unknown energy unit `{0}` (expected eV, natural, or hartree)")]
    UnknownUnit(String),
    #[error("unknown constants key `{0}`")]
    UnknownKey(String),
    #[error("malformed constants line `{0}` (expected key = value)")]
    MalformedLine(String),
    #[error("invalid numeric value for `{key}`: {value}")]
    InvalidValue { key: String, value: String },
    #[error("constants violate invariant: {0}")]
    InvariantViolation(String),
    #[error("cannot read constants file: {0}")]
    Io(String),
}

/// Energy units understood by [`convert_energy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyUnit {
    /// Electronvolt.
    ElectronVolt,
    /// Natural units with m_e = 1.
    Natural,
    /// Atomic Hartree, α²·m_e.
    Hartree,
}

impl FromStr for EnergyUnit {
    type Err = ConstantsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ev" => Ok(Self::ElectronVolt),
            "natural" | "me" => Ok(Self::Natural),
            "hartree" | "ha" => Ok(Self::Hartree),
            other => Err(ConstantsError::UnknownUnit(other.to_string())),
        }
    }
}

impl fmt::Display for EnergyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ElectronVolt => write!(f, "eV"),
            Self::Natural => write!(f, "natural"),
            Self::Hartree => write!(f, "hartree"),
        }
    }
}

/// The full set of constants used across the crate.
///
/// Immutable after construction; share it freely.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsSet {
    /// Fine-structure constant (dimensionless).
    pub alpha: f64,
    /// Electron rest energy in eV.
    pub electron_mass_ev: f64,
    /// ħc in eV·fm.
    pub hbar_c_ev_fm: f64,
    /// Fermi constant in GeV⁻².
    pub fermi_constant: f64,
    /// Z-boson mass in GeV.
    pub mz_gev: f64,
    /// Z-boson mass scaled to q² = 0, in GeV.
    pub mz_star_gev: f64,
    /// sin²θ_W* at q² = 0.
    pub sin2_theta_w_star: f64,
}

impl Default for ConstantsSet {
    fn default() -> Self {
        default_constants()
    }
}

/// Returns the default constants set.
pub fn default_constants() -> ConstantsSet {
    ConstantsSet {
        alpha: ALPHA,
        electron_mass_ev: ELECTRON_MASS_EV,
        hbar_c_ev_fm: HBAR_C_EV_FM,
        fermi_constant: FERMI_CONSTANT_GEV2,
        mz_gev: MZ_GEV,
        // Fixed by the 0.0880 reference ratio rather than recomputed from
        // electroweak theory; the running between q² = 0 and m_e² is
        // negligible on this scale.
        mz_star_gev: MZ_GEV / (1.0 + DELTA_P_M_REF).sqrt(),
        sin2_theta_w_star: SIN2_THETA_W_STAR,
    }
}

impl ConstantsSet {
    /// η = 1 − 4 sin²θ_W*.
    pub fn eta(&self) -> f64 {
        1.0 - 4.0 * self.sin2_theta_w_star
    }

    /// Reduced electron Compton wavelength ħ/(m_e c) in fm.
    pub fn lambda_bar_fm(&self) -> f64 {
        self.hbar_c_ev_fm / self.electron_mass_ev
    }

    /// Bohr radius in fm.
    pub fn bohr_radius_fm(&self) -> f64 {
        self.lambda_bar_fm() / self.alpha
    }

    /// Hartree energy α²·m_e in eV.
    pub fn hartree_ev(&self) -> f64 {
        self.alpha * self.alpha * self.electron_mass_ev
    }

    /// Fermi constant converted to eV·fm³.
    pub fn fermi_constant_ev_fm3(&self) -> f64 {
        let hbar_c_gev_fm = self.hbar_c_ev_fm * 1e-9;
        self.fermi_constant * hbar_c_gev_fm.powi(3) * 1e9
    }

    /// (M_Z / M_Z*)² − 1 for the stored masses.
    pub fn delta_p_m(&self) -> f64 {
        crate::electroweak::delta_p_m(self.mz_gev, self.mz_star_gev)
    }

    /// A copy with the Fermi constant replaced by its tree-level value
    /// πα√2/(s²c²M_Z²) so that the Bouchiat and Sandars couplings coincide.
    pub fn tree_level_consistent(&self) -> ConstantsSet {
        let s2 = self.sin2_theta_w_star;
        let c2 = 1.0 - s2;
        let mut set = self.clone();
        set.fermi_constant = std::f64::consts::PI * self.alpha
            / (std::f64::consts::SQRT_2 * s2 * c2 * self.mz_gev * self.mz_gev);
        set
    }

    /// Checks the documented invariants.
    pub fn validate(&self) -> Result<(), ConstantsError> {
        if !(self.alpha > 1.0 / 138.0 && self.alpha < 1.0 / 137.0) {
            return Err(ConstantsError::InvariantViolation(format!(
                "alpha = {} outside (1/138, 1/137)",
                self.alpha
            )));
        }
        if !(self.sin2_theta_w_star > 0.0 && self.sin2_theta_w_star < 0.25) {
            return Err(ConstantsError::InvariantViolation(format!(
                "sin2_theta_w_star = {} outside (0, 0.25)",
                self.sin2_theta_w_star
            )));
        }
        for (name, value) in [
            ("electron_mass_ev", self.electron_mass_ev),
            ("hbar_c_ev_fm", self.hbar_c_ev_fm),
            ("fermi_constant", self.fermi_constant),
            ("mz_gev", self.mz_gev),
            ("mz_star_gev", self.mz_star_gev),
        ] {
            if !(value > 0.0) {
                return Err(ConstantsError::InvariantViolation(format!(
                    "{name} = {value} must be strictly positive"
                )));
            }
        }
        let dpm = self.delta_p_m();
        if (dpm - DELTA_P_M_REF).abs() > 5e-4 {
            return Err(ConstantsError::InvariantViolation(format!(
                "(mz/mz_star)^2 - 1 = {dpm:.6} departs from {DELTA_P_M_REF} by more than 5e-4"
            )));
        }
        Ok(())
    }

    /// Applies `key = value` overrides from a plain text file.
    ///
    /// Keys: alpha, electron_mass_ev, hbar_c_ev_fm, fermi_constant,
    /// mz_gev, mz_star_gev, sin2_theta_w_star. Lines starting with `#`
    /// are comments. The result is validated.
    pub fn with_overrides_from_file(&self, path: &Path) -> Result<ConstantsSet, ConstantsError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| ConstantsError::Io(e.to_string()))?;
        let mut set = self.clone();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConstantsError::MalformedLine(line.to_string()))?;
            let key = key.trim();
            let value = value.trim();
            let parsed: f64 = value.parse().map_err(|_| ConstantsError::InvalidValue {
                key: key.to_string(),
                value: value.to_string(),
            })?;
            match key {
                "alpha" => set.alpha = parsed,
                "electron_mass_ev" => set.electron_mass_ev = parsed,
                "hbar_c_ev_fm" => set.hbar_c_ev_fm = parsed,
                "fermi_constant" => set.fermi_constant = parsed,
                "mz_gev" => set.mz_gev = parsed,
                "mz_star_gev" => set.mz_star_gev = parsed,
                "sin2_theta_w_star" => set.sin2_theta_w_star = parsed,
                other => return Err(ConstantsError::UnknownKey(other.to_string())),
            }
        }
        set.validate()?;
        Ok(set)
    }

    /// Key/value view used by the `constants` CLI subcommand.
    pub fn as_map(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("alpha", self.alpha),
            ("electron_mass_ev", self.electron_mass_ev),
            ("hbar_c_ev_fm", self.hbar_c_ev_fm),
            ("fermi_constant", self.fermi_constant),
            ("mz_gev", self.mz_gev),
            ("mz_star_gev", self.mz_star_gev),
            ("sin2_theta_w_star", self.sin2_theta_w_star),
        ])
    }
}

fn to_ev_factor(unit: EnergyUnit, consts: &ConstantsSet) -> f64 {
    match unit {
        EnergyUnit::ElectronVolt => 1.0,
        EnergyUnit::Natural => consts.electron_mass_ev,
        EnergyUnit::Hartree => consts.hartree_ev(),
    }
}

/// Converts an energy between units via the eV chain.
pub fn convert_energy(
    value: f64,
    from_unit: EnergyUnit,
    to_unit: EnergyUnit,
    consts: &ConstantsSet,
) -> f64 {
    if from_unit == to_unit {
        return value;
    }
    value * to_ev_factor(from_unit, consts) / to_ev_factor(to_unit, consts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_values() {
        let c = default_constants();
        assert_eq!(c.sin2_theta_w_star, 0.2394);
        assert!((c.eta() - 0.0424).abs() < 1e-15);
        assert!(c.alpha > 1.0 / 138.0 && c.alpha < 1.0 / 137.0);
        assert!((1.0 / c.alpha - 137.036).abs() < 1e-3);
        c.validate().unwrap();
    }

    #[test]
    fn delta_p_m_is_exact_by_construction() {
        let c = default_constants();
        assert!((c.delta_p_m() - 0.0880).abs() < 1e-12);
    }

    #[test]
    fn natural_unit_is_electron_mass() {
        let c = default_constants();
        let ev = convert_energy(1.0, EnergyUnit::Natural, EnergyUnit::ElectronVolt, &c);
        assert_eq!(ev, 510_998.95);
    }

    #[test]
    fn ev_to_ev_is_identity() {
        let c = default_constants();
        let x = 123.456789;
        assert_eq!(
            convert_energy(x, EnergyUnit::ElectronVolt, EnergyUnit::ElectronVolt, &c),
            x
        );
    }

    #[test]
    fn hartree_matches_alpha_squared_me() {
        let c = default_constants();
        let ev = convert_energy(1.0, EnergyUnit::Hartree, EnergyUnit::ElectronVolt, &c);
        assert!((ev - 27.2114).abs() < 1e-3, "hartree = {ev}");
        assert!((ev - c.alpha * c.alpha * c.electron_mass_ev).abs() < 1e-12);
    }

    #[test]
    fn round_trips_are_exact_to_1e13() {
        let c = default_constants();
        let units = [
            EnergyUnit::ElectronVolt,
            EnergyUnit::Natural,
            EnergyUnit::Hartree,
        ];
        for &a in &units {
            for &b in &units {
                for &x in &[1.0, 13.6057, 510_998.95, 4.2496e-6, 1e12] {
                    let back = convert_energy(convert_energy(x, a, b, &c), b, a, &c);
                    assert!(
                        ((back - x) / x).abs() <= 1e-13,
                        "{a} -> {b} -> {a}: {x} became {back}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_parsing_rejects_unknown_units() {
        assert!("eV".parse::<EnergyUnit>().is_ok());
        assert!("natural".parse::<EnergyUnit>().is_ok());
        assert!("hartree".parse::<EnergyUnit>().is_ok());
        assert!(matches!(
            "furlong".parse::<EnergyUnit>(),
            Err(ConstantsError::UnknownUnit(_))
        ));
    }

    #[test]
    fn overrides_from_file_apply_and_validate() {
        let dir = std::env::temp_dir().join("hcipnc-constants-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("override.cfg");
        std::fs::write(&path, "# test overrides\nsin2_theta_w_star = 0.2310\n").unwrap();
        let c = default_constants()
            .with_overrides_from_file(&path)
            .unwrap();
        assert_eq!(c.sin2_theta_w_star, 0.2310);
        assert_eq!(c.alpha, ALPHA);

        std::fs::write(&path, "no_such_key = 1.0\n").unwrap();
        assert!(matches!(
            default_constants().with_overrides_from_file(&path),
            Err(ConstantsError::UnknownKey(_))
        ));

        // Moving mz alone breaks the stored-mass invariant.
        std::fs::write(&path, "mz_gev = 80.0\n").unwrap();
        assert!(matches!(
            default_constants().with_overrides_from_file(&path),
            Err(ConstantsError::InvariantViolation(_))
        ));
    }

    #[test]
    fn tree_level_set_reconciles_couplings() {
        let c = default_constants().tree_level_consistent();
        // G_F/(2√2) and πα/(4 s²c² M_Z²) are the same number here.
        let lhs = c.fermi_constant / (2.0 * std::f64::consts::SQRT_2);
        let s2 = c.sin2_theta_w_star;
        let rhs = std::f64::consts::PI * c.alpha
            / (4.0 * s2 * (1.0 - s2) * c.mz_gev * c.mz_gev);
        assert!(((lhs - rhs) / rhs).abs() < 1e-14);
    }
}
