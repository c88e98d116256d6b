//! Tree-level and radiatively corrected electroweak quantities: the weak
//! charge and its Sandars rescalings, the oblique mass correction, the
//! renormalized polarization integral, the low-field loop estimates, and
//! the assembly of the radiative correction budget.

use crate::constants::ConstantsSet;
use crate::numerics::{integrate_adaptive, NumericsError};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ElectroweakError {
    #[error("p_w_tilde is undefined for N = 0")]
    UndefinedNormalization,
    #[error("spacelike polarization integral needs q̄² ≥ 0, got {0}")]
    TimelikeArgument(f64),
    #[error("f_rad is undefined when F_lf equals F0 (both {0})")]
    DegenerateLowFieldReference(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Q_W = −N + Z(1 − 4s²).
pub fn weak_charge(z: u32, n: u32, s2: f64) -> f64 {
    -(n as f64) + z as f64 * (1.0 - 4.0 * s2)
}

/// Weak charge with a fractional neutron count (used by the table sweep,
/// where N is taken as A − Z).
pub fn weak_charge_fractional(z: u32, n: f64, s2: f64) -> f64 {
    -n + z as f64 * (1.0 - 4.0 * s2)
}

/// P_W = Q_W / (s²(1 − s²)).
pub fn p_w(z: u32, n: u32, s2: f64) -> f64 {
    weak_charge(z, n, s2) / (s2 * (1.0 - s2))
}

/// P̃_W = −(3/16N)·P_W; undefined for N = 0.
pub fn p_w_tilde(z: u32, n: u32, s2: f64) -> Result<f64, ElectroweakError> {
    if n == 0 {
        return Err(ElectroweakError::UndefinedNormalization);
    }
    Ok(-3.0 / (16.0 * n as f64) * p_w(z, n, s2))
}

/// Oblique mass correction (M_Z/M_Z*)² − 1.
pub fn delta_p_m(mz_gev: f64, mz_star_gev: f64) -> f64 {
    let ratio = mz_gev / mz_star_gev;
    ratio * ratio - 1.0
}

/// Renormalized-polarization x-integral in the spacelike convention:
/// I(q̄²/m²) = ∫₀¹ x(1−x) ln[1 + (q̄²/m²) x(1−x)] dx, q̄² = −q² ≥ 0.
pub fn pi_r(q2_over_me2: f64) -> Result<f64, ElectroweakError> {
    if q2_over_me2 < 0.0 {
        return Err(ElectroweakError::TimelikeArgument(q2_over_me2));
    }
    if q2_over_me2 == 0.0 {
        return Ok(0.0);
    }
    let w = q2_over_me2;
    let q = integrate_adaptive(
        |x| {
            let u = x * (1.0 - x);
            u * (w * u).ln_1p()
        },
        0.0,
        1.0,
        1e-12,
        1e-300,
    )?;
    Ok(q.value)
}

/// Low-field estimate of the loop correction to the PNC operator:
/// (1/15π)(−Z/N)(1 − 4s²) α (αZ)².
pub fn delta_loop_op_estimate(z: u32, n: u32, consts: &ConstantsSet) -> f64 {
    if n == 0 {
        return f64::NAN;
    }
    let alpha_z = consts.alpha * z as f64;
    (1.0 / (15.0 * std::f64::consts::PI))
        * (-(z as f64) / n as f64)
        * consts.eta()
        * consts.alpha
        * alpha_z
        * alpha_z
}

/// Low-field estimate of the wave-function loop correction: α(αZ)².
pub fn delta_loop_wf_estimate(z: u32, consts: &ConstantsSet) -> f64 {
    let alpha_z = consts.alpha * z as f64;
    consts.alpha * alpha_z * alpha_z
}

/// Strong-field deviation ratio f = (F_sf − F0)/(F_lf − F0).
pub fn f_rad(f_sf: f64, f_lf: f64, f0: f64) -> Result<f64, ElectroweakError> {
    if f_lf == f0 {
        return Err(ElectroweakError::DegenerateLowFieldReference(f0));
    }
    Ok((f_sf - f0) / (f_lf - f0))
}

/// One δ_P-weighted correction channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadTerm {
    /// Low-field (q² = 0) value of the channel's δ_P.
    pub delta_p: f64,
    /// Strong-field deviation ratio for the channel.
    pub f_rad: f64,
}

/// Δ_rad = Σ δ_P·(f − 1) + δ_P^w.f.; absent channels contribute zero.
pub fn assemble_delta_rad(terms: &[Option<RadTerm>], delta_p_wf: f64) -> f64 {
    delta_p_wf
        + terms
            .iter()
            .flatten()
            .map(|t| t.delta_p * (t.f_rad - 1.0))
            .sum::<f64>()
}

/// Electroweak bookkeeping for one nucleus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakChargeReport {
    pub z: u32,
    pub n: u32,
    pub sin2_theta_w_star: f64,
    pub q_w: f64,
    pub p_w: f64,
    /// None when N = 0, where the normalization is undefined.
    pub p_w_tilde: Option<f64>,
    pub delta_p_m: f64,
    /// A_PNC from G_F Q_W/(2√2), in eV·fm³.
    pub a_pnc_bouchiat_ev_fm3: f64,
    /// A_PNC from (πα/4M_Z²)·P_W, in eV·fm³.
    pub a_pnc_sandars_ev_fm3: f64,
    pub delta_loop_op_estimate: f64,
    pub delta_loop_wf_estimate: f64,
}

/// A_PNC = G_F Q_W/(2√2) in eV·fm³.
pub fn a_pnc_bouchiat(q_w: f64, consts: &ConstantsSet) -> f64 {
    consts.fermi_constant_ev_fm3() * q_w / (2.0 * std::f64::consts::SQRT_2)
}

/// A_PNC = (πα/4M_Z²)·P_W in eV·fm³.
pub fn a_pnc_sandars(p_w: f64, consts: &ConstantsSet) -> f64 {
    let hbar_c_gev_fm = consts.hbar_c_ev_fm * 1e-9;
    let mz2_inv_fm2_gev = hbar_c_gev_fm.powi(3) / (consts.mz_gev * consts.mz_gev);
    std::f64::consts::PI * consts.alpha / 4.0 * mz2_inv_fm2_gev * p_w * 1e9
}

/// Builds the full report for a (Z, N) pair.
pub fn weak_charge_report(z: u32, n: u32, consts: &ConstantsSet) -> WeakChargeReport {
    let s2 = consts.sin2_theta_w_star;
    let q_w = weak_charge(z, n, s2);
    let p_w_value = p_w(z, n, s2);
    WeakChargeReport {
        z,
        n,
        sin2_theta_w_star: s2,
        q_w,
        p_w: p_w_value,
        p_w_tilde: p_w_tilde(z, n, s2).ok(),
        delta_p_m: consts.delta_p_m(),
        a_pnc_bouchiat_ev_fm3: a_pnc_bouchiat(q_w, consts),
        a_pnc_sandars_ev_fm3: a_pnc_sandars(p_w_value, consts),
        delta_loop_op_estimate: if n > 0 {
            delta_loop_op_estimate(z, n, consts)
        } else {
            f64::NAN
        },
        delta_loop_wf_estimate: delta_loop_wf_estimate(z, consts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::default_constants;

    #[test]
    fn weak_charge_arithmetic() {
        assert!((weak_charge(92, 146, 0.2394) - (-142.0992)).abs() < 1e-10);
        assert!((weak_charge(1, 0, 0.2394) - 0.0424).abs() < 1e-12);
        assert!((weak_charge(7, 7, 0.25) - (-7.0)).abs() < 1e-12);
    }

    #[test]
    fn weak_charge_is_negative_for_every_table_nucleus_above_hydrogen() {
        for (z, n) in [(2u32, 2u32), (10, 10), (20, 20), (50, 69), (92, 146)] {
            assert!(weak_charge(z, n, 0.2394) < 0.0, "Z = {z}");
        }
    }

    #[test]
    fn sandars_rescalings() {
        let s2 = 0.2394;
        let pw = p_w(92, 146, s2);
        assert!((pw - (-780.4)).abs() < 0.1, "P_W = {pw}");
        let pwt = p_w_tilde(92, 146, s2).unwrap();
        assert!((pwt - 1.002).abs() < 0.001, "P̃_W = {pwt}");
        // definitional inverse
        assert!((pwt * (-16.0 * 146.0 / 3.0) - pw).abs() < 1e-9);
        // heavy-element closeness
        let lead = p_w_tilde(82, 125, s2).unwrap();
        assert!((0.98..=1.03).contains(&lead), "P̃_W(Pb) = {lead}");
        assert!(matches!(
            p_w_tilde(1, 0, s2),
            Err(ElectroweakError::UndefinedNormalization)
        ));
    }

    #[test]
    fn oblique_mass_correction() {
        let c = default_constants();
        assert!((delta_p_m(c.mz_gev, c.mz_star_gev) - 0.0880).abs() < 1e-12);
        assert_eq!(delta_p_m(91.0, 91.0), 0.0);
        assert!((delta_p_m(91.0, 91.0 / std::f64::consts::SQRT_2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polarization_integral_limits() {
        assert_eq!(pi_r(0.0).unwrap(), 0.0);
        assert!(pi_r(-0.5).is_err());
        // leading Taylor term: I ≈ w/30 − w²/280
        for w in [1e-6, 1e-4, 1e-2] {
            let series = w / 30.0 - w * w / 280.0;
            let got = pi_r(w).unwrap();
            assert!(
                ((got - series) / series).abs() < 1e-3 * (1.0 + w * 100.0),
                "w = {w}: {got} vs {series}"
            );
        }
    }

    #[test]
    fn polarization_integral_at_w_equals_one_matches_fixed_rule_oracle() {
        // Independent oracle: composite Simpson with 100001 points.
        let w = 1.0;
        let n = 100_001;
        let h = 1.0 / (n - 1) as f64;
        let f = |x: f64| {
            let u = x * (1.0 - x);
            u * (w * u).ln_1p()
        };
        let mut simpson = 0.0;
        for i in (0..n - 2).step_by(2) {
            let x = i as f64 * h;
            simpson += h / 3.0 * (f(x) + 4.0 * f(x + h) + f(x + 2.0 * h));
        }
        let got = pi_r(w).unwrap();
        assert!(
            (got - simpson).abs() <= 1e-9 * simpson.abs(),
            "{got} vs oracle {simpson}"
        );
        // frozen from the oracle
        assert!((got - 3.021_477_141_888_5e-2).abs() < 1e-12, "got {got:.13e}");
    }

    #[test]
    fn polarization_integral_is_monotone_and_below_tangent() {
        let mut prev = 0.0;
        for k in 1..=20 {
            let w = 0.25 * k as f64;
            let v = pi_r(w).unwrap();
            assert!(v > prev, "I must increase, w = {w}");
            assert!(v < w / 30.0, "I must stay below its small-w tangent");
            prev = v;
        }
    }

    #[test]
    fn loop_operator_estimate() {
        let c = default_constants();
        let v = delta_loop_op_estimate(92, 146, &c);
        assert!((v - (-1.865e-6)).abs() < 0.01e-6, "got {v:.4e}");
        assert_eq!(delta_loop_op_estimate(0, 146, &c), 0.0);
        // η = 0 suppression
        let mut c25 = c.clone();
        c25.sin2_theta_w_star = 0.25;
        assert_eq!(delta_loop_op_estimate(92, 146, &c25), 0.0);
    }

    #[test]
    fn wave_function_estimate() {
        let c = default_constants();
        let v92 = delta_loop_wf_estimate(92, &c);
        assert!((v92 - 3.289e-3).abs() < 0.01e-3, "got {v92:.4e}");
        let v1 = delta_loop_wf_estimate(1, &c);
        assert!((v1 - c.alpha.powi(3)).abs() < 1e-18);
        assert!((v1 - 3.89e-7).abs() < 0.01e-7);
        let mut prev = 0.0;
        for z in 1..=92 {
            let v = delta_loop_wf_estimate(z, &c);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn deviation_ratio_and_assembly() {
        assert_eq!(f_rad(2.0, 2.0, 1.0).unwrap(), 1.0);
        assert_eq!(f_rad(1.0, 2.0, 1.0).unwrap(), 0.0);
        assert!(f_rad(1.0, 5.0, 5.0).is_err());
        // all (f − 1) terms zero → Δ_rad = δ_P^w.f.
        let terms = [
            Some(RadTerm {
                delta_p: -1.9e-6,
                f_rad: 1.0,
            }),
            None,
            None,
        ];
        assert_eq!(assemble_delta_rad(&terms, 1.2e-2), 1.2e-2);
        let terms = [
            Some(RadTerm {
                delta_p: 2.0,
                f_rad: 1.5,
            }),
            Some(RadTerm {
                delta_p: 3.0,
                f_rad: 0.5,
            }),
        ];
        assert!((assemble_delta_rad(&terms, 0.25) - (0.25 + 1.0 - 1.5)).abs() < 1e-15);
    }

    #[test]
    fn coupling_definitions_agree_on_a_consistent_constants_set() {
        let c = default_constants().tree_level_consistent();
        let s2 = c.sin2_theta_w_star;
        let q_w = weak_charge(92, 146, s2);
        let p_w = p_w(92, 146, s2);
        let bouchiat = a_pnc_bouchiat(q_w, &c);
        let sandars = a_pnc_sandars(p_w, &c);
        assert!(
            ((bouchiat - sandars) / sandars).abs() < 5e-3,
            "{bouchiat} vs {sandars}"
        );
    }

    #[test]
    fn p_w_tilde_band_for_heavy_table_isotopes() {
        // Table isotopes with Z ≥ 20, integer N from round(A) − Z.
        let rows: [(u32, u32); 11] = [
            (20, 20),
            (30, 35),
            (40, 51),
            (50, 69),
            (60, 84),
            (70, 103),
            (80, 121),
            (82, 125),
            (90, 142),
            (92, 143),
            (92, 146),
        ];
        for (z, n) in rows {
            let v = p_w_tilde(z, n, 0.2394).unwrap();
            assert!((0.97..=1.04).contains(&v), "Z = {z}: P̃_W = {v}");
        }
    }
}
