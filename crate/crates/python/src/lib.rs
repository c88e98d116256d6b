//! Python bindings for the core library.
//!
//! Exposes the closed-form pieces directly and the heavier pipeline
//! operations as dict-returning functions. Build the cdylib and rename
//! it to `hcipnc.so` (see python/smoke_test.py, which does this
//! automatically).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hcipnc_core::constants::default_constants;
use hcipnc_core::electroweak;
use hcipnc_core::nuclear::NuclearModel;
use hcipnc_core::pnc::{self, PncResult, PncSettings};
use hcipnc_core::uehling::UehlingSource;

fn parse_source(name: &str) -> PyResult<UehlingSource> {
    match name {
        "point" => Ok(UehlingSource::PointCharge),
        "folded" => Ok(UehlingSource::FoldedUniform),
        other => Err(PyValueError::new_err(format!(
            "unknown uehling source `{other}` (expected \"point\" or \"folded\")"
        ))),
    }
}

fn settings(grid_points: usize, uehling_source: &str) -> PyResult<PncSettings> {
    Ok(PncSettings {
        uehling_source: parse_source(uehling_source)?,
        grid_points,
        ..Default::default()
    })
}

fn result_dict<'py>(py: Python<'py>, r: &PncResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("z", r.z)?;
    d.set_item("a", r.a)?;
    d.set_item("r_fm", r.r_fm)?;
    d.set_item("m_plain_ev", r.m_plain_ev)?;
    d.set_item("m_uehling_ev", r.m_uehling_ev)?;
    d.set_item("delta_loop_wf", r.delta_loop_wf)?;
    d.set_item("n", r.n)?;
    d.set_item("n_prime", r.n_prime)?;
    Ok(d)
}

/// Nuclear radius 1.2 A^(1/3) in fm.
#[pyfunction]
fn nuclear_radius_fm(a: f64) -> PyResult<f64> {
    hcipnc_core::nuclear::nuclear_radius(a).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Closed-form point-Coulomb energy in eV (rest mass included).
#[pyfunction]
fn sommerfeld_energy_ev(z: u32, n: u32, kappa: i32) -> PyResult<f64> {
    let consts = default_constants();
    hcipnc_core::dirac::sommerfeld_energy_ev(z, n, kappa, &consts)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Weak charge Q_W = −N + Z(1 − 4 s²); s² defaults to the stored
/// low-momentum effective angle.
#[pyfunction]
#[pyo3(signature = (z, n, s2=None))]
fn weak_charge(z: u32, n: u32, s2: Option<f64>) -> f64 {
    let s2 = s2.unwrap_or(hcipnc_core::constants::SIN2_THETA_W_STAR);
    electroweak::weak_charge(z, n, s2)
}

/// Full electroweak bookkeeping for (Z, A) as a dict.
#[pyfunction]
fn weak_charge_report<'py>(py: Python<'py>, z: u32, a: f64) -> PyResult<Bound<'py, PyDict>> {
    let consts = default_constants();
    let model = NuclearModel::uniform_sphere(z, a)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = electroweak::weak_charge_report(z, model.neutrons(), &consts);
    let d = PyDict::new(py);
    d.set_item("z", report.z)?;
    d.set_item("n", report.n)?;
    d.set_item("sin2_theta_w_star", report.sin2_theta_w_star)?;
    d.set_item("q_w", report.q_w)?;
    d.set_item("p_w", report.p_w)?;
    d.set_item("p_w_tilde", report.p_w_tilde)?;
    d.set_item("delta_p_m", report.delta_p_m)?;
    d.set_item("a_pnc_bouchiat_ev_fm3", report.a_pnc_bouchiat_ev_fm3)?;
    d.set_item("a_pnc_sandars_ev_fm3", report.a_pnc_sandars_ev_fm3)?;
    d.set_item("delta_loop_op_estimate", report.delta_loop_op_estimate)?;
    d.set_item("delta_loop_wf_estimate", report.delta_loop_wf_estimate)?;
    Ok(d)
}

/// Point-source Uehling potential in eV at r (fm).
#[pyfunction]
fn uehling_potential_ev(z: u32, r_fm: f64) -> PyResult<f64> {
    let consts = default_constants();
    hcipnc_core::uehling::uehling_point(z, r_fm, &consts)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Uehling potential folded with the uniform nuclear charge of (Z, A),
/// in eV at r (fm).
#[pyfunction]
fn uehling_folded_ev(z: u32, a: f64, r_fm: f64) -> PyResult<f64> {
    let consts = default_constants();
    let model = NuclearModel::uniform_sphere(z, a)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    hcipnc_core::uehling::uehling_folded(&model, r_fm, &consts)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Matrix elements and wave-function loop correction for one ion.
///
/// Returns a dict with keys z, a, r_fm, m_plain_ev, m_uehling_ev,
/// delta_loop_wf, n, n_prime.
#[pyfunction]
#[pyo3(signature = (z, a, n=2, n_prime=2, grid_points=6001, uehling_source="folded"))]
fn compute_pnc<'py>(
    py: Python<'py>,
    z: u32,
    a: f64,
    n: u32,
    n_prime: u32,
    grid_points: usize,
    uehling_source: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let consts = default_constants();
    let settings = settings(grid_points, uehling_source)?;
    let result = py
        .detach(|| pnc::compute_pnc_with_corrections(z, a, n, n_prime, &consts, &settings))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    result_dict(py, &result)
}

/// Runs the pipeline over (Z, A) pairs; rows come back as dicts in
/// input order, failed rows as (z, a, message) tuples.
#[pyfunction]
#[pyo3(signature = (isotopes, grid_points=6001, uehling_source="folded"))]
fn compute_table<'py>(
    py: Python<'py>,
    isotopes: Vec<(u32, f64)>,
    grid_points: usize,
    uehling_source: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let consts = default_constants();
    let settings = settings(grid_points, uehling_source)?;
    let table = py.detach(|| pnc::compute_table(&isotopes, &consts, &settings));
    let rows = pyo3::types::PyList::empty(py);
    for row in &table.rows {
        rows.append(result_dict(py, row)?)?;
    }
    let failures = pyo3::types::PyList::empty(py);
    for f in &table.failures {
        failures.append((f.z, f.a, f.error.clone()))?;
    }
    let d = PyDict::new(py);
    d.set_item("rows", rows)?;
    d.set_item("failures", failures)?;
    Ok(d)
}

/// The built-in 21-isotope benchmark list as (Z, A) tuples.
#[pyfunction]
fn benchmark_isotopes() -> Vec<(u32, f64)> {
    hcipnc_core::isotopes::BENCHMARK_ISOTOPES.to_vec()
}

#[pymodule]
fn hcipnc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(nuclear_radius_fm, m)?)?;
    m.add_function(wrap_pyfunction!(sommerfeld_energy_ev, m)?)?;
    m.add_function(wrap_pyfunction!(weak_charge, m)?)?;
    m.add_function(wrap_pyfunction!(weak_charge_report, m)?)?;
    m.add_function(wrap_pyfunction!(uehling_potential_ev, m)?)?;
    m.add_function(wrap_pyfunction!(uehling_folded_ev, m)?)?;
    m.add_function(wrap_pyfunction!(compute_pnc, m)?)?;
    m.add_function(wrap_pyfunction!(compute_table, m)?)?;
    m.add_function(wrap_pyfunction!(benchmark_isotopes, m)?)?;
    Ok(())
}
