//! Relativistic bound-state machinery for parity-nonconservation in
//! hydrogenlike ions: Dirac bound states in finite-size nuclear
//! potentials, the Uehling vacuum-polarization potential, and the
//! 2s₁/₂–2p₁/₂ weak matrix element with its vacuum-polarization
//! correction to the wave functions.

// negated comparisons like !(x > 0.0) deliberately reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dirac;
pub mod electroweak;
pub mod isotopes;
pub mod nuclear;
pub mod numerics;
pub mod pnc;
pub mod uehling;

pub use constants::{default_constants, ConstantsSet};
pub use dirac::{solve_bound_state, sommerfeld_energy_ev, DiracState};
pub use nuclear::{nuclear_radius, NuclearModel};
pub use pnc::PncResult;
