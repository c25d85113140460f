//! Wavefunction currents and the Chern-Simons layer.
//!
//! Units are natural with `ħ = μ₀ = 1`. The Chern-Simons vector is
//! `C = λ j_e − σ_H A`; its curl vanishes exactly on London states.

mod chern_simons;
mod constants;
mod currents;
mod export;
mod ohm;
mod state;

pub use chern_simons::{
    cs_action, cs_action_of, cs_residual, cs_residual_of, cs_vector, wedge, CsResidual, CsVector, SpacetimeStack,
};
pub use constants::Constants;
pub use currents::{
    edge_density, electric_current, em_current, phase_increments, pure_gauge_potential, wavefunction_from_phase,
    winding_phase, wrap_phase,
};
pub use export::{snapshot_csv, SNAPSHOT_HEADER};
pub use ohm::{ohm_relation, OhmRelation};
pub use state::FieldState;

use thiserror::Error;

use crate::dec::DecError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("topology: {0}")]
    Topology(String),
    #[error("phase increments have curl {curl} on face {face}, not a multiple of 2π")]
    NotIntegrable { face: usize, curl: f64 },
    #[error("need at least {needed} time slices, got {got}")]
    InsufficientStack { needed: usize, got: usize },
    #[error(transparent)]
    Dec(#[from] DecError),
}
