use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::FieldError;

/// Physical constants in natural units with `ħ = 1` and `μ₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Carrier charge `e`.
    pub charge: f64,
    /// Carrier mass `M_e`.
    pub mass: f64,
    /// Replaces the default flux quantum `h/e` when set (e.g. `h/2e` for pairs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux_quantum_override: Option<f64>,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { charge: 1.0, mass: 1.0, flux_quantum_override: None }
    }
}

impl Constants {
    pub fn new(charge: f64, mass: f64) -> Result<Self, FieldError> {
        let c = Constants { charge, mass, flux_quantum_override: None };
        c.validate()?;
        Ok(c)
    }

    pub fn with_flux_quantum(mut self, phi0: f64) -> Result<Self, FieldError> {
        if !(phi0 > 0.0 && phi0.is_finite()) {
            return Err(FieldError::InvalidParameter(format!("flux quantum must be positive, got {phi0}")));
        }
        self.flux_quantum_override = Some(phi0);
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        if !(self.charge > 0.0 && self.charge.is_finite()) {
            return Err(FieldError::InvalidParameter(format!("charge must be positive, got {}", self.charge)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(FieldError::InvalidParameter(format!("mass must be positive, got {}", self.mass)));
        }
        Ok(())
    }

    pub const fn hbar(&self) -> f64 {
        1.0
    }

    pub const fn mu0(&self) -> f64 {
        1.0
    }

    /// Planck constant `h = 2πħ`.
    pub fn planck(&self) -> f64 {
        2.0 * PI * self.hbar()
    }

    /// `φ₀ = h/e` unless overridden.
    pub fn flux_quantum(&self) -> f64 {
        self.flux_quantum_override.unwrap_or(self.planck() / self.charge)
    }

    /// Cyclotron frequency `ω_c = eB/M_e`.
    pub fn cyclotron_frequency(&self, b: f64) -> f64 {
        self.charge * b / self.mass
    }

    /// London depth `λ = M_e / (n e²)`.
    pub fn london_depth(&self, density: f64) -> f64 {
        self.mass / (density * self.charge * self.charge)
    }
}
