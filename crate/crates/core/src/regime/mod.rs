//! Conductivity algebra and regime labels.
//!
//! Drude Hall conductivity `σ_H = σ₀ x / (1 + x²)` with `x = ω_c τ`,
//! `ω_c = eB/M_e`; quantum-limit relations `σ_H = ne/B` and
//! `ν = n h / (e B)`; the uncertainty energy `δE = e ħ B / 2M_e`.

mod fraction;
mod sweep;

pub use fraction::nearest_fraction;
pub use sweep::{linspace, logspace, sweep, Axis, PhaseDiagram, SigmaMode, SweepParam, SweepSpec};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Constants;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegimeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), RegimeError> {
    if ok {
        Ok(())
    } else {
        Err(RegimeError::Domain(msg()))
    }
}

/// `σ_H = σ₀ x / (1 + x²)`.
pub fn hall_conductivity(sigma_0: f64, omega_c_tau: f64) -> Result<f64, RegimeError> {
    require(sigma_0 >= 0.0 && sigma_0.is_finite(), || format!("sigma_0 must be non-negative, got {sigma_0}"))?;
    require(omega_c_tau >= 0.0 && omega_c_tau.is_finite(), || {
        format!("omega_c_tau must be non-negative, got {omega_c_tau}")
    })?;
    Ok(sigma_0 * omega_c_tau / (1.0 + omega_c_tau * omega_c_tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Asymptote {
    /// `x ≫ 1`: `σ₀ → ω_c τ`.
    Quantum,
    /// `x ≪ 1`: `σ₀ → (ω_c τ)⁻¹`.
    Classical,
    /// `x = 1`: `σ₀ = 2`.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitHall {
    pub sigma_0: f64,
    pub asymptote: Asymptote,
    /// Leading-order value on the matching side.
    pub asymptotic_value: f64,
}

/// Conductivity `σ₀ = (1 + x²)/x` that makes the Drude Hall conductivity 1.
pub fn sigma0_for_unit_hall(omega_c_tau: f64) -> Result<UnitHall, RegimeError> {
    let x = omega_c_tau;
    require(x > 0.0 && x.is_finite(), || format!("omega_c_tau must be positive, got {x}"))?;
    let sigma_0 = x + 1.0 / x;
    let (asymptote, asymptotic_value) = if x > 1.0 {
        (Asymptote::Quantum, x)
    } else if x < 1.0 {
        (Asymptote::Classical, 1.0 / x)
    } else {
        (Asymptote::Symmetric, 2.0)
    };
    Ok(UnitHall { sigma_0, asymptote, asymptotic_value })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumLimit {
    pub sigma_h: f64,
    pub nu: f64,
}

/// `σ_H = n e / B` and the filling `ν = n h / (e B)`.
pub fn quantum_limit_sigma_h(n: f64, b: f64, constants: &Constants) -> Result<QuantumLimit, RegimeError> {
    require(b > 0.0 && b.is_finite(), || format!("B must be positive, got {b}"))?;
    require(n >= 0.0 && n.is_finite(), || format!("density must be non-negative, got {n}"))?;
    let e = constants.charge;
    Ok(QuantumLimit { sigma_h: n * e / b, nu: n * constants.planck() / (e * b) })
}

/// Density that puts filling `ν` at field `B`.
pub fn density_for_filling(nu: f64, b: f64, constants: &Constants) -> Result<f64, RegimeError> {
    require(b > 0.0 && b.is_finite(), || format!("B must be positive, got {b}"))?;
    require(nu >= 0.0 && nu.is_finite(), || format!("filling must be non-negative, got {nu}"))?;
    Ok(nu * constants.charge * b / constants.planck())
}

/// `δE = e ħ B / (2 M_e)`.
pub fn uncertainty_energy(b: f64, constants: &Constants) -> Result<f64, RegimeError> {
    require(b >= 0.0 && b.is_finite(), || format!("B must be non-negative, got {b}"))?;
    Ok(constants.charge * constants.hbar() * b / (2.0 * constants.mass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeLabel {
    ClassicalHall,
    Iqhe,
    Fqhe,
    Superconducting,
    Crossover,
}

impl RegimeLabel {
    pub const ALL: [RegimeLabel; 5] = [
        RegimeLabel::ClassicalHall,
        RegimeLabel::Iqhe,
        RegimeLabel::Fqhe,
        RegimeLabel::Superconducting,
        RegimeLabel::Crossover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeLabel::ClassicalHall => "classical-Hall",
            RegimeLabel::Iqhe => "IQHE",
            RegimeLabel::Fqhe => "FQHE",
            RegimeLabel::Superconducting => "superconducting",
            RegimeLabel::Crossover => "crossover",
        }
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `ω_c τ` below this is classical.
    pub low: f64,
    /// `ω_c τ` above this is quantum.
    pub high: f64,
    /// Absolute tolerance on `ν` for plateau matches.
    pub nu_tolerance: f64,
    /// Largest fraction denominator accepted as FQHE.
    pub q_max: u32,
    /// Relative tolerance for `σ_H = 1`.
    pub sigma_tolerance: f64,
    /// Critical field separating superconducting from QHE preparation.
    pub b_c: Option<f64>,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { low: 0.1, high: 10.0, nu_tolerance: 1e-3, q_max: 9, sigma_tolerance: 1e-6, b_c: None }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<(), RegimeError> {
        let bad = |m: String| Err(RegimeError::Config(m));
        if !(self.low > 0.0 && self.low.is_finite() && self.high.is_finite() && self.low < self.high) {
            return bad(format!("need 0 < low < high, got low={} high={}", self.low, self.high));
        }
        if !(self.nu_tolerance > 0.0 && self.nu_tolerance < 0.5) {
            return bad(format!("nu_tolerance must be in (0, 0.5), got {}", self.nu_tolerance));
        }
        if self.q_max < 2 {
            return bad(format!("q_max must be at least 2, got {}", self.q_max));
        }
        if !(self.sigma_tolerance > 0.0 && self.sigma_tolerance.is_finite()) {
            return bad(format!("sigma_tolerance must be positive, got {}", self.sigma_tolerance));
        }
        if let Some(b_c) = self.b_c {
            if !(b_c > 0.0 && b_c.is_finite()) {
                return bad(format!("b_c must be positive, got {b_c}"));
            }
        }
        Ok(())
    }
}

/// Inputs for one point of the regime map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointInputs {
    pub b: f64,
    pub n: f64,
    pub tau: f64,
    pub sigma_0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimePoint {
    pub b: f64,
    pub n: f64,
    pub tau: f64,
    pub omega_c_tau: f64,
    pub sigma_0: f64,
    pub sigma_h: f64,
    pub nu: f64,
    pub label: RegimeLabel,
    /// `B ≥ B_c` when a critical field is configured.
    pub above_critical: Option<bool>,
}

/// Label from `ω_c τ`, `ν` and `σ_H`.
///
/// Classical below `low`, crossover between the cutoffs. Above `high`, an
/// integer `ν ≥ 1` gives IQHE, otherwise a fraction `p/q` with `p ≥ 1` and
/// `2 ≤ q ≤ q_max` gives FQHE; either becomes superconducting when `σ_H = 1`
/// holds as well. Integer matches are tried first.
pub fn label_for(omega_c_tau: f64, nu: f64, sigma_h: f64, t: &Thresholds) -> RegimeLabel {
    if omega_c_tau < t.low {
        return RegimeLabel::ClassicalHall;
    }
    if omega_c_tau <= t.high {
        return RegimeLabel::Crossover;
    }
    let unit = (sigma_h - 1.0).abs() <= t.sigma_tolerance;
    let k = nu.round();
    let plateau = if k >= 1.0 && (nu - k).abs() <= t.nu_tolerance {
        Some(RegimeLabel::Iqhe)
    } else {
        let (p, q) = nearest_fraction(nu, t.q_max);
        (p >= 1 && q >= 2 && (nu - p as f64 / q as f64).abs() <= t.nu_tolerance).then_some(RegimeLabel::Fqhe)
    };
    match plateau {
        Some(_) if unit => RegimeLabel::Superconducting,
        Some(l) => l,
        None => RegimeLabel::Crossover,
    }
}

pub fn regime_point(inputs: &PointInputs, constants: &Constants, t: &Thresholds) -> Result<RegimePoint, RegimeError> {
    t.validate()?;
    let PointInputs { b, n, tau, sigma_0 } = *inputs;
    require(tau > 0.0 && tau.is_finite(), || format!("tau must be positive, got {tau}"))?;
    assemble(b, n, tau, constants.cyclotron_frequency(b) * tau, sigma_0, constants, t)
}

/// Point with a given `ω_c τ`; `t` must already be validated.
pub(crate) fn assemble(
    b: f64,
    n: f64,
    tau: f64,
    omega_c_tau: f64,
    sigma_0: f64,
    constants: &Constants,
    t: &Thresholds,
) -> Result<RegimePoint, RegimeError> {
    let sigma_h = hall_conductivity(sigma_0, omega_c_tau)?;
    let nu = quantum_limit_sigma_h(n, b, constants)?.nu;
    Ok(RegimePoint {
        b,
        n,
        tau,
        omega_c_tau,
        sigma_0,
        sigma_h,
        nu,
        label: label_for(omega_c_tau, nu, sigma_h, t),
        above_critical: t.b_c.map(|b_c| b >= b_c),
    })
}

pub fn classify(inputs: &PointInputs, constants: &Constants, t: &Thresholds) -> Result<RegimeLabel, RegimeError> {
    Ok(regime_point(inputs, constants, t)?.label)
}
