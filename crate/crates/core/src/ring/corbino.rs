//! Corbino bridge between ring flux quantization and the Hall edge strip.
//!
//! A ring of radius `R` encloses `S = πR²`; the edge strip of width `l_B`
//! has area `S′ = 2πR l_B`. Equal flux through both, `B_qhe S′ = B_sc S`,
//! fixes `B_qhe / B_sc = S/S′ = R/(2 l_B)`. The superconducting flux count is
//! `Z = B_sc S / φ₀`, and `N` carriers on the strip give `ν = N/Z`, which is
//! cross-checked against the filling `n φ₀ / B_qhe` with `n = N/S′`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::RingError;
use crate::field::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RingGeometry {
    pub r: f64,
    pub l_b: f64,
}

impl RingGeometry {
    pub fn new(r: f64, l_b: f64) -> Result<Self, RingError> {
        if !(r > 0.0 && r.is_finite() && l_b > 0.0 && l_b.is_finite()) {
            return Err(RingError::Domain(format!("R and l_B must be positive, got R={r} l_B={l_b}")));
        }
        if l_b >= r {
            return Err(RingError::Domain(format!("edge strip l_B={l_b} must be thinner than R={r}")));
        }
        Ok(RingGeometry { r, l_b })
    }

    /// Enclosed area `πR²`.
    pub fn s(&self) -> f64 {
        PI * self.r * self.r
    }

    /// Edge-strip area `2πR l_B`.
    pub fn s_prime(&self) -> f64 {
        2.0 * PI * self.r * self.l_b
    }

    /// `S/S′ = R/(2 l_B)`.
    pub fn ratio(&self) -> f64 {
        self.r / (2.0 * self.l_b)
    }
}

/// Tolerance on the two filling-factor computations.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorbinoReport {
    pub r: f64,
    pub l_b: f64,
    pub b_squid: f64,
    pub n_carriers: u64,
    pub charge: f64,
    pub flux_quantum: f64,
    pub s: f64,
    pub s_prime: f64,
    pub ratio: f64,
    pub b_qhe: f64,
    pub z: i64,
    /// `B_sc S / φ₀ − Z`.
    pub flux_deviation: f64,
    /// `N / Z`.
    pub nu: f64,
    /// `n φ₀ / B_qhe` with `n = N / S′`.
    pub nu_from_density: f64,
    pub cross_check_residual: f64,
    /// `|B_qhe S′ − B_sc S| / (B_sc S)`.
    pub flux_conservation_residual: f64,
    pub passed: bool,
}

pub fn corbino_bridge(
    geometry: &RingGeometry,
    b_squid: f64,
    n_carriers: u64,
    constants: &Constants,
) -> Result<CorbinoReport, RingError> {
    let geometry = RingGeometry::new(geometry.r, geometry.l_b)?;
    if !(b_squid > 0.0 && b_squid.is_finite()) {
        return Err(RingError::Domain(format!("B_squid must be positive, got {b_squid}")));
    }
    if n_carriers == 0 {
        return Err(RingError::Domain("need at least one carrier".into()));
    }
    let (s, s_prime, ratio) = (geometry.s(), geometry.s_prime(), geometry.ratio());
    let b_qhe = b_squid * ratio;
    let phi0 = constants.flux_quantum();
    let quanta = b_squid * s / phi0;
    let z = quanta.round();
    if z == 0.0 {
        return Err(RingError::DegenerateFlux { flux_quanta: quanta });
    }
    let nu = n_carriers as f64 / z;
    let density = n_carriers as f64 / s_prime;
    let nu_from_density = density * phi0 / b_qhe;
    let cross_check_residual = (nu - nu_from_density).abs();
    let flux_conservation_residual = (b_qhe * s_prime - b_squid * s).abs() / (b_squid * s);
    Ok(CorbinoReport {
        r: geometry.r,
        l_b: geometry.l_b,
        b_squid,
        n_carriers,
        charge: constants.charge,
        flux_quantum: phi0,
        s,
        s_prime,
        ratio,
        b_qhe,
        z: z as i64,
        flux_deviation: quanta - z,
        nu,
        nu_from_density,
        cross_check_residual,
        flux_conservation_residual,
        passed: cross_check_residual <= CROSS_CHECK_TOLERANCE && flux_conservation_residual <= CROSS_CHECK_TOLERANCE,
    })
}
