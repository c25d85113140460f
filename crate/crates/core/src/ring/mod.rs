//! Flux quantization in rings, the SQUID staircase and the Corbino bridge.

mod corbino;
mod squid;

pub use corbino::{corbino_bridge, CorbinoReport, RingGeometry};
pub use squid::{squid_energy, squid_minimize, squid_staircase, SquidCurve};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dec::{loop_sum, Cochain, DecError, Mesh2D};
use crate::field::Constants;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("topology: {0}")]
    Topology(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enclosed flux {flux_quanta} φ₀ rounds to zero quanta")]
    DegenerateFlux { flux_quanta: f64 },
    #[error(transparent)]
    Dec(#[from] DecError),
}

/// Deviations above this are flagged as ambiguous integer extractions.
pub const AMBIGUOUS_DEVIATION: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxQuantization {
    /// Loop sum of the potential around the hole.
    pub flux: f64,
    /// Nearest number of flux quanta, halves rounded away from zero.
    pub z: i64,
    /// `|flux − Z φ₀| / φ₀`.
    pub deviation: f64,
    pub ambiguous: bool,
}

/// Flux through the single hole of an annulus in units of `φ₀`.
pub fn flux_quantize(mesh: &Mesh2D, a: &Cochain, constants: &Constants) -> Result<FluxQuantization, RingError> {
    let [hole] = mesh.hole_loops() else {
        return Err(RingError::Topology(format!("need exactly one hole, mesh has {}", mesh.hole_loops().len())));
    };
    let flux = loop_sum(mesh, a, hole)?;
    let phi0 = constants.flux_quantum();
    let quanta = flux / phi0;
    let z = quanta.round();
    let deviation = (quanta - z).abs();
    Ok(FluxQuantization { flux, z: z as i64, deviation, ambiguous: deviation > AMBIGUOUS_DEVIATION })
}

/// Magnetic length `l_B = sqrt(ħ / (e B))`.
pub fn magnetic_length(b: f64, constants: &Constants) -> Result<f64, RingError> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(RingError::Domain(format!("B must be positive, got {b}")));
    }
    Ok((constants.hbar() / (constants.charge * b)).sqrt())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use proptest::prelude::*;

    use super::*;
    use crate::dec::{CellRect, Degree, GridSpec};
    use crate::field::{pure_gauge_potential, winding_phase};

    fn annulus() -> Mesh2D {
        Mesh2D::from_grid(&GridSpec::new(8, 8, 1.0, 1.0).with_hole(CellRect::new(3, 3, 5, 5))).unwrap()
    }

    #[test]
    fn zero_potential_has_no_flux() {
        let m = annulus();
        let q = flux_quantize(&m, &Cochain::zeros(&m, Degree::One), &Constants::default()).unwrap();
        assert_eq!((q.flux, q.z, q.deviation, q.ambiguous), (0.0, 0, 0.0, false));
    }

    #[test]
    fn pure_gauge_winding_two() {
        let m = annulus();
        let c = Constants::default();
        let a = pure_gauge_potential(&m, &winding_phase(&m, 0, 2).unwrap(), &c).unwrap();
        let q = flux_quantize(&m, &a, &c).unwrap();
        assert!((q.flux - 4.0 * PI).abs() < 1e-13);
        assert_eq!(q.z, 2);
        assert!(q.deviation <= 1e-12);
    }

    #[test]
    fn perturbed_gauge_reports_deviation() {
        let m = annulus();
        let c = Constants::default();
        let mut a = pure_gauge_potential(&m, &winding_phase(&m, 0, 1).unwrap(), &c).unwrap();
        // spread 0.1 φ₀ over the hole rim
        let hole = m.hole_loops()[0].clone();
        let per = 0.1 * c.flux_quantum() / hole.len() as f64;
        for s in &hole.steps {
            a.values_mut()[s.edge] += per * s.sign as f64;
        }
        let q = flux_quantize(&m, &a, &c).unwrap();
        assert_eq!(q.z, 1);
        assert!((q.deviation - 0.1).abs() < 1e-12);
        assert!(!q.ambiguous);
    }

    #[test]
    fn needs_exactly_one_hole() {
        let m = Mesh2D::grid(3, 3, 1.0, 1.0).unwrap();
        assert!(matches!(
            flux_quantize(&m, &Cochain::zeros(&m, Degree::One), &Constants::default()),
            Err(RingError::Topology(_))
        ));
    }

    #[test]
    fn half_quanta_round_away_from_zero() {
        let m = annulus();
        let c = Constants::default();
        let hole = m.hole_loops()[0].clone();
        for (quanta, z) in [(2.5, 3), (-2.5, -3), (0.5, 1)] {
            let mut a = Cochain::zeros(&m, Degree::One);
            let s = hole.steps[0];
            a.values_mut()[s.edge] = quanta * c.flux_quantum() * s.sign as f64;
            let q = flux_quantize(&m, &a, &c).unwrap();
            assert_eq!(q.z, z);
            assert!(q.ambiguous);
        }
    }

    #[test]
    fn magnetic_length_examples() {
        assert_eq!(magnetic_length(1.0, &Constants::default()).unwrap(), 1.0);
        assert_eq!(magnetic_length(4.0, &Constants::default()).unwrap(), 0.5);
        assert_eq!(magnetic_length(2.0, &Constants::new(2.0, 1.0).unwrap()).unwrap(), 0.5);
        assert!(magnetic_length(0.0, &Constants::default()).is_err());
    }

    proptest! {
        #[test]
        fn pure_gauge_flux_is_quantized(w in -10i64..=10, e in prop::sample::select(vec![0.5, 1.0, 2.0, 3.7])) {
            let m = annulus();
            let c = Constants::new(e, 1.0).unwrap();
            let a = pure_gauge_potential(&m, &winding_phase(&m, 0, w).unwrap(), &c).unwrap();
            let q = flux_quantize(&m, &a, &c).unwrap();
            prop_assert_eq!(q.z, w);
            prop_assert!(q.deviation <= 1e-12);
        }
    }
}
