//! Static Hall-Ohm balance.
//!
//! For a static configuration the surviving component of
//! `J^em_α = ε^{αβγ} σ_H ∂_β A_γ` with `J^em_α = λ ε_{αβγ} ∂^β j^γ` is the face
//! balance `λ (d j_e)_f = σ_H B_f`. Both sides are returned rotated into
//! pointwise face values (dual 0-cochains via the Hodge star).

use super::{FieldError, FieldState};
use crate::dec::{exterior_derivative, hodge_star, Cochain, Degree, Mesh2D};

#[derive(Debug, Clone, PartialEq)]
pub struct OhmRelation {
    /// `⋆(λ d j_e)`.
    pub lhs: Cochain,
    /// `⋆(σ_H B)`.
    pub rhs: Cochain,
}

impl OhmRelation {
    pub fn max_discrepancy(&self) -> f64 {
        self.lhs.values().iter().zip(self.rhs.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Discrepancy relative to the larger side, with an absolute floor of 1.
    pub fn relative_discrepancy(&self) -> f64 {
        let scale = self.lhs.max_abs().max(self.rhs.max_abs()).max(1.0);
        self.max_discrepancy() / scale
    }
}

/// Both sides of the static Hall-Ohm balance for a state and a flux 2-cochain.
pub fn ohm_relation(mesh: &Mesh2D, state: &FieldState, b: &Cochain) -> Result<OhmRelation, FieldError> {
    b.check_mesh(mesh)?;
    if b.degree() != Degree::Two {
        return Err(FieldError::Shape("magnetic flux must be a 2-cochain".into()));
    }
    let curl_j = exterior_derivative(mesh, &state.j_e)?;
    let lhs = hodge_star(mesh, &curl_j.scale(state.lambda))?;
    let rhs = hodge_star(mesh, &b.scale(state.sigma_h))?;
    Ok(OhmRelation { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dec::Side;
    use crate::field::Constants;

    #[test]
    fn zero_fields_balance() {
        let m = Mesh2D::grid(3, 3, 1.0, 1.0).unwrap();
        let z = Cochain::zeros(&m, Degree::One);
        let s = FieldState::from_currents(&m, z.clone(), z, 1.0, 1.0, 1.0, &Constants::default()).unwrap();
        let r = ohm_relation(&m, &s, &Cochain::zeros(&m, Degree::Two)).unwrap();
        assert_eq!(r.lhs.side(), Side::Dual);
        assert_eq!(r.max_discrepancy(), 0.0);
        assert_eq!(r.lhs.max_abs(), 0.0);
    }

    #[test]
    fn london_state_balances_with_unit_hall_conductivity() {
        let m = Mesh2D::grid(4, 3, 2.0, 1.5).unwrap();
        let lambda = 0.3;
        let a = Cochain::from_fn(&m, Degree::One, |e| (0.7 * e as f64).sin());
        let j = a.scale(1.0 / lambda);
        let s = FieldState::from_currents(&m, a.clone(), j, 1.0 / lambda, 1.0, lambda, &Constants::default()).unwrap();
        let b = exterior_derivative(&m, &a).unwrap();
        assert!(ohm_relation(&m, &s, &b).unwrap().max_discrepancy() <= 1e-12);
    }

    #[test]
    fn decoupled_limit_has_zero_rhs() {
        let m = Mesh2D::grid(3, 3, 1.0, 1.0).unwrap();
        let a = Cochain::from_fn(&m, Degree::One, |e| e as f64);
        let j = Cochain::from_fn(&m, Degree::One, |e| (e as f64).cos());
        let s = FieldState::from_currents(&m, a.clone(), j, 1.0, 0.0, 1.0, &Constants::default()).unwrap();
        let r = ohm_relation(&m, &s, &exterior_derivative(&m, &a).unwrap()).unwrap();
        assert_eq!(r.rhs.max_abs(), 0.0);
        assert!(r.lhs.max_abs() > 0.0);
    }
}
