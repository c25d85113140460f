use num_complex::Complex64;

use super::{electric_current, em_current, Constants, FieldError};
use crate::dec::{Cochain, Degree, Mesh2D, MeshId};

/// Fields on one spatial slice.
///
/// `j_e` and `j_em` are derived. States built from a wavefunction recompute
/// both from `psi` and `a`; macroscopic states (e.g. a London solution) carry
/// no wavefunction and derive `j_em` from the carrier density instead.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub psi: Option<Cochain<Complex64>>,
    /// Gauge potential, 1-cochain.
    pub a: Cochain,
    pub j_e: Cochain,
    pub j_em: Cochain,
    /// Scalar potential `A⁰`, 0-cochain.
    pub a0: Cochain,
    /// Charge density `j⁰`, 0-cochain.
    pub j0: Cochain,
    pub sigma_h: f64,
    pub lambda: f64,
}

fn check_coefficients(sigma_h: f64, lambda: f64) -> Result<(), FieldError> {
    if !(sigma_h >= 0.0 && sigma_h.is_finite()) {
        return Err(FieldError::InvalidParameter(format!("sigma_H must be non-negative, got {sigma_h}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(FieldError::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    Ok(())
}

fn check_one_form(mesh: &Mesh2D, c: &Cochain, name: &str) -> Result<(), FieldError> {
    c.check_mesh(mesh)?;
    if c.degree() != Degree::One {
        return Err(FieldError::Shape(format!("{name} must be a 1-cochain")));
    }
    Ok(())
}

impl FieldState {
    pub fn from_wavefunction(
        mesh: &Mesh2D,
        psi: Cochain<Complex64>,
        a: Cochain,
        sigma_h: f64,
        lambda: f64,
        constants: &Constants,
    ) -> Result<Self, FieldError> {
        check_coefficients(sigma_h, lambda)?;
        check_one_form(mesh, &a, "gauge potential")?;
        let j_e = electric_current(mesh, &psi, constants)?;
        let j_em = em_current(mesh, &psi, &a, constants)?;
        Ok(FieldState {
            psi: Some(psi),
            a,
            j_e,
            j_em,
            a0: Cochain::zeros(mesh, Degree::Zero),
            j0: Cochain::zeros(mesh, Degree::Zero),
            sigma_h,
            lambda,
        })
    }

    /// Macroscopic state from currents; `J_em = j_e − (e²/M_e) n A`.
    pub fn from_currents(
        mesh: &Mesh2D,
        a: Cochain,
        j_e: Cochain,
        density: f64,
        sigma_h: f64,
        lambda: f64,
        constants: &Constants,
    ) -> Result<Self, FieldError> {
        check_coefficients(sigma_h, lambda)?;
        check_one_form(mesh, &a, "gauge potential")?;
        check_one_form(mesh, &j_e, "electric current")?;
        if !(density >= 0.0 && density.is_finite()) {
            return Err(FieldError::InvalidParameter(format!("density must be non-negative, got {density}")));
        }
        let coupling = constants.charge * constants.charge / constants.mass * density;
        let j_em = j_e.lincomb(1.0, &a, -coupling)?;
        Ok(FieldState {
            psi: None,
            a,
            j_e,
            j_em,
            a0: Cochain::zeros(mesh, Degree::Zero),
            j0: Cochain::zeros(mesh, Degree::Zero),
            sigma_h,
            lambda,
        })
    }

    pub fn with_time_components(mut self, mesh: &Mesh2D, a0: Cochain, j0: Cochain) -> Result<Self, FieldError> {
        for (c, name) in [(&a0, "scalar potential"), (&j0, "charge density")] {
            c.check_mesh(mesh)?;
            if c.degree() != Degree::Zero {
                return Err(FieldError::Shape(format!("{name} must be a 0-cochain")));
            }
        }
        self.a0 = a0;
        self.j0 = j0;
        Ok(self)
    }

    pub fn mesh_id(&self) -> MeshId {
        self.a.mesh_id()
    }

    /// Largest deviation between stored and recomputed derived currents.
    /// `None` for states without a wavefunction.
    pub fn derived_deviation(&self, mesh: &Mesh2D, constants: &Constants) -> Result<Option<f64>, FieldError> {
        let Some(psi) = &self.psi else {
            return Ok(None);
        };
        let j_e = electric_current(mesh, psi, constants)?;
        let j_em = em_current(mesh, psi, &self.a, constants)?;
        let dev = j_e.sub(&self.j_e)?.max_abs().max(j_em.sub(&self.j_em)?.max_abs());
        Ok(Some(dev))
    }
}
