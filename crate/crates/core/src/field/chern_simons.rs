//! Chern-Simons layer on a stack of spatial slices.
//!
//! The Chern-Simons vector is `C = λ j_e − σ_H A` with a spatial 1-cochain part
//! and a temporal 0-cochain part built from `j⁰` and `A⁰`. Expanding the
//! integrand `ε^{αβγ} C_α ∂_β C_γ` with index 3 as time gives
//!
//! ```text
//! C_t (∂₁C₂ − ∂₂C₁) + C_s ∧ dC_t − C_s ∧ ∂_t C_s
//! ```
//!
//! which is discretized face by face: curls are coboundaries, products of two
//! 1-forms use the rectangle wedge, time derivatives are forward differences
//! between slices and undifferentiated factors take the slice midpoint. The
//! action carries unit normalization.
//!
//! The residual `ε^{αβγ} ∂_β C_γ` splits into a spatial curl per face (the
//! constraint) and the 1-form `∂_t C_s − d C_t` per edge between slices (the
//! equations of motion for the spatial components).

use super::{FieldError, FieldState};
use crate::dec::{exterior_derivative, Cochain, Degree, Mesh2D};

/// Chern-Simons vector on one slice.
#[derive(Debug, Clone, PartialEq)]
pub struct CsVector {
    pub spatial: Cochain,
    pub temporal: Cochain,
}

impl CsVector {
    pub fn new(mesh: &Mesh2D, spatial: Cochain, temporal: Cochain) -> Result<Self, FieldError> {
        spatial.check_mesh(mesh)?;
        temporal.check_mesh(mesh)?;
        if spatial.degree() != Degree::One || temporal.degree() != Degree::Zero {
            return Err(FieldError::Shape("C needs a 1-cochain spatial part and 0-cochain time part".into()));
        }
        Ok(CsVector { spatial, temporal })
    }

    fn midpoint(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(CsVector {
            spatial: self.spatial.lincomb(0.5, &other.spatial, 0.5)?,
            temporal: self.temporal.lincomb(0.5, &other.temporal, 0.5)?,
        })
    }
}

/// `C = λ j_e − σ_H A` and `C_t = λ j⁰ − σ_H A⁰`.
pub fn cs_vector(state: &FieldState) -> Result<CsVector, FieldError> {
    Ok(CsVector {
        spatial: state.j_e.lincomb(state.lambda, &state.a, -state.sigma_h)?,
        temporal: state.j0.lincomb(state.lambda, &state.a0, -state.sigma_h)?,
    })
}

/// Time-ordered slices on one mesh.
#[derive(Debug, Clone)]
pub struct SpacetimeStack {
    slices: Vec<FieldState>,
    dt: f64,
}

impl SpacetimeStack {
    pub fn new(slices: Vec<FieldState>, dt: f64) -> Result<Self, FieldError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(FieldError::InvalidParameter(format!("time step must be positive, got {dt}")));
        }
        let Some(first) = slices.first() else {
            return Err(FieldError::InsufficientStack { needed: 1, got: 0 });
        };
        let id = first.mesh_id();
        if slices.iter().any(|s| s.mesh_id() != id) {
            return Err(FieldError::Dec(crate::dec::DecError::MeshMismatch));
        }
        Ok(SpacetimeStack { slices, dt })
    }

    pub fn slices(&self) -> &[FieldState] {
        &self.slices
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn cs_vectors(&self) -> Result<Vec<CsVector>, FieldError> {
        self.slices.iter().map(cs_vector).collect()
    }
}

/// Wedge product of two primal 1-cochains onto faces.
///
/// On each rectangle the x and y components are the averages of the two
/// parallel edges (taken along +x / +y), and the face value is
/// `a_x b_y − a_y b_x`.
pub fn wedge(mesh: &Mesh2D, a: &Cochain, b: &Cochain) -> Result<Cochain, FieldError> {
    a.check_compatible(b)?;
    a.check_mesh(mesh)?;
    if a.degree() != Degree::One {
        return Err(FieldError::Shape("wedge expects 1-cochains".into()));
    }
    let comp = |c: &Cochain, f: usize| {
        let fr = mesh.face_frame(f);
        let v = c.values();
        let along = |s: crate::dec::OrientedEdge| v[s.edge] * s.sign as f64;
        (0.5 * (along(fr.bottom) + along(fr.top)), 0.5 * (along(fr.left) + along(fr.right)))
    };
    Ok(Cochain::from_fn(mesh, Degree::Two, |f| {
        let (ax, ay) = comp(a, f);
        let (bx, by) = comp(b, f);
        ax * by - ay * bx
    }))
}

fn face_average(mesh: &Mesh2D, c: &Cochain) -> Vec<f64> {
    (0..mesh.num_faces()).map(|f| mesh.face_vertices(f).iter().map(|&v| c.values()[v]).sum::<f64>() / 4.0).collect()
}

/// Discrete Chern-Simons action of a sequence of C vectors spaced `dt` apart.
pub fn cs_action_of(mesh: &Mesh2D, vectors: &[CsVector], dt: f64) -> Result<f64, FieldError> {
    if vectors.len() < 2 {
        return Err(FieldError::InsufficientStack { needed: 2, got: vectors.len() });
    }
    let mut total = 0.0;
    for pair in vectors.windows(2) {
        let mid = pair[0].midpoint(&pair[1])?;
        let curl = exterior_derivative(mesh, &mid.spatial)?;
        let grad_t = exterior_derivative(mesh, &mid.temporal)?;
        let ct = face_average(mesh, &mid.temporal);
        let mixed = wedge(mesh, &mid.spatial, &grad_t)?;
        // W(C_mid, ΔC) collapses to W(C_k, C_{k+1}).
        let rotation = wedge(mesh, &pair[0].spatial, &pair[1].spatial)?;
        for (((t, c), m), r) in ct.iter().zip(curl.values()).zip(mixed.values()).zip(rotation.values()) {
            total += dt * (t * c + m) - r;
        }
    }
    Ok(total)
}

pub fn cs_action(mesh: &Mesh2D, stack: &SpacetimeStack) -> Result<f64, FieldError> {
    if stack.slices.len() < 2 {
        return Err(FieldError::InsufficientStack { needed: 2, got: stack.slices.len() });
    }
    cs_action_of(mesh, &stack.cs_vectors()?, stack.dt)
}

/// Components of the discrete curl of C.
#[derive(Debug, Clone)]
pub struct CsResidual {
    /// `ε_mn ∂_m C_n` per face, one 2-cochain per slice.
    pub spatial: Vec<Cochain>,
    /// `∂_t C_s − d C_t` per edge, one 1-cochain per consecutive slice pair.
    pub mixed: Vec<Cochain>,
}

impl CsResidual {
    pub fn max_spatial(&self) -> f64 {
        self.spatial.iter().map(Cochain::max_abs).fold(0.0, f64::max)
    }

    pub fn max_mixed(&self) -> f64 {
        self.mixed.iter().map(Cochain::max_abs).fold(0.0, f64::max)
    }

    pub fn max(&self) -> f64 {
        self.max_spatial().max(self.max_mixed())
    }
}

pub fn cs_residual_of(mesh: &Mesh2D, vectors: &[CsVector], dt: f64) -> Result<CsResidual, FieldError> {
    if vectors.len() < 2 {
        return Err(FieldError::InsufficientStack { needed: 2, got: vectors.len() });
    }
    let spatial = vectors.iter().map(|c| exterior_derivative(mesh, &c.spatial)).collect::<Result<Vec<_>, _>>()?;
    let mut mixed = Vec::with_capacity(vectors.len() - 1);
    for pair in vectors.windows(2) {
        let rate = pair[1].spatial.lincomb(1.0 / dt, &pair[0].spatial, -1.0 / dt)?;
        let mid_t = pair[0].temporal.lincomb(0.5, &pair[1].temporal, 0.5)?;
        mixed.push(rate.sub(&exterior_derivative(mesh, &mid_t)?)?);
    }
    Ok(CsResidual { spatial, mixed })
}

pub fn cs_residual(mesh: &Mesh2D, stack: &SpacetimeStack) -> Result<CsResidual, FieldError> {
    if stack.slices.len() < 2 {
        return Err(FieldError::InsufficientStack { needed: 2, got: stack.slices.len() });
    }
    cs_residual_of(mesh, &stack.cs_vectors()?, stack.dt)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::field::Constants;

    fn state(mesh: &Mesh2D, a: Cochain, j: Cochain, sigma_h: f64, lambda: f64) -> FieldState {
        FieldState::from_currents(mesh, a, j, 1.0, sigma_h, lambda, &Constants::default()).unwrap()
    }

    #[test]
    fn cs_vector_componentwise() {
        let m = Mesh2D::grid(3, 2, 1.0, 1.0).unwrap();
        let j = Cochain::from_fn(&m, Degree::One, |e| (e as f64 * 1.3).sin());
        let a = Cochain::from_fn(&m, Degree::One, |e| (e as f64 * 0.7).cos());
        let c = cs_vector(&state(&m, a.clone(), j.clone(), 0.0, 1.0)).unwrap();
        assert_eq!(c.spatial, j);
        let c = cs_vector(&state(&m, a.clone(), Cochain::zeros(&m, Degree::One), 1.0, 1.0)).unwrap();
        assert_eq!(c.spatial, a.scale(-1.0));
        let c = cs_vector(&state(&m, a.clone(), j.clone(), 1.0, 2.0)).unwrap();
        for e in 0..m.num_edges() {
            assert!((c.spatial.values()[e] - (2.0 * j.values()[e] - a.values()[e])).abs() <= 1e-14);
        }
    }

    #[test]
    fn action_needs_two_slices() {
        let m = Mesh2D::grid(1, 1, 1.0, 1.0).unwrap();
        let z = Cochain::zeros(&m, Degree::One);
        let stack = SpacetimeStack::new(vec![state(&m, z.clone(), z, 1.0, 1.0)], 0.1).unwrap();
        assert!(matches!(cs_action(&m, &stack), Err(FieldError::InsufficientStack { needed: 2, got: 1 })));
        assert!(matches!(cs_residual(&m, &stack), Err(FieldError::InsufficientStack { .. })));
    }

    #[test]
    fn zero_and_constant_fields_have_zero_action() {
        let m = Mesh2D::grid(4, 4, 1.0, 1.0).unwrap();
        let zero = CsVector::new(&m, Cochain::zeros(&m, Degree::One), Cochain::zeros(&m, Degree::Zero)).unwrap();
        assert_eq!(cs_action_of(&m, &[zero.clone(), zero.clone()], 0.1).unwrap(), 0.0);
        assert_eq!(cs_residual_of(&m, &[zero.clone(), zero], 0.1).unwrap().max(), 0.0);

        // constant vector field (cx, cy) and constant C_t
        let (cx, cy) = (0.3, -1.1);
        let h = 0.25;
        let spatial = Cochain::from_fn(&m, Degree::One, |e| if m.is_horizontal(e) { cx * h } else { cy * h });
        let temporal = Cochain::from_fn(&m, Degree::Zero, |_| 0.8);
        let c = CsVector::new(&m, spatial, temporal).unwrap();
        let s = cs_action_of(&m, &[c.clone(), c.clone(), c], 0.05).unwrap();
        assert!(s.abs() < 1e-15, "{s}");
    }

    /// C₁ = a cos(ωt) sin(ky), C₂ = b sin(ωt) sin(kx), C_t = 0 on [0, L]² with
    /// kL = π. The integrand reduces to −abω sin(kx) sin(ky), so
    /// S = −abωT (2/k)².
    fn fourier_mode_action(n: usize, steps: usize) -> (f64, f64) {
        let l = 1.0;
        let k = PI / l;
        let (a, b, omega, t_end) = (0.7, 1.3, 2.0, 0.75);
        let m = Mesh2D::grid(n, n, l, l).unwrap();
        let h = l / n as f64;
        let dt = t_end / steps as f64;
        let vectors: Vec<CsVector> = (0..=steps)
            .map(|s| {
                let t = s as f64 * dt;
                let spatial = Cochain::from_fn(&m, Degree::One, |e| {
                    let p = m.edge_midpoint(e);
                    if m.is_horizontal(e) {
                        a * (omega * t).cos() * (k * p[1]).sin() * h
                    } else {
                        b * (omega * t).sin() * (k * p[0]).sin() * h
                    }
                });
                CsVector::new(&m, spatial, Cochain::zeros(&m, Degree::Zero)).unwrap()
            })
            .collect();
        let exact = -a * b * omega * t_end * (2.0 / k).powi(2);
        (cs_action_of(&m, &vectors, dt).unwrap(), exact)
    }

    #[test]
    fn fourier_mode_action_converges_at_second_order() {
        let (s1, exact) = fourier_mode_action(16, 16);
        let (s2, _) = fourier_mode_action(32, 32);
        let (e1, e2) = ((s1 - exact).abs(), (s2 - exact).abs());
        assert!(e1 / exact.abs() < 1e-2, "coarse error {e1}");
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn static_gradient_has_zero_action() {
        let m = Mesh2D::grid(6, 5, 1.0, 0.8).unwrap();
        let chi = Cochain::from_fn(&m, Degree::Zero, |v| {
            let p = m.vertices()[v];
            (3.0 * p[0]).sin() * (2.0 * p[1]).cos() + p[0] * p[1]
        });
        let spatial = exterior_derivative(&m, &chi).unwrap();
        let c = CsVector::new(&m, spatial, Cochain::zeros(&m, Degree::Zero)).unwrap();
        let s = cs_action_of(&m, &[c.clone(), c.clone(), c], 0.1).unwrap();
        assert!(s.abs() <= 1e-10);
    }

    #[test]
    fn london_solution_has_zero_residual() {
        let m = Mesh2D::grid(5, 5, 1.0, 1.0).unwrap();
        let lambda = 0.4;
        let slices = (0..3)
            .map(|t| {
                let a = Cochain::from_fn(&m, Degree::One, |e| (e as f64 + t as f64).sin());
                let j = a.scale(1.0 / lambda);
                state(&m, a, j, 1.0, lambda)
            })
            .collect();
        let stack = SpacetimeStack::new(slices, 0.2).unwrap();
        assert!(cs_residual(&m, &stack).unwrap().max() <= 1e-12);
    }

    #[test]
    fn time_varying_current_shows_up_in_mixed_residual() {
        let m = Mesh2D::grid(3, 3, 1.0, 1.0).unwrap();
        let (lambda, dt) = (1.5, 0.1);
        let a = Cochain::from_fn(&m, Degree::One, |e| 0.1 * e as f64);
        let j0 = Cochain::from_fn(&m, Degree::One, |e| (e as f64).cos());
        let j1 = Cochain::from_fn(&m, Degree::One, |e| (e as f64).cos() + 0.01 * e as f64);
        let stack = SpacetimeStack::new(
            vec![state(&m, a.clone(), j0.clone(), 1.0, lambda), state(&m, a, j1.clone(), 1.0, lambda)],
            dt,
        )
        .unwrap();
        let r = cs_residual(&m, &stack).unwrap();
        for e in 0..m.num_edges() {
            let hand = lambda * (j1.values()[e] - j0.values()[e]) / dt;
            assert!((r.mixed[0].values()[e] - hand).abs() <= 1e-12);
        }
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let m = Mesh2D::grid(3, 4, 1.0, 2.0).unwrap();
        let a = Cochain::from_fn(&m, Degree::One, |e| (e as f64).sin());
        let b = Cochain::from_fn(&m, Degree::One, |e| (2.0 * e as f64).cos());
        let ab = wedge(&m, &a, &b).unwrap();
        let ba = wedge(&m, &b, &a).unwrap();
        assert_eq!(ab.add(&ba).unwrap().max_abs(), 0.0);
        assert_eq!(wedge(&m, &a, &a).unwrap().max_abs(), 0.0);
    }
}
