//! Wavefunction currents and pure-gauge potentials.
//!
//! On an edge `a → b` the electric current is
//!
//! ```text
//! j_e = (e / M_e) · ρ²_ab · Δφ_ab
//! ```
//!
//! with `ρ²_ab` the midpoint average of `|ψ|²` and `Δφ_ab = arg(ψ_b ψ_a*)`
//! the principal phase increment. The electromagnetic current subtracts the
//! minimal-coupling term, `J_em = j_e − (e²/M_e) ρ²_ab A_ab`, so a potential
//! built from the same increments, `A = Δφ / e`, cancels it edge by edge.
//! The covariant difference `Δφ − eA` is compared modulo 2π.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Constants, FieldError};
use crate::dec::{exterior_derivative, Cochain, Degree, Mesh2D};

/// Wrap an angle to `[-π, π)`.
pub fn wrap_phase(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

fn check_wavefunction(mesh: &Mesh2D, psi: &Cochain<Complex64>) -> Result<(), FieldError> {
    psi.check_mesh(mesh)?;
    if psi.degree() != Degree::Zero {
        return Err(FieldError::Shape(format!("wavefunction must be a 0-cochain, got degree {}", psi.degree().k())));
    }
    Ok(())
}

/// Midpoint-averaged density `|ψ|²` on every edge.
pub fn edge_density(mesh: &Mesh2D, psi: &Cochain<Complex64>) -> Result<Vec<f64>, FieldError> {
    check_wavefunction(mesh, psi)?;
    let v = psi.values();
    Ok(mesh.edges().iter().map(|&[a, b]| 0.5 * (v[a].norm_sqr() + v[b].norm_sqr())).collect())
}

/// Principal phase increment of `ψ` along every edge.
pub fn phase_increments(mesh: &Mesh2D, psi: &Cochain<Complex64>) -> Result<Cochain, FieldError> {
    check_wavefunction(mesh, psi)?;
    let v = psi.values();
    Ok(Cochain::from_fn(mesh, Degree::One, |e| {
        let [a, b] = mesh.edges()[e];
        (v[b] * v[a].conj()).arg()
    }))
}

/// Electric current density `j_e` of a wavefunction.
pub fn electric_current(mesh: &Mesh2D, psi: &Cochain<Complex64>, constants: &Constants) -> Result<Cochain, FieldError> {
    let rho2 = edge_density(mesh, psi)?;
    let dphi = phase_increments(mesh, psi)?;
    let k = constants.charge / constants.mass;
    Ok(Cochain::from_fn(mesh, Degree::One, |e| k * rho2[e] * dphi.values()[e]))
}

/// Representative of `x` modulo 2π in `[-π, π]`, leaving values already in
/// range untouched.
fn principal(x: f64) -> f64 {
    if x.abs() <= PI {
        x
    } else {
        wrap_phase(x)
    }
}

/// Electromagnetic current density `J_em = j_e − (e²/M_e)|ψ|² A`.
///
/// The covariant difference `Δφ − eA` is taken modulo 2π, so large gauge
/// transformations (increments beyond ±π, as for high windings on coarse
/// meshes) leave `J_em` unchanged.
pub fn em_current(
    mesh: &Mesh2D,
    psi: &Cochain<Complex64>,
    potential: &Cochain,
    constants: &Constants,
) -> Result<Cochain, FieldError> {
    potential.check_mesh(mesh)?;
    if potential.degree() != Degree::One {
        return Err(FieldError::Shape("gauge potential must be a 1-cochain".into()));
    }
    let rho2 = edge_density(mesh, psi)?;
    let dphi = phase_increments(mesh, psi)?;
    let e = constants.charge;
    let k = e / constants.mass;
    Ok(Cochain::from_fn(mesh, Degree::One, |i| k * rho2[i] * principal(dphi.values()[i] - e * potential.values()[i])))
}

/// Pure-gauge potential `A = Δφ / e` carried by a field of phase increments.
pub fn pure_gauge_potential(mesh: &Mesh2D, increments: &Cochain, constants: &Constants) -> Result<Cochain, FieldError> {
    increments.check_mesh(mesh)?;
    if increments.degree() != Degree::One {
        return Err(FieldError::Shape("phase increments must be a 1-cochain".into()));
    }
    Ok(increments.scale(1.0 / constants.charge))
}

/// Phase increments winding `winding` times around hole `hole`.
///
/// Each edge gets `winding · wrap(θ_b − θ_a)` with `θ` the polar angle about
/// the centroid of the hole loop's vertices. The increments are curl-free on
/// every face that does not contain that centroid and sum to `2π·winding`
/// around the hole.
pub fn winding_phase(mesh: &Mesh2D, hole: usize, winding: i64) -> Result<Cochain, FieldError> {
    let lp = mesh.hole_loops().get(hole).ok_or_else(|| FieldError::Topology(format!("mesh has no hole {hole}")))?;
    let n = lp.len() as f64;
    let (mut cx, mut cy) = (0.0, 0.0);
    for s in &lp.steps {
        let p = mesh.vertices()[mesh.step_tail(*s)];
        cx += p[0] / n;
        cy += p[1] / n;
    }
    let theta = |v: usize| {
        let p = mesh.vertices()[v];
        (p[1] - cy).atan2(p[0] - cx)
    };
    Ok(Cochain::from_fn(mesh, Degree::One, |e| {
        let [a, b] = mesh.edges()[e];
        winding as f64 * wrap_phase(theta(b) - theta(a))
    }))
}

/// Build `ψ = ρ · exp(iφ)` from vertex amplitudes and a curl-free field of
/// phase increments.
///
/// The phase is integrated along a breadth-first spanning tree. Increments
/// whose face sums are not multiples of 2π cannot come from a single-valued
/// wavefunction and are rejected.
pub fn wavefunction_from_phase(
    mesh: &Mesh2D,
    amplitude: &Cochain,
    increments: &Cochain,
) -> Result<Cochain<Complex64>, FieldError> {
    amplitude.check_mesh(mesh)?;
    increments.check_mesh(mesh)?;
    if amplitude.degree() != Degree::Zero || increments.degree() != Degree::One {
        return Err(FieldError::Shape("need a 0-cochain amplitude and 1-cochain increments".into()));
    }
    let curl = exterior_derivative(mesh, increments)?;
    for (f, &c) in curl.values().iter().enumerate() {
        let off = (c - 2.0 * PI * (c / (2.0 * PI)).round()).abs();
        if off > 1e-9 {
            return Err(FieldError::NotIntegrable { face: f, curl: c });
        }
    }

    let nv = mesh.num_vertices();
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    for (e, &[a, b]) in mesh.edges().iter().enumerate() {
        let d = increments.values()[e];
        adjacency[a].push((b, d));
        adjacency[b].push((a, -d));
    }
    let mut phase = vec![f64::NAN; nv];
    for root in 0..nv {
        if !phase[root].is_nan() {
            continue;
        }
        phase[root] = 0.0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, d) in &adjacency[v] {
                if phase[w].is_nan() {
                    phase[w] = phase[v] + d;
                    queue.push_back(w);
                }
            }
        }
    }
    let rho = amplitude.values();
    Ok(Cochain::from_fn(mesh, Degree::Zero, |v| Complex64::from_polar(rho[v], phase[v])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dec::{loop_sum, CellRect, GridSpec};

    fn line(n: usize) -> Mesh2D {
        Mesh2D::grid(n, 1, n as f64, 1.0).unwrap()
    }

    #[test]
    fn constant_real_wavefunction_carries_no_current() {
        let m = line(5);
        let psi = Cochain::from_fn(&m, Degree::Zero, |_| Complex64::new(0.7, 0.0));
        let j = electric_current(&m, &psi, &Constants::default()).unwrap();
        assert_eq!(j.max_abs(), 0.0);
    }

    #[test]
    fn plane_wave_current_matches_wavenumber() {
        let m = line(8);
        for k in [0.01, 0.05, 0.2] {
            let psi = Cochain::from_fn(&m, Degree::Zero, |v| Complex64::from_polar(1.0, k * m.vertices()[v][0]));
            let j = electric_current(&m, &psi, &Constants::default()).unwrap();
            for e in (0..m.num_edges()).filter(|&e| m.is_horizontal(e)) {
                let rel = (j.values()[e] - k).abs() / k;
                assert!(rel <= k * k, "k={k} edge {e}: {}", j.values()[e]);
            }
        }
    }

    #[test]
    fn global_phase_rotation_leaves_current_unchanged() {
        let m = Mesh2D::grid(4, 3, 1.0, 1.0).unwrap();
        let psi = Cochain::from_fn(&m, Degree::Zero, |v| Complex64::from_polar(1.0 + 0.1 * v as f64, 0.3 * v as f64));
        let c = Constants::new(1.3, 0.8).unwrap();
        let j0 = electric_current(&m, &psi, &c).unwrap();
        let rot = psi.map(|z| z * Complex64::from_polar(1.0, 2.1));
        let j1 = electric_current(&m, &rot, &c).unwrap();
        for (a, b) in j0.values().iter().zip(j1.values()) {
            assert!((a - b).abs() <= 1e-14);
        }
    }

    #[test]
    fn vanishing_potential_or_wavefunction() {
        let m = Mesh2D::grid(3, 3, 1.0, 1.0).unwrap();
        let c = Constants::default();
        let psi = Cochain::from_fn(&m, Degree::Zero, |v| Complex64::from_polar(1.0, 0.2 * v as f64));
        let zero_a = Cochain::zeros(&m, Degree::One);
        assert_eq!(em_current(&m, &psi, &zero_a, &c).unwrap(), electric_current(&m, &psi, &c).unwrap());
        let zero_psi = Cochain::zeros(&m, Degree::Zero);
        let a = Cochain::from_fn(&m, Degree::One, |e| e as f64);
        assert_eq!(em_current(&m, &zero_psi, &a, &c).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn pure_gauge_of_gradient_phase_cancels() {
        let m = Mesh2D::grid(5, 4, 2.0, 1.0).unwrap();
        let c = Constants::new(1.7, 0.6).unwrap();
        let phi = Cochain::from_fn(&m, Degree::Zero, |v| 0.3 * (v as f64).sin());
        let rho = Cochain::from_fn(&m, Degree::Zero, |v| 0.5 + 0.01 * v as f64);
        let dphi = exterior_derivative(&m, &phi).unwrap();
        let psi = wavefunction_from_phase(&m, &rho, &dphi).unwrap();
        let a = pure_gauge_potential(&m, &dphi, &c).unwrap();
        assert!(em_current(&m, &psi, &a, &c).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn pure_gauge_holonomy_examples() {
        let spec = GridSpec::new(6, 6, 1.0, 1.0).with_hole(CellRect::new(2, 2, 4, 4));
        let m = Mesh2D::from_grid(&spec).unwrap();
        let hole = &m.hole_loops()[0];
        let zero = Cochain::zeros(&m, Degree::One);
        assert_eq!(pure_gauge_potential(&m, &zero, &Constants::default()).unwrap().max_abs(), 0.0);

        let a1 = pure_gauge_potential(&m, &winding_phase(&m, 0, 1).unwrap(), &Constants::default()).unwrap();
        assert!((loop_sum(&m, &a1, hole).unwrap() - 2.0 * PI).abs() < 1e-14);

        let e2 = Constants::new(2.0, 1.0).unwrap();
        let a3 = pure_gauge_potential(&m, &winding_phase(&m, 0, 3).unwrap(), &e2).unwrap();
        assert!((loop_sum(&m, &a3, hole).unwrap() - 3.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn winding_six_pi_around_annulus() {
        let spec = GridSpec::new(8, 8, 1.0, 1.0).with_hole(CellRect::new(3, 3, 5, 5));
        let m = Mesh2D::from_grid(&spec).unwrap();
        let a = pure_gauge_potential(&m, &winding_phase(&m, 0, 3).unwrap(), &Constants::default()).unwrap();
        let outer = m.rectangle_loop(CellRect::new(0, 0, 8, 8)).unwrap();
        assert!((loop_sum(&m, &a, &outer).unwrap() - 6.0 * PI).abs() < 1e-13);
        assert!((loop_sum(&m, &a, &m.hole_loops()[0]).unwrap() - 6.0 * PI).abs() < 1e-13);
        // per-edge increments exceed π here; the current still cancels
        let incr = winding_phase(&m, 0, 3).unwrap();
        assert!(incr.max_abs() > PI / 2.0);
        let rho = Cochain::from_fn(&m, Degree::Zero, |_| 1.0);
        let psi = wavefunction_from_phase(&m, &rho, &incr).unwrap();
        assert!(em_current(&m, &psi, &a, &Constants::default()).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn rejects_non_integrable_increments() {
        let m = Mesh2D::grid(2, 2, 1.0, 1.0).unwrap();
        let rho = Cochain::from_fn(&m, Degree::Zero, |_| 1.0);
        let bad = Cochain::from_fn(&m, Degree::One, |e| 0.1 * e as f64);
        assert!(matches!(wavefunction_from_phase(&m, &rho, &bad), Err(FieldError::NotIntegrable { .. })));
    }

    #[test]
    fn wrap_phase_range() {
        for x in [-7.0, -PI, 0.0, 3.0, PI, 10.0] {
            let w = wrap_phase(x);
            assert!((-PI..PI).contains(&w));
            assert!(((x - w) / (2.0 * PI) - ((x - w) / (2.0 * PI)).round()).abs() < 1e-12);
        }
    }
}
