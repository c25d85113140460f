//! Static London screening.
//!
//! The unknown is the pointwise field `b_f` on every face (flux over area).
//! Finite volumes on the cell-centered grid give
//!
//! ```text
//! Σ_e (ℓ_e / ℓ*_e)(b_f − b_nbr) + (|f| / λ²) b_f = 0
//! ```
//!
//! where the neighbour across a Dirichlet boundary edge is the exterior field
//! `B_ext` (placed on the edge, half a cell away) and insulated boundary edges
//! carry no flux. The screening term only acts on superconducting faces.
//!
//! The current is recovered by inverting the curl constraint `λ d j = B`:
//! `j = −λ δB` edge by edge, with the same ghost values. Then `λ (d j)_f`
//! reproduces the face flux up to the linear-solve residual, and the London
//! gauge `A = λ j` makes the electromagnetic current vanish.

mod cg;
mod export;

pub use cg::{pcg, CgOutcome, CsrMatrix};
pub use export::{convergence_jsonl, current_csv, field_csv};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dec::{BoundarySide, Cochain, DecError, Degree, Mesh2D};
use crate::field::{Constants, FieldError, FieldState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LondonError {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain too thin: {0}")]
    ThinDomain(String),
    #[error("solver did not converge in {iterations} iterations (relative residual {})", residual_history.last().copied().unwrap_or(f64::NAN))]
    NotConverged { iterations: usize, residual_history: Vec<f64> },
    #[error(transparent)]
    Dec(#[from] DecError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Superconducting material on a set of faces.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    /// Carrier density.
    pub n: f64,
    /// Penetration depth `M_e / (n e²)`.
    pub lambda: f64,
    /// `region[f]` is true on superconducting faces.
    pub region: Vec<bool>,
}

impl Material {
    pub fn new(n: f64, region: Vec<bool>, constants: &Constants) -> Result<Self, LondonError> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(LondonError::InvalidMaterial(format!("carrier density must be positive, got {n}")));
        }
        Ok(Material { n, lambda: constants.london_depth(n), region })
    }

    /// Material with a prescribed depth; the density follows from `λ = M_e/(n e²)`.
    pub fn from_lambda(lambda: f64, region: Vec<bool>, constants: &Constants) -> Result<Self, LondonError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(LondonError::InvalidMaterial(format!("lambda must be positive, got {lambda}")));
        }
        let n = constants.mass / (lambda * constants.charge * constants.charge);
        Ok(Material { n, lambda, region })
    }

    /// Every face superconducting.
    pub fn uniform(mesh: &Mesh2D, lambda: f64, constants: &Constants) -> Result<Self, LondonError> {
        Self::from_lambda(lambda, vec![true; mesh.num_faces()], constants)
    }

    fn validate(&self, mesh: &Mesh2D) -> Result<(), LondonError> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(LondonError::InvalidMaterial(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !(self.n > 0.0 && self.n.is_finite()) {
            return Err(LondonError::InvalidMaterial(format!("carrier density must be positive, got {}", self.n)));
        }
        if self.region.len() != mesh.num_faces() {
            return Err(LondonError::InvalidMaterial(format!(
                "region flags {} faces, mesh has {}",
                self.region.len(),
                mesh.num_faces()
            )));
        }
        if !self.region.iter().any(|&r| r) {
            return Err(LondonError::InvalidMaterial("superconducting region is empty".into()));
        }
        Ok(())
    }
}

/// Which boundary edges hold `B = B_ext`; the rest are insulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletSides {
    pub left: bool,
    pub right: bool,
    pub bottom: bool,
    pub top: bool,
    pub holes: bool,
}

impl Default for DirichletSides {
    fn default() -> Self {
        DirichletSides { left: true, right: true, bottom: true, top: true, holes: true }
    }
}

impl DirichletSides {
    /// Field applied along x only: left/right walls fixed, top/bottom insulated.
    pub fn strip_x() -> Self {
        DirichletSides { left: true, right: true, bottom: false, top: false, holes: false }
    }

    pub fn contains(&self, side: BoundarySide) -> bool {
        match side {
            BoundarySide::Left => self.left,
            BoundarySide::Right => self.right,
            BoundarySide::Bottom => self.bottom,
            BoundarySide::Top => self.top,
            BoundarySide::Hole => self.holes,
        }
    }

    pub fn is_dirichlet(&self, mesh: &Mesh2D, e: usize) -> bool {
        mesh.boundary_side(e).is_some_and(|s| self.contains(s))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeissnerSetup {
    pub b_ext: f64,
    pub sides: DirichletSides,
    /// Relative residual target of the linear solve.
    pub tolerance: f64,
}

impl MeissnerSetup {
    pub fn new(b_ext: f64) -> Self {
        MeissnerSetup { b_ext, sides: DirichletSides::default(), tolerance: 1e-10 }
    }

    pub fn with_sides(mut self, sides: DirichletSides) -> Self {
        self.sides = sides;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeissnerSolution {
    /// Magnetic flux per face (2-cochain).
    pub b: Cochain,
    /// Screening current (1-cochain).
    pub j_e: Cochain,
    /// Relative residual of the final iterate.
    pub residual_norm: f64,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub b_ext: f64,
    pub lambda: f64,
    pub sides: DirichletSides,
}

impl MeissnerSolution {
    /// Pointwise field `b_f = Φ_f / |f|`.
    pub fn field(&self, mesh: &Mesh2D) -> Vec<f64> {
        (0..mesh.num_faces()).map(|f| self.b.values()[f] / mesh.face_area(f)).collect()
    }

    /// Total flux divided by `B_ext` times the area of the given faces.
    pub fn flux_ratio(&self, mesh: &Mesh2D, faces: &[usize]) -> f64 {
        let flux: f64 = faces.iter().map(|&f| self.b.values()[f]).sum();
        let area: f64 = faces.iter().map(|&f| mesh.face_area(f)).sum();
        flux / (self.b_ext * area)
    }
}

fn check_thickness(mesh: &Mesh2D, sides: &DirichletSides) -> Result<(), LondonError> {
    let Some(info) = mesh.grid_info() else {
        return if mesh.num_faces() < 2 {
            Err(LondonError::ThinDomain("need at least 2 faces".into()))
        } else {
            Ok(())
        };
    };
    if (sides.left || sides.right) && info.spec.nx < 2 {
        return Err(LondonError::ThinDomain(format!("{} cell(s) across the x direction", info.spec.nx)));
    }
    if (sides.bottom || sides.top) && info.spec.ny < 2 {
        return Err(LondonError::ThinDomain(format!("{} cell(s) across the y direction", info.spec.ny)));
    }
    Ok(())
}

fn edge_coupling(mesh: &Mesh2D, e: usize) -> f64 {
    mesh.edge_length(e) / mesh.edge_dual_length(e)
}

pub fn solve_meissner(mesh: &Mesh2D, material: &Material, b_ext: f64) -> Result<MeissnerSolution, LondonError> {
    solve_meissner_with(mesh, material, &MeissnerSetup::new(b_ext))
}

pub fn solve_meissner_with(
    mesh: &Mesh2D,
    material: &Material,
    setup: &MeissnerSetup,
) -> Result<MeissnerSolution, LondonError> {
    material.validate(mesh)?;
    if !setup.b_ext.is_finite() {
        return Err(LondonError::InvalidInput(format!("B_ext must be finite, got {}", setup.b_ext)));
    }
    if !(setup.tolerance > 0.0 && setup.tolerance.is_finite()) {
        return Err(LondonError::InvalidInput(format!("tolerance must be positive, got {}", setup.tolerance)));
    }
    check_thickness(mesh, &setup.sides)?;

    let nf = mesh.num_faces();
    let inv_l2 = 1.0 / (material.lambda * material.lambda);
    let mut triplets = Vec::with_capacity(5 * nf);
    let mut rhs = vec![0.0; nf];
    for f in 0..nf {
        if material.region[f] {
            triplets.push((f, f, mesh.face_area(f) * inv_l2));
        }
    }
    for e in 0..mesh.num_edges() {
        let w = edge_coupling(mesh, e);
        match *mesh.edge_faces(e) {
            [(f, _), (g, _)] => {
                triplets.extend([(f, f, w), (g, g, w), (f, g, -w), (g, f, -w)]);
            }
            [(f, _)] if setup.sides.is_dirichlet(mesh, e) => {
                triplets.push((f, f, w));
                rhs[f] += w * setup.b_ext;
            }
            _ => {}
        }
    }
    let k = CsrMatrix::from_triplets(nf, triplets);
    let cap = (50.0 * (nf as f64).sqrt()).ceil() as usize;
    let out = pcg(&k, &rhs, setup.tolerance, cap);
    if !out.converged {
        return Err(LondonError::NotConverged { iterations: out.iterations, residual_history: out.history });
    }
    let b = Cochain::from_fn(mesh, Degree::Two, |f| out.x[f] * mesh.face_area(f));
    let j_e = current_from_field(mesh, &out.x, material.lambda, setup.b_ext, &setup.sides);
    Ok(MeissnerSolution {
        b,
        j_e,
        residual_norm: *out.history.last().unwrap(),
        iterations: out.iterations,
        residual_history: out.history,
        b_ext: setup.b_ext,
        lambda: material.lambda,
        sides: setup.sides,
    })
}

fn current_from_field(mesh: &Mesh2D, field: &[f64], lambda: f64, b_ext: f64, sides: &DirichletSides) -> Cochain {
    Cochain::from_fn(mesh, Degree::One, |e| {
        let w = edge_coupling(mesh, e);
        match *mesh.edge_faces(e) {
            [(f, sf), (g, sg)] => -lambda * w * (sf as f64 * field[f] + sg as f64 * field[g]),
            [(f, sf)] if sides.is_dirichlet(mesh, e) => -lambda * w * sf as f64 * (field[f] - b_ext),
            _ => 0.0,
        }
    })
}

/// Screening current recovered from the solved field via `λ d j = B`.
pub fn surface_current(mesh: &Mesh2D, solution: &MeissnerSolution) -> Result<Cochain, LondonError> {
    solution.b.check_mesh(mesh)?;
    let field = solution.field(mesh);
    Ok(current_from_field(mesh, &field, solution.lambda, solution.b_ext, &solution.sides))
}

/// Integrate `dj/dt = λ⁻¹ dA/dt` along a sampled potential path.
///
/// The result depends only on the path endpoints.
pub fn evolve_current(j0: &Cochain, a_path: &[Cochain], lambda: f64) -> Result<Cochain, LondonError> {
    let (Some(first), Some(last)) = (a_path.first(), a_path.last()) else {
        return Err(LondonError::InvalidInput("potential path needs at least one sample".into()));
    };
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(LondonError::InvalidMaterial(format!("lambda must be positive, got {lambda}")));
    }
    for a in a_path {
        j0.check_compatible(a)?;
    }
    Ok(j0.add(&last.lincomb(1.0 / lambda, first, -1.0 / lambda)?)?)
}

/// Field state of a solution in the London gauge `A = λ j`.
pub fn london_state(
    mesh: &Mesh2D,
    solution: &MeissnerSolution,
    material: &Material,
    sigma_h: f64,
    constants: &Constants,
) -> Result<FieldState, LondonError> {
    let a = solution.j_e.scale(material.lambda);
    Ok(FieldState::from_currents(mesh, a, solution.j_e.clone(), material.n, sigma_h, material.lambda, constants)?)
}

fn segment_box_distance(p: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> f64 {
    let dx = (lo[0] - p[0]).max(0.0).max(p[0] - hi[0]);
    let dy = (lo[1] - p[1]).max(0.0).max(p[1] - hi[1]);
    dx.hypot(dy)
}

fn dirichlet_segments(mesh: &Mesh2D, sides: &DirichletSides) -> Vec<([f64; 2], [f64; 2])> {
    mesh.boundary_edges()
        .filter(|&e| sides.is_dirichlet(mesh, e))
        .map(|e| {
            let [a, b] = mesh.edges()[e];
            let (pa, pb) = (mesh.vertices()[a], mesh.vertices()[b]);
            ([pa[0].min(pb[0]), pa[1].min(pb[1])], [pa[0].max(pb[0]), pa[1].max(pb[1])])
        })
        .collect()
}

/// Distance from a point to the nearest Dirichlet boundary edge.
pub fn boundary_distance(mesh: &Mesh2D, sides: &DirichletSides, p: [f64; 2]) -> f64 {
    dirichlet_segments(mesh, sides)
        .iter()
        .map(|&(lo, hi)| segment_box_distance(p, lo, hi))
        .fold(f64::INFINITY, f64::min)
}

/// For every face, the distance between its closest point and the nearest
/// Dirichlet boundary edge.
pub fn face_boundary_distances(mesh: &Mesh2D, sides: &DirichletSides) -> Vec<f64> {
    let segs = dirichlet_segments(mesh, sides);
    (0..mesh.num_faces())
        .map(|f| {
            let vs = mesh.face_vertices(f).map(|v| mesh.vertices()[v]);
            let lo = [
                vs.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
                vs.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min),
            ];
            let hi = [
                vs.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max),
                vs.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max),
            ];
            segs.iter()
                .map(|&(slo, shi)| {
                    let dx = (slo[0] - hi[0]).max(0.0).max(lo[0] - shi[0]);
                    let dy = (slo[1] - hi[1]).max(0.0).max(lo[1] - shi[1]);
                    dx.hypot(dy)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// Fraction of the L¹ norm of `j` on edges whose midpoints lie within `depth`
/// of a Dirichlet boundary.
pub fn current_fraction_within(mesh: &Mesh2D, sides: &DirichletSides, j: &Cochain, depth: f64) -> f64 {
    let segs = dirichlet_segments(mesh, sides);
    let (mut near, mut total) = (0.0, 0.0);
    for (e, v) in j.values().iter().enumerate() {
        let p = mesh.edge_midpoint(e);
        let d = segs.iter().map(|&(lo, hi)| segment_box_distance(p, lo, hi)).fold(f64::INFINITY, f64::min);
        total += v.abs();
        if d <= depth {
            near += v.abs();
        }
    }
    if total == 0.0 {
        1.0
    } else {
        near / total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dec::{exterior_derivative, CellRect, GridSpec};

    fn strip(n: usize, l: f64) -> Mesh2D {
        Mesh2D::grid(n, 1, l, l / n as f64).unwrap()
    }

    fn solve_strip(n: usize, l: f64, lambda: f64) -> (Mesh2D, MeissnerSolution) {
        let m = strip(n, l);
        let mat = Material::uniform(&m, lambda, &Constants::default()).unwrap();
        let sol =
            solve_meissner_with(&m, &mat, &MeissnerSetup::new(1.0).with_sides(DirichletSides::strip_x())).unwrap();
        (m, sol)
    }

    fn cosh_profile(x: f64, l: f64, lambda: f64) -> f64 {
        ((x - l / 2.0) / lambda).cosh() / (l / (2.0 * lambda)).cosh()
    }

    #[test]
    fn material_depth_recomputes() {
        let c = Constants::new(1.5, 2.0).unwrap();
        let m = Material::new(3.0, vec![true], &c).unwrap();
        assert!((m.lambda - c.mass / (m.n * c.charge * c.charge)).abs() < 1e-15);
        let m2 = Material::from_lambda(0.7, vec![true], &c).unwrap();
        assert!((m2.lambda - c.london_depth(m2.n)).abs() < 1e-15);
        assert!(Material::from_lambda(0.0, vec![true], &c).is_err());
        assert!(Material::new(-1.0, vec![true], &c).is_err());
    }

    #[test]
    fn zero_exterior_field_gives_zero_solution() {
        let m = Mesh2D::grid(8, 8, 1.0, 1.0).unwrap();
        let mat = Material::uniform(&m, 0.1, &Constants::default()).unwrap();
        let sol = solve_meissner(&m, &mat, 0.0).unwrap();
        assert_eq!(sol.b.max_abs(), 0.0);
        assert_eq!(sol.j_e.max_abs(), 0.0);
        assert_eq!(surface_current(&m, &sol).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn strip_center_matches_cosh_profile() {
        let (m, sol) = solve_strip(200, 10.0, 1.0);
        let b = sol.field(&m);
        let center = 0.5 * (b[99] + b[100]);
        let exact = 1.0 / 5.0f64.cosh();
        assert!((center - exact).abs() / exact < 0.02, "{center} vs {exact}");
        assert!(sol.residual_norm <= 1e-10);
    }

    #[test]
    fn strip_error_is_second_order() {
        let err = |n: usize| {
            let (m, sol) = solve_strip(n, 10.0, 1.0);
            sol.field(&m)
                .iter()
                .enumerate()
                .map(|(f, b)| (b - cosh_profile(m.face_center(f)[0], 10.0, 1.0)).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(100) / err(200);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn strip_current_matches_sinh_profile() {
        let (l, lambda) = (10.0, 1.0);
        let (m, sol) = solve_strip(200, l, lambda);
        let h = l / 200.0;
        let mut peak = 0.0f64;
        for e in (0..m.num_edges()).filter(|&e| !m.is_horizontal(e)) {
            let x = m.edge_midpoint(e)[0];
            // j along y per unit length is λ ∂_x B.
            let exact = ((x - l / 2.0) / lambda).sinh() / (l / (2.0 * lambda)).cosh();
            let per_length = sol.j_e.values()[e] / m.edge_length(e);
            peak = peak.max(per_length.abs());
            if exact.abs() > 0.05 {
                assert!((per_length.abs() - exact.abs()).abs() / exact.abs() < 0.03, "x={x}: {per_length} vs {exact}");
            }
        }
        assert!(peak > 0.99 - h);
    }

    #[test]
    fn no_screening_limit() {
        let (m, sol) = solve_strip(200, 10.0, 1e6);
        assert!(sol.field(&m).iter().all(|b| (b - 1.0).abs() <= 1e-6));
        assert!(sol.j_e.max_abs() <= 1e-4);
    }

    #[test]
    fn curl_of_current_is_flux_over_lambda() {
        let spec = GridSpec::new(12, 10, 1.2, 1.0).with_hole(CellRect::new(4, 4, 7, 6));
        let m = Mesh2D::from_grid(&spec).unwrap();
        let mat = Material::uniform(&m, 0.15, &Constants::default()).unwrap();
        let sol = solve_meissner(&m, &mat, 2.0).unwrap();
        let dj = exterior_derivative(&m, &sol.j_e).unwrap();
        for f in 0..m.num_faces() {
            let target = sol.b.values()[f] / mat.lambda;
            assert!((dj.values()[f] - target).abs() <= 1e-8, "face {f}");
        }
    }

    #[test]
    fn london_gauge_state_has_no_em_current() {
        let (m, sol) = solve_strip(40, 4.0, 0.5);
        let c = Constants::default();
        let mat = Material::uniform(&m, 0.5, &c).unwrap();
        let s = london_state(&m, &sol, &mat, 1.0, &c).unwrap();
        assert!(s.j_em.max_abs() <= 1e-14);
    }

    #[test]
    fn thin_domains_are_rejected() {
        let m = Mesh2D::grid(1, 5, 1.0, 5.0).unwrap();
        let mat = Material::uniform(&m, 1.0, &Constants::default()).unwrap();
        assert!(matches!(solve_meissner(&m, &mat, 1.0), Err(LondonError::ThinDomain(_))));
    }

    #[test]
    fn iteration_cap_surfaces_history() {
        let m = Mesh2D::grid(30, 30, 1.0, 1.0).unwrap();
        let mat = Material::uniform(&m, 0.2, &Constants::default()).unwrap();
        let mut setup = MeissnerSetup::new(1.0);
        setup.tolerance = 1e-300;
        match solve_meissner_with(&m, &mat, &setup) {
            Err(LondonError::NotConverged { iterations, residual_history }) => {
                assert_eq!(iterations, (50.0 * 30.0f64).ceil() as usize);
                assert_eq!(residual_history.len(), iterations + 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn evolve_current_is_endpoint_integral() {
        let m = Mesh2D::grid(2, 2, 1.0, 1.0).unwrap();
        let j0 = Cochain::zeros(&m, Degree::One);
        let a1 = Cochain::from_fn(&m, Degree::One, |e| e as f64 + 0.5);
        let j = evolve_current(&j0, &[Cochain::zeros(&m, Degree::One), a1.clone()], 2.0).unwrap();
        assert_eq!(j, a1.scale(0.5));
        let constant = evolve_current(&a1, &[a1.clone(), a1.clone(), a1.clone()], 0.3).unwrap();
        assert_eq!(constant, a1);
        assert!(evolve_current(&j0, &[], 1.0).is_err());
    }

    #[test]
    fn deep_interior_is_field_free() {
        let (n, l) = (64, 1.0);
        let lambda = l / 20.0;
        let m = Mesh2D::grid(n, n, l, l).unwrap();
        let mat = Material::uniform(&m, lambda, &Constants::default()).unwrap();
        let sol = solve_meissner(&m, &mat, 1.0).unwrap();
        let dist = face_boundary_distances(&m, &sol.sides);
        let b = sol.field(&m);
        let deep: Vec<usize> = (0..m.num_faces()).filter(|&f| dist[f] > 5.0 * lambda).collect();
        assert!(!deep.is_empty());
        let worst = deep.iter().map(|&f| b[f].abs()).fold(0.0, f64::max);
        assert!(worst <= 0.01, "{worst}");
        assert!(current_fraction_within(&m, &sol.sides, &sol.j_e, 3.0 * lambda) >= 0.9);
    }

    #[test]
    fn flux_is_expelled_for_small_depth() {
        let (m, sol) = solve_strip(2000, 10.0, 0.1);
        let all: Vec<usize> = (0..m.num_faces()).collect();
        assert!(sol.flux_ratio(&m, &all) <= 0.05);
    }

    #[test]
    fn screening_is_monotone_in_depth() {
        let mut prev: Option<Vec<f64>> = None;
        for lambda in [5.0, 2.0, 1.0, 0.5, 0.25] {
            let (m, sol) = solve_strip(100, 10.0, lambda);
            let b = sol.field(&m);
            if let Some(p) = &prev {
                assert!(b.iter().zip(p).all(|(now, before)| now.abs() <= before.abs() + 1e-12));
            }
            prev = Some(b);
        }
    }

    #[test]
    fn boundary_distance_of_unit_square() {
        let m = Mesh2D::grid(4, 4, 1.0, 1.0).unwrap();
        let s = DirichletSides::default();
        assert!((boundary_distance(&m, &s, [0.5, 0.5]) - 0.5).abs() < 1e-15);
        assert!((boundary_distance(&m, &s, [0.1, 0.7]) - 0.1).abs() < 1e-15);
        let d = face_boundary_distances(&m, &s);
        assert_eq!(d.iter().filter(|&&x| x == 0.0).count(), 12);
        assert_eq!(d.iter().filter(|&&x| (x - 0.25).abs() < 1e-15).count(), 4);
    }
}
