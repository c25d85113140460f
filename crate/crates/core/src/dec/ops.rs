use std::collections::{HashMap, HashSet, VecDeque};

use super::{Cochain, DecError, Degree, EdgeLoop, Mesh2D, OrientedEdge, Scalar, Side};

/// Signed incidence entries `(row, column, sign)` of the coboundary matrix
/// from degree `k` to `k + 1`.
pub fn incidence(mesh: &Mesh2D, k: Degree) -> Result<Vec<(usize, usize, i8)>, DecError> {
    match k {
        Degree::Zero => Ok(mesh.edges().iter().enumerate().flat_map(|(e, &[a, b])| [(e, a, -1), (e, b, 1)]).collect()),
        Degree::One => Ok(mesh
            .faces()
            .iter()
            .enumerate()
            .flat_map(|(f, face)| face.iter().map(move |s| (f, s.edge, s.sign)))
            .collect()),
        Degree::Two => Err(DecError::UnsupportedDegree { op: "incidence", degree: 2 }),
    }
}

/// Coboundary `d`: 0-cochains to 1-cochains and 1-cochains to 2-cochains.
pub fn exterior_derivative<T: Scalar>(mesh: &Mesh2D, c: &Cochain<T>) -> Result<Cochain<T>, DecError> {
    c.check_mesh(mesh)?;
    if c.side() != Side::Primal {
        return Err(DecError::UnsupportedComplex);
    }
    let v = c.values();
    match c.degree() {
        Degree::Zero => {
            let out = mesh.edges().iter().map(|&[a, b]| v[b] - v[a]).collect();
            Ok(Cochain::raw(Degree::One, Side::Primal, mesh.id(), out))
        }
        Degree::One => {
            let out = mesh.faces().iter().map(|face| signed_sum(v, face)).collect();
            Ok(Cochain::raw(Degree::Two, Side::Primal, mesh.id(), out))
        }
        Degree::Two => Err(DecError::UnsupportedDegree { op: "exterior_derivative", degree: 2 }),
    }
}

fn signed_sum<T: Scalar>(values: &[T], steps: &[OrientedEdge]) -> T {
    let mut acc = T::zero();
    for s in steps {
        if s.sign > 0 {
            acc += values[s.edge];
        } else {
            acc += -values[s.edge];
        }
    }
    acc
}

/// Diagonal Hodge weight `dual_volume / primal_volume` of a primal k-cell.
pub fn hodge_weight(mesh: &Mesh2D, k: Degree, i: usize) -> f64 {
    mesh.dual_volume(k, i) / mesh.primal_volume(k, i)
}

/// Diagonal (circumcentric) Hodge star.
///
/// Primal k-cochains map to dual (2-k)-cochains by multiplying with
/// `dual_volume / primal_volume`. Dual cochains map back with the reciprocal
/// weight and the sign `(-1)^(k(2-k))`, so that applying the star twice
/// returns `c` for k = 0, 2 and `-c` for k = 1.
pub fn hodge_star<T: Scalar>(mesh: &Mesh2D, c: &Cochain<T>) -> Result<Cochain<T>, DecError> {
    c.check_mesh(mesh)?;
    let v = c.values();
    match c.side() {
        Side::Primal => {
            let k = c.degree();
            let out = v.iter().enumerate().map(|(i, &x)| x * hodge_weight(mesh, k, i)).collect();
            Ok(Cochain::raw(k.complement(), Side::Dual, mesh.id(), out))
        }
        Side::Dual => {
            let k = c.degree().complement();
            let sign = if k == Degree::One { -1.0 } else { 1.0 };
            let out = v.iter().enumerate().map(|(i, &x)| x * (sign / hodge_weight(mesh, k, i))).collect();
            Ok(Cochain::raw(k, Side::Primal, mesh.id(), out))
        }
    }
}

/// Codifferential `δ`, the adjoint of `d` under the Hodge inner product.
///
/// Computed as `M_{k-1}^{-1} Dᵀ M_k c` with `D` the coboundary and `M` the
/// diagonal Hodge weights, which is `⋆ d ⋆` on the dual complex with the sign
/// fixed by adjointness.
pub fn codifferential<T: Scalar>(mesh: &Mesh2D, c: &Cochain<T>) -> Result<Cochain<T>, DecError> {
    c.check_mesh(mesh)?;
    if c.side() != Side::Primal {
        return Err(DecError::UnsupportedComplex);
    }
    let v = c.values();
    match c.degree() {
        Degree::Zero => Err(DecError::UnsupportedDegree { op: "codifferential", degree: 0 }),
        Degree::One => {
            let mut out = vec![T::zero(); mesh.num_vertices()];
            for (e, &[a, b]) in mesh.edges().iter().enumerate() {
                let w = v[e] * hodge_weight(mesh, Degree::One, e);
                out[b] += w;
                out[a] += -w;
            }
            for (i, x) in out.iter_mut().enumerate() {
                *x = *x * (1.0 / hodge_weight(mesh, Degree::Zero, i));
            }
            Ok(Cochain::raw(Degree::Zero, Side::Primal, mesh.id(), out))
        }
        Degree::Two => {
            let mut out = vec![T::zero(); mesh.num_edges()];
            for (f, face) in mesh.faces().iter().enumerate() {
                let w = v[f] * hodge_weight(mesh, Degree::Two, f);
                for s in face {
                    out[s.edge] += if s.sign > 0 { w } else { -w };
                }
            }
            for (e, x) in out.iter_mut().enumerate() {
                *x = *x * (1.0 / hodge_weight(mesh, Degree::One, e));
            }
            Ok(Cochain::raw(Degree::One, Side::Primal, mesh.id(), out))
        }
    }
}

/// Hodge inner product `<a, b> = Σ a_i b_i dual_i / primal_i`.
pub fn inner_product(mesh: &Mesh2D, a: &Cochain<f64>, b: &Cochain<f64>) -> Result<f64, DecError> {
    a.check_compatible(b)?;
    a.expect(mesh, a.degree())?;
    let k = a.degree();
    Ok(a.values().iter().zip(b.values()).enumerate().map(|(i, (x, y))| x * y * hodge_weight(mesh, k, i)).sum())
}

/// Check that a sequence of oriented edges forms a closed, connected path.
pub fn validate_loop(mesh: &Mesh2D, lp: &EdgeLoop) -> Result<(), DecError> {
    if lp.is_empty() {
        return Err(DecError::InvalidLoop("loop is empty".into()));
    }
    for s in &lp.steps {
        if s.edge >= mesh.num_edges() || (s.sign != 1 && s.sign != -1) {
            return Err(DecError::InvalidLoop(format!("invalid step {s:?}")));
        }
    }
    for w in 0..lp.len() {
        let next = lp.steps[(w + 1) % lp.len()];
        if mesh.step_head(lp.steps[w]) != mesh.step_tail(next) {
            return Err(DecError::InvalidLoop(format!("path breaks between steps {w} and {}", (w + 1) % lp.len())));
        }
    }
    Ok(())
}

/// Orientation-signed sum of a 1-cochain around a closed loop (holonomy).
pub fn loop_sum<T: Scalar>(mesh: &Mesh2D, c: &Cochain<T>, lp: &EdgeLoop) -> Result<T, DecError> {
    c.expect(mesh, Degree::One)?;
    validate_loop(mesh, lp)?;
    Ok(signed_sum(c.values(), &lp.steps))
}

/// Boundary chain of a connected, simply connected set of faces.
///
/// Edges appear once with the orientation induced by the counterclockwise
/// face loops; interior edges cancel.
pub fn region_boundary(mesh: &Mesh2D, region: &[usize]) -> Result<Vec<OrientedEdge>, DecError> {
    if region.is_empty() {
        return Err(DecError::InvalidRegion("region is empty".into()));
    }
    let set: HashSet<usize> = region.iter().copied().collect();
    if set.len() != region.len() {
        return Err(DecError::InvalidRegion("region lists a face twice".into()));
    }
    if let Some(&f) = region.iter().find(|&&f| f >= mesh.num_faces()) {
        return Err(DecError::InvalidRegion(format!("face {f} does not exist")));
    }

    // connectivity through shared edges
    let mut seen = HashSet::from([region[0]]);
    let mut queue = VecDeque::from([region[0]]);
    while let Some(f) = queue.pop_front() {
        for s in &mesh.faces()[f] {
            for &(g, _) in mesh.edge_faces(s.edge) {
                if set.contains(&g) && seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
    }
    if seen.len() != set.len() {
        return Err(DecError::InvalidRegion("region is disconnected".into()));
    }

    let mut coeff: HashMap<usize, i32> = HashMap::new();
    let mut vertices = HashSet::new();
    for &f in region {
        for s in &mesh.faces()[f] {
            *coeff.entry(s.edge).or_default() += s.sign as i32;
            vertices.insert(mesh.step_tail(*s));
        }
    }
    let euler = vertices.len() as i64 - coeff.len() as i64 + region.len() as i64;
    if euler != 1 {
        return Err(DecError::InvalidRegion(format!("region is not simply connected (Euler characteristic {euler})")));
    }
    let mut chain: Vec<OrientedEdge> =
        coeff.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| OrientedEdge::new(e, c.signum() as i8)).collect();
    chain.sort_by_key(|s| s.edge);
    Ok(chain)
}

/// Discrete Stokes check on a face region: `(Σ_boundary c, Σ_region dc)`.
pub fn stokes_check<T: Scalar>(mesh: &Mesh2D, c: &Cochain<T>, region: &[usize]) -> Result<(T, T), DecError> {
    c.expect(mesh, Degree::One)?;
    let boundary = region_boundary(mesh, region)?;
    let lhs = signed_sum(c.values(), &boundary);
    let dc = exterior_derivative(mesh, c)?;
    let mut rhs = T::zero();
    for &f in region {
        rhs += dc.values()[f];
    }
    Ok((lhs, rhs))
}
