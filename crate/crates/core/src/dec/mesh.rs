//! Rectangular 2D cell complexes with optional holes.
//!
//! Every face is an axis-aligned rectangle whose boundary loop runs
//! counterclockwise. Edges carry an intrinsic orientation given by the order
//! of their vertex pair; the grid builder orients horizontal edges along +x and
//! vertical edges along +y. Hole loops run counterclockwise around the removed
//! region, so the face adjacent to a hole edge traverses it in the opposite
//! direction.
//!
//! Dual volumes follow the circumcentric construction, which on rectangles
//! reduces to quarter-face areas for vertices and half perpendicular extents
//! for edges. A face's dual cell is a point with unit measure.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::DecError;

static NEXT_MESH_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a mesh. Cochains remember the id of the mesh they live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeshId(u64);

impl MeshId {
    fn fresh() -> Self {
        MeshId(NEXT_MESH_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// An edge traversed with a sign: `+1` along its intrinsic orientation, `-1` against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    pub edge: usize,
    pub sign: i8,
}

impl OrientedEdge {
    pub fn new(edge: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        OrientedEdge { edge, sign }
    }

    pub fn forward(edge: usize) -> Self {
        OrientedEdge { edge, sign: 1 }
    }

    pub fn backward(edge: usize) -> Self {
        OrientedEdge { edge, sign: -1 }
    }

    pub fn reversed(self) -> Self {
        OrientedEdge { edge: self.edge, sign: -self.sign }
    }
}

/// A closed path of oriented edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLoop {
    pub steps: Vec<OrientedEdge>,
}

impl EdgeLoop {
    pub fn new(steps: Vec<OrientedEdge>) -> Self {
        EdgeLoop { steps }
    }

    pub fn reversed(&self) -> Self {
        EdgeLoop { steps: self.steps.iter().rev().map(|s| s.reversed()).collect() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Which side of the bounding box a boundary edge sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundarySide {
    Left,
    Right,
    Bottom,
    Top,
    /// Boundary edge on the rim of a hole.
    Hole,
}

/// The four sides of a rectangular face, each expressed relative to the
/// positive axis direction (`sign = +1` when the edge points along +x or +y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceFrame {
    pub bottom: OrientedEdge,
    pub right: OrientedEdge,
    pub top: OrientedEdge,
    pub left: OrientedEdge,
}

/// Rectangular block of removed cells, `[i0, i1) x [j0, j1)` in cell indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CellRect {
    pub i0: usize,
    pub j0: usize,
    pub i1: usize,
    pub j1: usize,
}

impl CellRect {
    pub fn new(i0: usize, j0: usize, i1: usize, j1: usize) -> Self {
        CellRect { i0, j0, i1, j1 }
    }

    fn contains(&self, i: usize, j: usize) -> bool {
        i >= self.i0 && i < self.i1 && j >= self.j0 && j < self.j1
    }
}

/// Parameters of a uniform rectangular grid, possibly with rectangular holes.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    #[serde(default)]
    pub origin: [f64; 2],
    #[serde(default)]
    pub holes: Vec<CellRect>,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Self {
        GridSpec { nx, ny, lx, ly, origin: [0.0, 0.0], holes: Vec::new() }
    }

    pub fn with_hole(mut self, hole: CellRect) -> Self {
        self.holes.push(hole);
        self
    }

    pub fn hx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        self.ly / self.ny as f64
    }
}

/// Grid bookkeeping retained by meshes built from a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridInfo {
    pub spec: GridSpec,
    face_of_cell: Vec<Option<usize>>,
}

impl GridInfo {
    pub fn face_at(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.spec.nx || j >= self.spec.ny {
            return None;
        }
        self.face_of_cell[j * self.spec.nx + i]
    }
}

#[derive(Debug, Clone)]
pub struct Mesh2D {
    id: MeshId,
    vertices: Vec<[f64; 2]>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<OrientedEdge>>,
    hole_loops: Vec<EdgeLoop>,
    // derived
    edge_faces: Vec<Vec<(usize, i8)>>,
    boundary_edges: Vec<bool>,
    frames: Vec<FaceFrame>,
    edge_length: Vec<f64>,
    face_area: Vec<f64>,
    vertex_dual_area: Vec<f64>,
    edge_dual_length: Vec<f64>,
    bbox: [f64; 4],
    grid: Option<GridInfo>,
}

impl PartialEq for Mesh2D {
    /// Structural equality; the identity is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.faces == other.faces
            && self.hole_loops == other.hole_loops
    }
}

impl Mesh2D {
    /// Uniform grid without holes.
    pub fn grid(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self, DecError> {
        Self::from_grid(&GridSpec::new(nx, ny, lx, ly))
    }

    pub fn from_grid(spec: &GridSpec) -> Result<Self, DecError> {
        let (nx, ny) = (spec.nx, spec.ny);
        if nx == 0 || ny == 0 {
            return Err(DecError::InvalidMesh(format!("grid must have at least one cell, got {nx}x{ny}")));
        }
        if !(spec.lx > 0.0 && spec.ly > 0.0 && spec.lx.is_finite() && spec.ly.is_finite()) {
            return Err(DecError::InvalidMesh(format!(
                "grid extents must be positive and finite, got {}x{}",
                spec.lx, spec.ly
            )));
        }
        for (k, h) in spec.holes.iter().enumerate() {
            if h.i0 == 0 || h.j0 == 0 || h.i1 >= nx || h.j1 >= ny || h.i0 >= h.i1 || h.j0 >= h.j1 {
                return Err(DecError::InvalidMesh(format!(
                    "hole {k} ({h:?}) must be a nonempty block strictly inside the {nx}x{ny} grid"
                )));
            }
            for (m, g) in spec.holes.iter().enumerate().skip(k + 1) {
                // Holes must keep at least one ring of cells between them.
                let apart = h.i1 < g.i0 || g.i1 < h.i0 || h.j1 < g.j0 || g.j1 < h.j0;
                if !apart {
                    return Err(DecError::InvalidMesh(format!("holes {k} and {m} touch or overlap")));
                }
            }
        }

        let (hx, hy) = (spec.hx(), spec.hy());
        let [ox, oy] = spec.origin;
        let vid = |i: usize, j: usize| j * (nx + 1) + i;
        // Horizontal edges first, then vertical.
        let n_horizontal = nx * (ny + 1);
        let hid = |i: usize, j: usize| j * nx + i;
        let vert_id = |i: usize, j: usize| n_horizontal + j * (nx + 1) + i;

        let active = |i: usize, j: usize| !spec.holes.iter().any(|h| h.contains(i, j));

        let all_vertices: Vec<[f64; 2]> =
            (0..=ny).flat_map(|j| (0..=nx).map(move |i| [ox + i as f64 * hx, oy + j as f64 * hy])).collect();
        let mut all_edges: Vec<[usize; 2]> = Vec::with_capacity(n_horizontal + (nx + 1) * ny);
        for j in 0..=ny {
            for i in 0..nx {
                all_edges.push([vid(i, j), vid(i + 1, j)]);
            }
        }
        for j in 0..ny {
            for i in 0..=nx {
                all_edges.push([vid(i, j), vid(i, j + 1)]);
            }
        }

        let mut raw_faces = Vec::new();
        let mut cells = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if active(i, j) {
                    raw_faces.push(vec![
                        OrientedEdge::forward(hid(i, j)),
                        OrientedEdge::forward(vert_id(i + 1, j)),
                        OrientedEdge::backward(hid(i, j + 1)),
                        OrientedEdge::backward(vert_id(i, j)),
                    ]);
                    cells.push((i, j));
                }
            }
        }

        let raw_holes: Vec<Vec<OrientedEdge>> = spec
            .holes
            .iter()
            .map(|h| {
                let mut steps = Vec::new();
                for i in h.i0..h.i1 {
                    steps.push(OrientedEdge::forward(hid(i, h.j0)));
                }
                for j in h.j0..h.j1 {
                    steps.push(OrientedEdge::forward(vert_id(h.i1, j)));
                }
                for i in (h.i0..h.i1).rev() {
                    steps.push(OrientedEdge::backward(hid(i, h.j1)));
                }
                for j in (h.j0..h.j1).rev() {
                    steps.push(OrientedEdge::backward(vert_id(h.i0, j)));
                }
                steps
            })
            .collect();

        // Compact away vertices and edges not touched by any face.
        let mut edge_map = vec![usize::MAX; all_edges.len()];
        let mut vertex_map = vec![usize::MAX; all_vertices.len()];
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        for face in &raw_faces {
            for s in face {
                if edge_map[s.edge] == usize::MAX {
                    let [a, b] = all_edges[s.edge];
                    for v in [a, b] {
                        if vertex_map[v] == usize::MAX {
                            vertex_map[v] = vertices.len();
                            vertices.push(all_vertices[v]);
                        }
                    }
                    edge_map[s.edge] = edges.len();
                    edges.push([vertex_map[a], vertex_map[b]]);
                }
            }
        }
        let remap = |steps: &[OrientedEdge]| -> Vec<OrientedEdge> {
            steps.iter().map(|s| OrientedEdge::new(edge_map[s.edge], s.sign)).collect()
        };
        let faces: Vec<_> = raw_faces.iter().map(|f| remap(f)).collect();
        let holes: Vec<_> = raw_holes.iter().map(|h| EdgeLoop::new(remap(h))).collect();

        let mut mesh = Self::from_parts(vertices, edges, faces, holes)?;
        let mut face_of_cell = vec![None; nx * ny];
        for (f, (i, j)) in cells.into_iter().enumerate() {
            face_of_cell[j * nx + i] = Some(f);
        }
        mesh.grid = Some(GridInfo { spec: spec.clone(), face_of_cell });
        Ok(mesh)
    }

    /// Assemble and validate a mesh from explicit cell lists.
    pub fn from_parts(
        vertices: Vec<[f64; 2]>,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<OrientedEdge>>,
        hole_loops: Vec<EdgeLoop>,
    ) -> Result<Self, DecError> {
        let invalid = |msg: String| Err(DecError::InvalidMesh(msg));
        if faces.is_empty() {
            return invalid("mesh has no faces".into());
        }
        for (k, v) in vertices.iter().enumerate() {
            if !(v[0].is_finite() && v[1].is_finite()) {
                return invalid(format!("vertex {k} has non-finite coordinates"));
            }
        }
        let mut edge_length = Vec::with_capacity(edges.len());
        for (k, &[a, b]) in edges.iter().enumerate() {
            if a >= vertices.len() || b >= vertices.len() || a == b {
                return invalid(format!("edge {k} has invalid endpoints ({a}, {b})"));
            }
            let (pa, pb) = (vertices[a], vertices[b]);
            let (dx, dy) = (pb[0] - pa[0], pb[1] - pa[1]);
            if dx != 0.0 && dy != 0.0 {
                return invalid(format!("edge {k} is not axis-aligned"));
            }
            edge_length.push(dx.abs() + dy.abs());
        }

        let tail = |s: &OrientedEdge| if s.sign > 0 { edges[s.edge][0] } else { edges[s.edge][1] };
        let head = |s: &OrientedEdge| if s.sign > 0 { edges[s.edge][1] } else { edges[s.edge][0] };
        let check_closed = |steps: &[OrientedEdge], what: &str| -> Result<(), DecError> {
            if steps.is_empty() {
                return Err(DecError::InvalidMesh(format!("{what} is empty")));
            }
            for s in steps {
                if s.edge >= edges.len() || (s.sign != 1 && s.sign != -1) {
                    return Err(DecError::InvalidMesh(format!("{what} references invalid edge step {s:?}")));
                }
            }
            for w in 0..steps.len() {
                let next = &steps[(w + 1) % steps.len()];
                if head(&steps[w]) != tail(next) {
                    return Err(DecError::InvalidMesh(format!("{what} is not a closed edge loop")));
                }
            }
            Ok(())
        };

        let mut edge_faces: Vec<Vec<(usize, i8)>> = vec![Vec::new(); edges.len()];
        let mut frames = Vec::with_capacity(faces.len());
        let mut face_area = Vec::with_capacity(faces.len());
        let mut vertex_dual_area = vec![0.0; vertices.len()];
        let mut edge_dual_length = vec![0.0; edges.len()];
        for (f, face) in faces.iter().enumerate() {
            let what = format!("face {f}");
            check_closed(face, &what)?;
            if face.len() != 4 {
                return invalid(format!("{what} has {} edges; only rectangles are supported", face.len()));
            }
            let corners: Vec<[f64; 2]> = face.iter().map(|s| vertices[tail(s)]).collect();
            let xmin = corners.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let xmax = corners.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            let ymin = corners.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
            let ymax = corners.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
            let (w, h) = (xmax - xmin, ymax - ymin);
            if !(w > 0.0 && h > 0.0) {
                return invalid(format!("{what} is degenerate"));
            }
            // Shoelace area, positive for counterclockwise loops.
            let signed: f64 = (0..4)
                .map(|k| {
                    let (p, q) = (corners[k], corners[(k + 1) % 4]);
                    p[0] * q[1] - q[0] * p[1]
                })
                .sum::<f64>()
                / 2.0;
            if signed <= 0.0 {
                return invalid(format!("{what} is not counterclockwise"));
            }
            let mut frame = [None; 4];
            for s in face {
                let [a, b] = edges[s.edge];
                let (pa, pb) = (vertices[a], vertices[b]);
                let horizontal = pa[1] == pb[1];
                let along_axis: i8 = if horizontal {
                    if pb[0] > pa[0] {
                        1
                    } else {
                        -1
                    }
                } else if pb[1] > pa[1] {
                    1
                } else {
                    -1
                };
                let oe = OrientedEdge::new(s.edge, along_axis);
                let slot = if horizontal {
                    if pa[1] == ymin {
                        0
                    } else {
                        2
                    }
                } else if pa[0] == xmax {
                    1
                } else {
                    3
                };
                if frame[slot].replace(oe).is_some() {
                    return invalid(format!("{what} is not an axis-aligned rectangle"));
                }
                edge_faces[s.edge].push((f, s.sign));
                edge_dual_length[s.edge] += if horizontal { h / 2.0 } else { w / 2.0 };
            }
            let [Some(bottom), Some(right), Some(top), Some(left)] = frame else {
                return invalid(format!("{what} is not an axis-aligned rectangle"));
            };
            frames.push(FaceFrame { bottom, right, top, left });
            let area = w * h;
            face_area.push(area);
            for s in face {
                vertex_dual_area[tail(s)] += area / 4.0;
            }
        }

        let mut boundary_edges = vec![false; edges.len()];
        for (e, adj) in edge_faces.iter().enumerate() {
            match adj.as_slice() {
                [] => return invalid(format!("edge {e} belongs to no face")),
                [_] => boundary_edges[e] = true,
                [(_, s1), (_, s2)] => {
                    if s1 == s2 {
                        return invalid(format!("faces sharing edge {e} are inconsistently oriented"));
                    }
                }
                _ => return invalid(format!("edge {e} belongs to more than two faces")),
            }
        }
        if let Some(v) = vertex_dual_area.iter().position(|&a| a <= 0.0) {
            return invalid(format!("vertex {v} belongs to no face"));
        }

        let mut hole_vertices: HashMap<usize, usize> = HashMap::new();
        for (k, hole) in hole_loops.iter().enumerate() {
            let what = format!("hole loop {k}");
            check_closed(&hole.steps, &what)?;
            for s in &hole.steps {
                let adj = &edge_faces[s.edge];
                // The ring face must lie outside the hole: it traverses the edge
                // against the hole loop's direction.
                if adj.len() != 1 || adj[0].1 != -s.sign {
                    return invalid(format!("{what} bounds a face of the mesh or uses interior edge {}", s.edge));
                }
                let v = tail(s);
                if let Some(prev) = hole_vertices.insert(v, k) {
                    if prev != k {
                        return invalid(format!("hole loops {prev} and {k} share vertex {v}"));
                    }
                    return invalid(format!("{what} visits vertex {v} twice"));
                }
            }
        }

        let mut bbox = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in &vertices {
            bbox[0] = bbox[0].min(p[0]);
            bbox[1] = bbox[1].min(p[1]);
            bbox[2] = bbox[2].max(p[0]);
            bbox[3] = bbox[3].max(p[1]);
        }

        Ok(Mesh2D {
            id: MeshId::fresh(),
            vertices,
            edges,
            faces,
            hole_loops,
            edge_faces,
            boundary_edges,
            frames,
            edge_length,
            face_area,
            vertex_dual_area,
            edge_dual_length,
            bbox,
            grid: None,
        })
    }

    pub fn id(&self) -> MeshId {
        self.id
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Number of cells of the given degree.
    pub fn cell_count(&self, degree: super::Degree) -> usize {
        match degree {
            super::Degree::Zero => self.num_vertices(),
            super::Degree::One => self.num_edges(),
            super::Degree::Two => self.num_faces(),
        }
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<OrientedEdge>] {
        &self.faces
    }

    pub fn face_frame(&self, f: usize) -> &FaceFrame {
        &self.frames[f]
    }

    pub fn hole_loops(&self) -> &[EdgeLoop] {
        &self.hole_loops
    }

    pub fn grid_info(&self) -> Option<&GridInfo> {
        self.grid.as_ref()
    }

    /// Faces adjacent to an edge, with the sign each face traverses it.
    pub fn edge_faces(&self, e: usize) -> &[(usize, i8)] {
        &self.edge_faces[e]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edges[e]
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.boundary_edges[e])
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edge_length[e]
    }

    pub fn face_area(&self, f: usize) -> f64 {
        self.face_area[f]
    }

    pub fn vertex_dual_area(&self, v: usize) -> f64 {
        self.vertex_dual_area[v]
    }

    pub fn edge_dual_length(&self, e: usize) -> f64 {
        self.edge_dual_length[e]
    }

    /// Primal measure of a cell: 1 for vertices, length for edges, area for faces.
    pub fn primal_volume(&self, degree: super::Degree, i: usize) -> f64 {
        match degree {
            super::Degree::Zero => 1.0,
            super::Degree::One => self.edge_length[i],
            super::Degree::Two => self.face_area[i],
        }
    }

    /// Measure of the dual cell: area for vertices, length for edges, 1 for faces.
    pub fn dual_volume(&self, degree: super::Degree, i: usize) -> f64 {
        match degree {
            super::Degree::Zero => self.vertex_dual_area[i],
            super::Degree::One => self.edge_dual_length[i],
            super::Degree::Two => 1.0,
        }
    }

    pub fn is_horizontal(&self, e: usize) -> bool {
        let [a, b] = self.edges[e];
        self.vertices[a][1] == self.vertices[b][1]
    }

    pub fn edge_midpoint(&self, e: usize) -> [f64; 2] {
        let [a, b] = self.edges[e];
        let (p, q) = (self.vertices[a], self.vertices[b]);
        [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0]
    }

    pub fn face_center(&self, f: usize) -> [f64; 2] {
        let fr = &self.frames[f];
        let b = self.edge_midpoint(fr.bottom.edge);
        let l = self.edge_midpoint(fr.left.edge);
        [b[0], l[1]]
    }

    /// Vertex where an oriented step starts.
    pub fn step_tail(&self, s: OrientedEdge) -> usize {
        let [a, b] = self.edges[s.edge];
        if s.sign > 0 {
            a
        } else {
            b
        }
    }

    pub fn step_head(&self, s: OrientedEdge) -> usize {
        let [a, b] = self.edges[s.edge];
        if s.sign > 0 {
            b
        } else {
            a
        }
    }

    /// Corner vertices of a face in loop order.
    pub fn face_vertices(&self, f: usize) -> [usize; 4] {
        let face = &self.faces[f];
        [self.step_tail(face[0]), self.step_tail(face[1]), self.step_tail(face[2]), self.step_tail(face[3])]
    }

    /// `[xmin, ymin, xmax, ymax]`.
    pub fn bounding_box(&self) -> [f64; 4] {
        self.bbox
    }

    /// Classify a boundary edge by the side of the bounding box it lies on.
    pub fn boundary_side(&self, e: usize) -> Option<BoundarySide> {
        if !self.boundary_edges[e] {
            return None;
        }
        let [xmin, ymin, xmax, ymax] = self.bbox;
        let m = self.edge_midpoint(e);
        let side = if self.is_horizontal(e) {
            if m[1] == ymin {
                BoundarySide::Bottom
            } else if m[1] == ymax {
                BoundarySide::Top
            } else {
                BoundarySide::Hole
            }
        } else if m[0] == xmin {
            BoundarySide::Left
        } else if m[0] == xmax {
            BoundarySide::Right
        } else {
            BoundarySide::Hole
        };
        Some(side)
    }

    /// Look up the edge joining two vertices, in either direction.
    pub fn find_edge(&self, a: usize, b: usize) -> Option<OrientedEdge> {
        self.edges.iter().enumerate().find_map(|(e, &[p, q])| {
            if p == a && q == b {
                Some(OrientedEdge::forward(e))
            } else if p == b && q == a {
                Some(OrientedEdge::backward(e))
            } else {
                None
            }
        })
    }

    /// Build an edge loop from a cyclic vertex sequence (the first vertex is
    /// not repeated at the end).
    pub fn loop_through(&self, vertices: &[usize]) -> Result<EdgeLoop, DecError> {
        if vertices.len() < 2 {
            return Err(DecError::InvalidLoop("a loop needs at least two vertices".into()));
        }
        let mut steps = Vec::with_capacity(vertices.len());
        for k in 0..vertices.len() {
            let (a, b) = (vertices[k], vertices[(k + 1) % vertices.len()]);
            let step = self
                .find_edge(a, b)
                .ok_or_else(|| DecError::InvalidLoop(format!("no edge joins vertices {a} and {b}")))?;
            steps.push(step);
        }
        Ok(EdgeLoop::new(steps))
    }

    /// Counterclockwise loop along the boundary of a block of grid cells
    /// `[i0, i1) x [j0, j1)`. Requires grid bookkeeping.
    pub fn rectangle_loop(&self, rect: CellRect) -> Result<EdgeLoop, DecError> {
        let grid =
            self.grid.as_ref().ok_or_else(|| DecError::InvalidLoop("mesh carries no grid bookkeeping".into()))?;
        let spec = &grid.spec;
        if rect.i0 >= rect.i1 || rect.j0 >= rect.j1 || rect.i1 > spec.nx || rect.j1 > spec.ny {
            return Err(DecError::InvalidLoop(format!("rectangle {rect:?} lies outside the grid")));
        }
        let (hx, hy) = (spec.hx(), spec.hy());
        let [ox, oy] = spec.origin;
        let mut corner_ids = HashMap::new();
        for (v, p) in self.vertices.iter().enumerate() {
            let i = ((p[0] - ox) / hx).round() as usize;
            let j = ((p[1] - oy) / hy).round() as usize;
            corner_ids.insert((i, j), v);
        }
        let mut path = Vec::new();
        for i in rect.i0..rect.i1 {
            path.push((i, rect.j0));
        }
        for j in rect.j0..rect.j1 {
            path.push((rect.i1, j));
        }
        for i in (rect.i0 + 1..=rect.i1).rev() {
            path.push((i, rect.j1));
        }
        for j in (rect.j0 + 1..=rect.j1).rev() {
            path.push((rect.i0, j));
        }
        let ids = path
            .iter()
            .map(|c| {
                corner_ids
                    .get(c)
                    .copied()
                    .ok_or_else(|| DecError::InvalidLoop(format!("grid vertex {c:?} is not part of the mesh")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.loop_through(&ids)
    }
}
