//! CSV and JSON-lines export of a [`MeissnerSolution`].

use std::fmt::Write as _;

use super::MeissnerSolution;
use crate::dec::Mesh2D;

/// `face,x,y,b` with `b` the pointwise field.
pub fn field_csv(mesh: &Mesh2D, solution: &MeissnerSolution) -> String {
    let mut out = String::from("face,x,y,b\n");
    for (f, b) in solution.field(mesh).iter().enumerate() {
        let c = mesh.face_center(f);
        writeln!(out, "{f},{:?},{:?},{b:?}", c[0], c[1]).unwrap();
    }
    out
}

/// `edge,x,y,j` with `j` the edge-integrated current at the edge midpoint.
pub fn current_csv(mesh: &Mesh2D, solution: &MeissnerSolution) -> String {
    let mut out = String::from("edge,x,y,j\n");
    for (e, j) in solution.j_e.values().iter().enumerate() {
        let p = mesh.edge_midpoint(e);
        writeln!(out, "{e},{:?},{:?},{j:?}", p[0], p[1]).unwrap();
    }
    out
}

/// One `{"iteration":k,"residual":r}` object per line.
pub fn convergence_jsonl(solution: &MeissnerSolution) -> String {
    let mut out = String::new();
    for (k, r) in solution.residual_history.iter().enumerate() {
        out.push_str(&serde_json::json!({ "iteration": k, "residual": r }).to_string());
        out.push('\n');
    }
    out
}
