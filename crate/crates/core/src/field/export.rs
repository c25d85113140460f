//! Snapshot CSV of a [`FieldState`].
//!
//! Columns, in this order: `kind,index,x,y,psi_re,psi_im,a,j_e,j_em`.
//! Vertex rows carry `psi` (empty when the state has none); edge rows carry
//! `a`, `j_e` and `j_em` at the edge midpoint. Unused columns are empty.

use std::fmt::Write as _;

use super::{FieldError, FieldState};
use crate::dec::Mesh2D;

pub const SNAPSHOT_HEADER: &str = "kind,index,x,y,psi_re,psi_im,a,j_e,j_em";

pub fn snapshot_csv(mesh: &Mesh2D, state: &FieldState) -> Result<String, FieldError> {
    state.a.check_mesh(mesh)?;
    let mut out = String::from(SNAPSHOT_HEADER);
    out.push('\n');
    for (v, p) in mesh.vertices().iter().enumerate() {
        let (re, im) = match &state.psi {
            Some(psi) => (format!("{:?}", psi.values()[v].re), format!("{:?}", psi.values()[v].im)),
            None => (String::new(), String::new()),
        };
        writeln!(out, "vertex,{v},{:?},{:?},{re},{im},,,", p[0], p[1]).unwrap();
    }
    for e in 0..mesh.num_edges() {
        let p = mesh.edge_midpoint(e);
        writeln!(
            out,
            "edge,{e},{:?},{:?},,,{:?},{:?},{:?}",
            p[0],
            p[1],
            state.a.values()[e],
            state.j_e.values()[e],
            state.j_em.values()[e]
        )
        .unwrap();
    }
    Ok(out)
}
