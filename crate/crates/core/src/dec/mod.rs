//! Discrete exterior calculus on rectangular cell complexes.
//!
//! Forms are [`Cochain`]s over a [`Mesh2D`]: 0-forms on vertices, 1-forms on
//! edges (edge-integrated values), 2-forms on faces (face-integrated values).
//! Time is never a mesh dimension; space-time fields are stacks of spatial
//! slices.
//!
//! Multivalued phases are always carried as 1-cochains of increments, never as
//! a global 0-cochain, so holonomy around holes survives.

mod cochain;
mod io;
mod mesh;
mod ops;

pub use cochain::{Cochain, Scalar, Side};
pub use io::{read_mesh, write_mesh};
pub use mesh::{BoundarySide, CellRect, EdgeLoop, FaceFrame, GridInfo, GridSpec, Mesh2D, MeshId, OrientedEdge};
pub use ops::{
    codifferential, exterior_derivative, hodge_star, hodge_weight, incidence, inner_product, loop_sum, region_boundary,
    stokes_check, validate_loop,
};

use thiserror::Error;

/// Form degree on a 2D complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Zero,
    One,
    Two,
}

impl Degree {
    pub fn k(self) -> usize {
        match self {
            Degree::Zero => 0,
            Degree::One => 1,
            Degree::Two => 2,
        }
    }

    pub fn from_k(k: usize) -> Option<Self> {
        match k {
            0 => Some(Degree::Zero),
            1 => Some(Degree::One),
            2 => Some(Degree::Two),
            _ => None,
        }
    }

    /// `2 - k`.
    pub fn complement(self) -> Self {
        match self {
            Degree::Zero => Degree::Two,
            Degree::One => Degree::One,
            Degree::Two => Degree::Zero,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecError {
    #[error("{op} is not defined on degree-{degree} cochains")]
    UnsupportedDegree { op: &'static str, degree: usize },
    #[error("operation requires a primal cochain")]
    UnsupportedComplex,
    #[error("cochains belong to different meshes")]
    MeshMismatch,
    #[error("expected a degree-{expected} cochain, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree-{degree} cochain needs {expected} values, got {got}")]
    LengthMismatch { degree: usize, expected: usize, got: usize },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("mesh text line {line}: {message}")]
    Parse { line: usize, message: String },
}
