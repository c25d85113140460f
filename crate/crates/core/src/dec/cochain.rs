use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::{DecError, Degree, Mesh2D, MeshId};

/// Values a cochain can carry.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + AddAssign
    + Send
    + Sync
    + 'static
{
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Whether a cochain lives on primal cells or on their duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

/// A discrete k-form: one value per k-cell of a mesh.
///
/// Dual cochains of degree `k` are indexed by the primal `(2-k)`-cells whose
/// duals they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain<T: Scalar = f64> {
    degree: Degree,
    side: Side,
    mesh: MeshId,
    values: Vec<T>,
}

impl<T: Scalar> Cochain<T> {
    pub fn zeros(mesh: &Mesh2D, degree: Degree) -> Self {
        Cochain { degree, side: Side::Primal, mesh: mesh.id(), values: vec![T::zero(); mesh.cell_count(degree)] }
    }

    pub fn from_values(mesh: &Mesh2D, degree: Degree, values: Vec<T>) -> Result<Self, DecError> {
        let expected = mesh.cell_count(degree);
        if values.len() != expected {
            return Err(DecError::LengthMismatch { degree: degree.k(), expected, got: values.len() });
        }
        Ok(Cochain { degree, side: Side::Primal, mesh: mesh.id(), values })
    }

    pub fn from_fn(mesh: &Mesh2D, degree: Degree, f: impl FnMut(usize) -> T) -> Self {
        Cochain { degree, side: Side::Primal, mesh: mesh.id(), values: (0..mesh.cell_count(degree)).map(f).collect() }
    }

    pub(crate) fn raw(degree: Degree, side: Side, mesh: MeshId, values: Vec<T>) -> Self {
        Cochain { degree, side, mesh, values }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn mesh_id(&self) -> MeshId {
        self.mesh
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Cochain { values: self.values.iter().map(|&v| f(v)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    /// Componentwise `a*self + b*other`.
    pub fn lincomb(&self, a: f64, other: &Self, b: f64) -> Result<Self, DecError> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| x * a + y * b).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self, DecError> {
        self.lincomb(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DecError> {
        self.lincomb(1.0, other, -1.0)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), DecError> {
        if self.mesh != other.mesh {
            return Err(DecError::MeshMismatch);
        }
        if self.degree != other.degree || self.side != other.side {
            return Err(DecError::DegreeMismatch { expected: self.degree.k(), got: other.degree.k() });
        }
        Ok(())
    }

    pub fn check_mesh(&self, mesh: &Mesh2D) -> Result<(), DecError> {
        if self.mesh != mesh.id() {
            return Err(DecError::MeshMismatch);
        }
        Ok(())
    }

    pub(crate) fn expect(&self, mesh: &Mesh2D, degree: Degree) -> Result<(), DecError> {
        self.check_mesh(mesh)?;
        if self.degree != degree {
            return Err(DecError::DegreeMismatch { expected: degree.k(), got: self.degree.k() });
        }
        if self.side != Side::Primal {
            return Err(DecError::UnsupportedComplex);
        }
        Ok(())
    }
}

impl Cochain<f64> {
    pub fn to_complex(&self) -> Cochain<Complex64> {
        Cochain::raw(self.degree, self.side, self.mesh, self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }
}
