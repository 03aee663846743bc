//! Subspaces given by an orthonormal basis, their orthogonal projectors, and
//! the nearest unit vector of a subspace to an arbitrary point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Vector};

/// A candidate is linearly dependent when its residual after orthogonalization
/// falls below this fraction of the largest input norm.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
    projector: Matrix,
}

impl Subspace {
    /// Orthonormalizes `vectors` by modified Gram–Schmidt with one
    /// re-orthogonalization pass, dropping numerically dependent inputs.
    pub fn from_spanning_set(vectors: &[Vector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::EmptySubspace)?;
        for v in vectors {
            first.check_compatible(v)?;
        }
        let largest = vectors.iter().map(Vector::norm2).fold(0.0, f64::max);
        if largest == 0.0 {
            return Err(Error::EmptySubspace);
        }
        let threshold = RANK_TOL * largest;
        let mut basis: Vec<Vector> = Vec::new();
        for v in vectors {
            let mut w = v.clone();
            for _ in 0..2 {
                for q in &basis {
                    let coeff = w.inner(q)?;
                    w = w.sub(&scaled(q, coeff))?;
                }
            }
            let norm = w.norm2();
            if norm >= threshold {
                basis.push(w.scale(1.0 / norm));
            }
            if basis.len() == first.len() {
                break;
            }
        }
        Ok(Self::from_orthonormal(basis))
    }

    /// The whole space `𝔽ⁿ`.
    pub fn full(field: Field, n: usize) -> Result<Self> {
        let basis = (0..n)
            .map(|i| Vector::basis(field, n, i))
            .collect::<Result<Vec<_>>>()?;
        if basis.is_empty() {
            return Err(Error::EmptySubspace);
        }
        Ok(Self::from_orthonormal(basis))
    }

    /// Span of the standard basis vectors `e_i`, `i ∈ indices` (0-based).
    pub fn coordinate(field: Field, n: usize, indices: &[usize]) -> Result<Self> {
        let vectors = indices
            .iter()
            .map(|&i| Vector::basis(field, n, i))
            .collect::<Result<Vec<_>>>()?;
        Self::from_spanning_set(&vectors)
    }

    fn from_orthonormal(basis: Vec<Vector>) -> Self {
        let field = basis[0].field();
        let n = basis[0].len();
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for u in &basis {
            let e = u.entries();
            for i in 0..n {
                for j in 0..n {
                    data[i * n + j] += e[i] * e[j].conj();
                }
            }
        }
        let projector = Matrix::from_raw(n, n, field, data);
        Self {
            field,
            ambient_dim: n,
            basis,
            projector,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis vectors.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// `n × s` matrix `B` with the basis as columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis).expect("basis is nonempty and homogeneous")
    }

    /// `P = B B*`.
    pub fn projector(&self) -> &Matrix {
        &self.projector
    }

    /// `Px = Σₖ ⟨x, uₖ⟩ uₖ` over the orthonormal basis.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        let mut acc = Vector::zeros(self.field, self.ambient_dim)?;
        for u in &self.basis {
            let coeff = x.inner(u)?;
            acc = acc.add(&scaled(u, coeff))?;
        }
        Ok(acc)
    }

    /// `Peᵢ`, the `i`-th column of the projector.
    pub fn projected_basis_vector(&self, i: usize) -> Vector {
        self.projector.column(i)
    }

    /// `Px/‖Px‖`, the closest unit vector of the subspace to `x`, and its distance to `x`.
    pub fn nearest_unit(&self, x: &Vector) -> Result<(Vector, f64)> {
        let px = self.project(x)?;
        if px.norm2() <= f64::EPSILON * x.norm2() || px.is_zero() {
            return Err(Error::OrthogonalToSubspace);
        }
        let u = px.normalized()?;
        let distance = x.distance(&u)?;
        Ok((u, distance))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        let px = self.project(x)?;
        Ok(px.distance(x)? <= tol * x.norm2().max(f64::MIN_POSITIVE))
    }
}

fn scaled(v: &Vector, factor: Complex64) -> Vector {
    Vector::from_raw(v.field(), v.entries().iter().map(|z| z * factor).collect())
}

/// Free-function form of [`Subspace::nearest_unit`].
pub fn nearest_unit_in_subspace(s: &Subspace, x: &Vector) -> Result<(Vector, f64)> {
    s.nearest_unit(x)
}
