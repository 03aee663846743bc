//! Scalar field tags and the dense vector/matrix primitives shared by every
//! analysis module.
//!
//! Scalars are stored as [`Complex64`] regardless of field. A real vector is a
//! complex vector whose imaginary parts are identically zero; the [`Field`] tag
//! is fixed at construction and operations refuse to mix tags.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }

    fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dense coordinate vector with at least one entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    field: Field,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn real(values: impl Into<Vec<f64>>) -> Result<Self> {
        let entries = values
            .into()
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        Self::new(Field::Real, entries)
    }

    pub fn complex(values: impl Into<Vec<Scalar>>) -> Result<Self> {
        Self::new(Field::Complex, values.into())
    }

    /// Builds a vector, validating length, finiteness and (for real vectors)
    /// that every imaginary part is zero.
    pub fn new(field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if field == Field::Real && z.im != 0.0 {
                return Err(Error::ImaginaryInReal { index });
            }
        }
        Ok(Self { field, entries })
    }

    // Callers guarantee the invariants.
    pub(crate) fn from_raw(field: Field, entries: Vec<Scalar>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { field, entries }
    }

    pub fn zeros(field: Field, n: usize) -> Result<Self> {
        Self::new(field, vec![Complex64::new(0.0, 0.0); n])
    }

    /// Standard basis vector `e_index` of length `n`.
    pub fn basis(field: Field, n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: index + 1,
            });
        }
        let mut v = Self::zeros(field, n)?;
        v.entries[index] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; vectors are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    /// Real parts of the entries. For real vectors this is the whole vector.
    pub fn real_parts(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.re).collect()
    }

    /// Sum of moduli.
    pub fn norm1(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).sum()
    }

    pub fn norm2_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.norm2_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `⟨self, other⟩ = Σ selfᵢ · conj(otherᵢ)`, conjugate-linear in `other`.
    pub fn inner(&self, other: &Vector) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(dot_conj(&self.entries, &other.entries))
    }

    pub fn check_compatible(&self, other: &Vector) -> Result<()> {
        self.field.check(other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Self::from_raw(
            self.field,
            self.entries.iter().map(|z| z * factor).collect(),
        )
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_raw(self.field, entries))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::from_raw(self.field, entries))
    }

    /// `self / ‖self‖₂`, or [`Error::ZeroVector`].
    pub fn normalized(&self) -> Result<Vector> {
        let norm = self.norm2();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / norm))
    }

    pub fn distance(&self, other: &Vector) -> Result<f64> {
        Ok(self.sub(other)?.norm2())
    }
}

pub(crate) fn dot_conj(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        if field == Field::Real {
            if let Some(index) = data.iter().position(|z| z.im != 0.0) {
                return Err(Error::ImaginaryInReal { index });
            }
        }
        Ok(Self {
            rows,
            cols,
            field,
            data,
        })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self {
            rows,
            cols,
            field,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let first = columns.first().ok_or(Error::EmptyVector)?;
        let (rows, cols, field) = (first.len(), columns.len(), first.field());
        for c in columns {
            first.check_compatible(c)?;
        }
        let mut m = Self::zeros(rows, cols, field);
        for (j, c) in columns.iter().enumerate() {
            for (i, z) in c.entries().iter().enumerate() {
                m.data[i * cols + j] = *z;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vector {
        Vector::from_raw(
            self.field,
            (0..self.rows).map(|i| self.get(i, col)).collect(),
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let mut m = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        self.field.check(x.field())?;
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.entries())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(Vector::from_raw(self.field, entries))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    m.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
