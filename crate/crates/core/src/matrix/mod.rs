//! Dense complex matrices.
//!
//! [`ComplexMatrix`] is the carrier for operators, Choi matrices and
//! superoperator (natural) matrices alike. Storage is row-major.
//!
//! # Reshaping conventions
//!
//! Two reshapings between matrices and column vectors are used throughout the
//! crate, and every reshape names the one it uses:
//!
//! * [`ComplexMatrix::vec`] / [`ComplexMatrix::unvec`] are **row-major**:
//!   `vec(a)[i * cols + j] = a[i, j]`. Natural matrices of linear maps are
//!   defined with this convention, so `vec(Φ(A)) = N · vec(A)`.
//! * [`ComplexMatrix::vec_cols`] / [`ComplexMatrix::unvec_cols`] are
//!   **column-major**: block `i` of the vector is column `i` of the matrix.
//!   The entangled vector `Σ_i |i⟩ ⊗ K|i⟩` unvecs to `K` under `unvec_cols`.

mod spectral;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Which tensor factor [`ComplexMatrix::partial_trace`] removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix shape must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from real row slices. Handy for literals in tests.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    /// Column vector with the given entries.
    pub fn column(entries: &[C64]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| entries[i])
    }

    /// The matrix unit `|i⟩⟨j|` of size `rows x cols`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = ONE;
        m
    }

    /// `|u⟩⟨v|` for column vectors given as slices.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[C64]) {
        assert_eq!(values.len(), self.rows);
        for (i, v) in values.iter().enumerate() {
            self[(i, j)] = *v;
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Plain transpose, with respect to the computational basis.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product with a plain slice.
    pub fn apply_to(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "shapes differ: {:?} vs {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// `self += s * rhs`, in place.
    pub fn axpy(&mut self, s: C64, rhs: &Self) {
        assert_eq!(self.shape(), rhs.shape(), "axpy shape mismatch");
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a += s * b;
        }
    }

    /// Kronecker product. Block `(i, j)` of the result is `self[i, j] * b`.
    pub fn kron(&self, b: &Self) -> Self {
        let mut out = Self::zeros(self.rows * b.rows, self.cols * b.cols);
        out.add_kron(ONE, self, b);
        out
    }

    /// `self += s * (a ⊗ b)`, skipping zero entries of `a`.
    pub fn add_kron(&mut self, s: C64, a: &Self, b: &Self) {
        assert_eq!(
            self.shape(),
            (a.rows * b.rows, a.cols * b.cols),
            "add_kron shape mismatch"
        );
        let out_cols = self.cols;
        for i in 0..a.rows {
            for j in 0..a.cols {
                let coef = a[(i, j)];
                if coef == ZERO {
                    continue;
                }
                let coef = coef * s;
                for k in 0..b.rows {
                    let base = (i * b.rows + k) * out_cols + j * b.cols;
                    let out_row = &mut self.data[base..base + b.cols];
                    let b_row = &b.data[k * b.cols..(k + 1) * b.cols];
                    for (o, &x) in out_row.iter_mut().zip(b_row) {
                        *o += coef * x;
                    }
                }
            }
        }
    }

    /// Traces out one factor of `x ∈ B(C^dim1 ⊗ C^dim2)`.
    ///
    /// `Factor::First` returns `Σ_k (⟨k| ⊗ I) x (|k⟩ ⊗ I)`, a `dim2 x dim2`
    /// matrix; `Factor::Second` returns the `dim1 x dim1` marginal.
    pub fn partial_trace(&self, dim1: usize, dim2: usize, which: Factor) -> Result<Self> {
        let n = dim1 * dim2;
        if self.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "partial trace over {dim1}x{dim2} needs a {n}x{n} matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(match which {
            Factor::First => Self::from_fn(dim2, dim2, |k, l| {
                (0..dim1).map(|i| self[(i * dim2 + k, i * dim2 + l)]).sum()
            }),
            Factor::Second => Self::from_fn(dim1, dim1, |i, j| {
                (0..dim2).map(|k| self[(i * dim2 + k, j * dim2 + k)]).sum()
            }),
        })
    }

    /// Row-major vectorization: `vec(a)[i * cols + j] = a[i, j]`.
    pub fn vec(&self) -> Self {
        Self {
            rows: self.rows * self.cols,
            cols: 1,
            data: self.data.clone(),
        }
    }

    /// Inverse of [`vec`](Self::vec).
    pub fn unvec(v: &[C64], rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, v.to_vec())
    }

    /// Column-major vectorization: block `j` of the result is column `j`.
    pub fn vec_cols(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self[(i, j)]));
        }
        Self {
            rows: self.rows * self.cols,
            cols: 1,
            data,
        }
    }

    /// Inverse of [`vec_cols`](Self::vec_cols): `K[k, i] = v[i * rows + k]`.
    ///
    /// `unvec_cols(Σ_i |i⟩ ⊗ K|i⟩, m, n) == K` for an `m x n` matrix `K`.
    pub fn unvec_cols(v: &[C64], rows: usize, cols: usize) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot reshape {} entries into {rows}x{cols}",
                v.len()
            )));
        }
        Ok(Self::from_fn(rows, cols, |k, i| v[i * rows + k]))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise equality within `tol * max(1, |self|_max, |other|_max)`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.max_abs()).max(other.max_abs());
        self.max_abs_diff(other) <= tol * scale
    }

    /// `max |x - x†|`, or infinity for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(x + x†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + adj[(i, j)]) * 0.5)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, s: C64) -> ComplexMatrix {
        self.scale(s)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks_exact(self.cols) {
            write!(f, " ")?;
            for z in row {
                write!(f, " {:>9.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn kron_identities() {
        assert_eq!(
            ComplexMatrix::identity(2).kron(&ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4)
        );
        let b = ComplexMatrix::from_rows(&[&[c(1.0, 2.0), c(3.0, 0.0)], &[c(0.0, -1.0), c(5.0, 5.0)]]);
        let k = ComplexMatrix::unit(2, 2, 0, 0).kron(&b);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i < 2 && j < 2 { b[(i, j)] } else { ZERO };
                assert_eq!(k[(i, j)], expected);
            }
        }
    }

    #[test]
    fn kron_sigma_x_fixes_omega() {
        let xx = sigma_x().kron(&sigma_x());
        let omega = [ONE, ZERO, ZERO, ONE];
        assert_eq!(xx.apply_to(&omega), omega.to_vec());
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 1);
        assert_eq!(a.kron(&b).shape(), (8, 3));
    }

    #[test]
    fn partial_trace_product_and_omega() {
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 0.0), c(2.0, 1.0)], &[c(0.5, 0.0), c(3.0, -1.0)]]);
        let b = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64, j as f64));
        let first = a.kron(&b).partial_trace(2, 3, Factor::First).unwrap();
        assert!(first.approx_eq(&b.scale(a.trace()), 1e-14));
        let second = a.kron(&b).partial_trace(2, 3, Factor::Second).unwrap();
        assert!(second.approx_eq(&a.scale(b.trace()), 1e-14));

        let omega = [ONE, ZERO, ZERO, ONE];
        let proj = ComplexMatrix::outer(&omega, &omega);
        assert_eq!(
            proj.partial_trace(2, 2, Factor::First).unwrap(),
            ComplexMatrix::identity(2)
        );
    }

    #[test]
    fn partial_trace_rejects_bad_shape() {
        let x = ComplexMatrix::identity(5);
        assert!(x.partial_trace(2, 2, Factor::First).is_err());
    }

    #[test]
    fn vec_conventions() {
        let id = ComplexMatrix::identity(2);
        assert_eq!(id.vec().data(), &[ONE, ZERO, ZERO, ONE]);

        let k = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64 + 1.0, 10.0 * j as f64));
        // Σ_i |i⟩ ⊗ K|i⟩ with i over the 2 input columns.
        let mut entangled = Vec::new();
        for i in 0..2 {
            entangled.extend(k.column_vec(i));
        }
        assert_eq!(ComplexMatrix::unvec_cols(&entangled, 3, 2).unwrap(), k);
        assert_eq!(k.vec_cols().data(), entangled.as_slice());
        assert_eq!(ComplexMatrix::unvec(k.vec().data(), 3, 2).unwrap(), k);
        assert!(ComplexMatrix::unvec(&entangled, 4, 2).is_err());
        assert!(ComplexMatrix::unvec_cols(&entangled, 4, 2).is_err());
    }

    #[test]
    fn new_checks_length() {
        assert!(ComplexMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn products_and_adjoint() {
        let a = ComplexMatrix::from_rows(&[&[c(1.0, 1.0), c(0.0, 2.0)], &[c(3.0, 0.0), c(1.0, -1.0)]]);
        let b = ComplexMatrix::identity(2).scale(c(0.0, 1.0));
        assert_eq!(&a * &b, a.scale(c(0.0, 1.0)));
        assert_eq!((&a * &a).adjoint(), &a.adjoint() * &a.adjoint());
        assert!(a.try_mul(&ComplexMatrix::zeros(3, 3)).is_err());
        assert_eq!(a.hermitian_part().hermiticity_defect(), 0.0);
    }
}
