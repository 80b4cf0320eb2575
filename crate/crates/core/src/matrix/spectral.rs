//! Spectral primitives: Hermitian eigensolves, singular values, rank, inverse.
//!
//! Decompositions are delegated to `nalgebra`; this module only converts
//! between storage layouts and applies the tolerance rules.

use nalgebra::DMatrix;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

const EIG_EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

fn from_na(m: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Outcome of a positive-semidefiniteness test, kept so callers can report why.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub hermitian: bool,
    pub hermiticity_defect: f64,
    /// Ascending eigenvalues of the Hermitian part; empty for non-square input.
    pub spectrum: Vec<f64>,
}

impl ComplexMatrix {
    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.hermiticity_defect() <= tol.hermiticity_tol
    }

    /// Ascending eigenvalues of a Hermitian matrix.
    pub fn hermitian_eigenvalues(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        Ok(self.hermitian_eigen(tol)?.0)
    }

    /// Ascending eigenvalues and the matching orthonormal eigenvectors (as columns).
    pub fn hermitian_eigen(&self, tol: &Tolerances) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let defect = self.hermiticity_defect();
        if defect > tol.hermiticity_tol {
            return Err(Error::NotHermitian(defect));
        }
        Ok(eigh_unchecked(&self.hermitian_part()))
    }

    pub fn psd_check(&self, tol: &Tolerances) -> PsdCheck {
        let hermiticity_defect = self.hermiticity_defect();
        if !self.is_square() {
            return PsdCheck {
                psd: false,
                hermitian: false,
                hermiticity_defect,
                spectrum: Vec::new(),
            };
        }
        let (spectrum, _) = eigh_unchecked(&self.hermitian_part());
        let hermitian = hermiticity_defect <= tol.hermiticity_tol;
        let psd = hermitian && spectrum_is_psd(&spectrum, tol);
        PsdCheck {
            psd,
            hermitian,
            hermiticity_defect,
            spectrum,
        }
    }

    /// Hermitian within `hermiticity_tol` and `λ_min >= -psd_tol * max(1, |λ|_max)`.
    pub fn is_psd(&self, tol: &Tolerances) -> bool {
        self.psd_check(tol).psd
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = to_na(self).singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Thin SVD `self = U diag(s) V†` with `s` descending.
    pub fn svd(&self) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
        let svd = nalgebra::linalg::SVD::try_new(to_na(self), true, true, EIG_EPS, MAX_ITER)
            .ok_or_else(|| Error::Decomposition("SVD did not converge".into()))?;
        let u = svd.u.as_ref().expect("requested U");
        let v_t = svd.v_t.as_ref().expect("requested V^T");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let k = order.len();
        let u_sorted = ComplexMatrix::from_fn(self.rows(), k, |i, j| u[(i, order[j])]);
        let vt_sorted = ComplexMatrix::from_fn(k, self.cols(), |i, j| v_t[(order[i], j)]);
        let s = order.iter().map(|&i| svd.singular_values[i]).collect();
        Ok((u_sorted, s, vt_sorted))
    }

    /// Count of singular values above `rank_rel_tol * σ_max`; zero for the zero matrix.
    pub fn matrix_rank(&self, tol: &Tolerances) -> usize {
        let s = self.singular_values();
        let top = s.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return 0;
        }
        s.iter().filter(|&&x| x > tol.rank_rel_tol * top).count()
    }

    /// `σ_min / σ_max`; zero for a zero or non-square matrix.
    pub fn inverse_condition(&self) -> f64 {
        if !self.is_square() {
            return 0.0;
        }
        let s = self.singular_values();
        match (s.first(), s.last()) {
            (Some(&top), Some(&bottom)) if top > 0.0 => bottom / top,
            _ => 0.0,
        }
    }

    pub fn is_invertible(&self, tol: &Tolerances) -> bool {
        self.inverse_condition() > tol.invertibility_rel_tol
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        to_na(self)
            .try_inverse()
            .map(|m| from_na(&m))
            .ok_or(Error::Singular)
    }

    /// Solves `self · x = b` for square `self`.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !self.is_square() || self.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot solve {}x{} system with {}x{} right-hand side",
                self.rows(),
                self.cols(),
                b.rows(),
                b.cols()
            )));
        }
        to_na(self)
            .lu()
            .solve(&to_na(b))
            .map(|m| from_na(&m))
            .ok_or(Error::Singular)
    }
}

pub(crate) fn spectrum_is_psd(spectrum: &[f64], tol: &Tolerances) -> bool {
    let scale = spectrum.iter().fold(1f64, |acc, x| acc.max(x.abs()));
    spectrum
        .first()
        .is_none_or(|&min| min >= -tol.psd_tol * scale)
}

fn eigh_unchecked(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = nalgebra::linalg::SymmetricEigen::try_new(to_na(h), EIG_EPS, MAX_ITER)
        // The Hermitian QR iteration converges for all finite input at these sizes.
        .expect("Hermitian eigensolver did not converge");
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}
