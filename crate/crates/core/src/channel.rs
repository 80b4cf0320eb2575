//! Linear maps `Φ: B(C^n) → B(C^m)`.
//!
//! A [`LinearMap`] is stored as its natural (superoperator) matrix `N`, an
//! `m² x n²` matrix whose column `ord(i,j) = i·n + j` is the row-major `vec`
//! of `Φ(e_ij)`. Hence `vec(Φ(A)) = N · vec(A)`, composition is matrix
//! multiplication, and a Kraus map `A ↦ K A K†` has `N = K ⊗ conj(K)`.
//!
//! Choi matrices are computed on demand. They live in `B(C^n) ⊗ B(C^m)` with
//! the input factor first.

use crate::basis::OperatorBasis;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE};
use crate::regroup;
use crate::tolerance::Tolerances;
use crate::verdict::{CoiVerdict, Reason, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    in_dim: usize,
    out_dim: usize,
    natural: ComplexMatrix,
}

impl LinearMap {
    pub fn from_natural(in_dim: usize, out_dim: usize, natural: ComplexMatrix) -> Result<Self> {
        let expected = (out_dim * out_dim, in_dim * in_dim);
        if in_dim == 0 || out_dim == 0 || natural.shape() != expected {
            return Err(Error::DimensionMismatch(format!(
                "natural matrix of a map C^{in_dim} -> C^{out_dim} must be {}x{}, got {}x{}",
                expected.0,
                expected.1,
                natural.rows(),
                natural.cols()
            )));
        }
        Ok(Self {
            in_dim,
            out_dim,
            natural,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            in_dim: n,
            out_dim: n,
            natural: ComplexMatrix::identity(n * n),
        }
    }

    pub fn zero(in_dim: usize, out_dim: usize) -> Self {
        Self {
            in_dim,
            out_dim,
            natural: ComplexMatrix::zeros(out_dim * out_dim, in_dim * in_dim),
        }
    }

    /// `A ↦ Aᵀ` on `B(C^n)`.
    pub fn transpose_map(n: usize) -> Self {
        Self::from_fn(n, n, |a| a.transpose())
    }

    /// `A ↦ Σ_k K_k A K_k†`.
    pub fn from_kraus(kraus: &[ComplexMatrix]) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty Kraus list".into()))?;
        let (m, n) = first.shape();
        let mut natural = ComplexMatrix::zeros(m * m, n * n);
        for k in kraus {
            if k.shape() != (m, n) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operators must all be {m}x{n}, found {}x{}",
                    k.rows(),
                    k.cols()
                )));
            }
            natural.add_kron(ONE, k, &k.conj());
        }
        Ok(Self {
            in_dim: n,
            out_dim: m,
            natural,
        })
    }

    /// The map sending `e_ij` to `images[i·n + j]`, extended linearly.
    pub fn from_action(in_dim: usize, images: &[ComplexMatrix]) -> Result<Self> {
        if in_dim == 0 || images.len() != in_dim * in_dim {
            return Err(Error::DimensionMismatch(format!(
                "a map on B(C^{in_dim}) needs {} images, got {}",
                in_dim * in_dim,
                images.len()
            )));
        }
        let m = images[0].rows();
        let mut natural = ComplexMatrix::zeros(m * m, in_dim * in_dim);
        for (col, img) in images.iter().enumerate() {
            if img.shape() != (m, m) {
                return Err(Error::DimensionMismatch(format!(
                    "images must all be {m}x{m}, found {}x{}",
                    img.rows(),
                    img.cols()
                )));
            }
            natural.set_column(col, img.data());
        }
        Ok(Self {
            in_dim,
            out_dim: m,
            natural,
        })
    }

    /// Builds a map by evaluating a linear function on the matrix units.
    pub fn from_fn(in_dim: usize, out_dim: usize, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let images: Vec<_> = (0..in_dim * in_dim)
            .map(|a| f(&ComplexMatrix::unit(in_dim, in_dim, a / in_dim, a % in_dim)))
            .collect();
        let map = Self::from_action(in_dim, &images).expect("function images have a uniform shape");
        assert_eq!(map.out_dim, out_dim, "function output dimension mismatch");
        map
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn natural(&self) -> &ComplexMatrix {
        &self.natural
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.shape() != (self.in_dim, self.in_dim) {
            return Err(Error::DimensionMismatch(format!(
                "map expects {n}x{n} input, got {}x{}",
                a.rows(),
                a.cols(),
                n = self.in_dim
            )));
        }
        let out = self.natural.apply_to(a.data());
        ComplexMatrix::unvec(&out, self.out_dim, self.out_dim)
    }

    /// `Φ(e_ij)`, read straight from the natural matrix.
    pub fn image_of_unit(&self, i: usize, j: usize) -> ComplexMatrix {
        let col = self.natural.column_vec(i * self.in_dim + j);
        ComplexMatrix::unvec(&col, self.out_dim, self.out_dim).expect("column has m² entries")
    }

    /// `Σ_α b_α ⊗ Φ(b_α)` for an arbitrary operator basis of the input space.
    pub fn choi_matrix(&self, basis: &OperatorBasis) -> Result<ComplexMatrix> {
        if basis.dim() != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "basis of B(C^{}) used for a map on B(C^{})",
                basis.dim(),
                self.in_dim
            )));
        }
        let side = self.in_dim * self.out_dim;
        let mut choi = ComplexMatrix::zeros(side, side);
        for b in basis.elements() {
            choi.add_kron(ONE, b, &self.apply(b)?);
        }
        Ok(choi)
    }

    /// `Σ_ij e_ij ⊗ Φ(e_ij)`, obtained by reshuffling the natural matrix.
    pub fn canonical_choi(&self) -> ComplexMatrix {
        regroup::natural_to_choi(&self.natural, self.in_dim, self.out_dim)
    }

    /// The map `Γ_X(A) = tr_1[(Aᵀ ⊗ I) X]` determined by `X ∈ B(C^n) ⊗ B(C^m)`.
    ///
    /// `Γ_X(e_ij)` is block `(i, j)` of `X`, so this is the inverse of
    /// [`canonical_choi`](Self::canonical_choi).
    pub fn from_choi(x: &ComplexMatrix, n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || x.shape() != (n * m, n * m) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix of a map C^{n} -> C^{m} must be {s}x{s}, got {}x{}",
                x.rows(),
                x.cols(),
                s = n * m
            )));
        }
        Self::from_natural(n, m, regroup::choi_to_natural(x, n, m))
    }

    /// Completely positive iff the canonical Choi matrix is PSD.
    pub fn is_cp(&self, tol: &Tolerances) -> Verdict {
        psd_verdict(&self.canonical_choi(), tol)
    }

    /// Complete order isomorphism test: is `Φ(X) = K X K†` for an invertible `K`?
    ///
    /// Requires a square map with a PSD rank-one Choi matrix `v v†`; then
    /// `K = unvec_cols(v)` must be invertible and reproduce `Φ` on every
    /// matrix unit.
    pub fn is_coi(&self, tol: &Tolerances) -> CoiVerdict {
        if self.in_dim != self.out_dim {
            return CoiVerdict::rejected(Reason::NonSquare, Vec::new());
        }
        let n = self.in_dim;
        let choi = self.canonical_choi();
        let check = choi.psd_check(tol);
        if !check.hermitian {
            return CoiVerdict::rejected(Reason::ChoiNotHermitian, check.spectrum);
        }
        if !check.psd {
            return CoiVerdict::rejected(Reason::ChoiNotPsd, check.spectrum);
        }
        match choi.matrix_rank(tol) {
            1 => {}
            // Only K = 0 has a zero Choi matrix.
            0 => return CoiVerdict::rejected(Reason::KSingular, check.spectrum),
            _ => return CoiVerdict::rejected(Reason::ChoiRankAboveOne, check.spectrum),
        }
        let (values, vectors) = choi
            .hermitian_eigen(tol)
            .expect("Hermiticity was checked above");
        let top = *values.last().expect("non-empty spectrum");
        let scale = top.max(0.0).sqrt();
        let mut v: Vec<C64> = vectors.column_vec(n * n - 1).iter().map(|z| z * scale).collect();
        fix_phase(&mut v, tol.equality_tol);
        let k = ComplexMatrix::unvec_cols(&v, n, n).expect("eigenvector has n² entries");
        if !k.is_invertible(tol) {
            return CoiVerdict::rejected(Reason::KSingular, check.spectrum);
        }
        let k_adj = k.adjoint();
        for i in 0..n {
            for j in 0..n {
                let expected = &(&k * &ComplexMatrix::unit(n, n, i, j)) * &k_adj;
                if !self.image_of_unit(i, j).approx_eq(&expected, tol.equality_tol) {
                    return CoiVerdict::rejected(Reason::WitnessMismatch, check.spectrum);
                }
            }
        }
        CoiVerdict {
            is_coi: true,
            k_witness: Some(k),
            reason: Reason::Ok,
            choi_spectrum: check.spectrum,
        }
    }

    /// `Φ₁ ⊗ Φ₂` acting on `B(C^n1 ⊗ C^n2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let kron = self.natural.kron(&other.natural);
        Self {
            in_dim: self.in_dim * other.in_dim,
            out_dim: self.out_dim * other.out_dim,
            natural: regroup::kron_to_tensor_natural(
                &kron,
                (self.in_dim, self.out_dim),
                (other.in_dim, other.out_dim),
            ),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.out_dim != self.in_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose map on C^{} after map into C^{}",
                self.in_dim, other.out_dim
            )));
        }
        Ok(Self {
            in_dim: other.in_dim,
            out_dim: self.out_dim,
            natural: &self.natural * &other.natural,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.in_dim != self.out_dim {
            return Err(Error::NotSquare {
                rows: self.out_dim,
                cols: self.in_dim,
            });
        }
        Ok(Self {
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            natural: self.natural.inverse()?,
        })
    }

    /// The map whose natural matrix is the entrywise conjugate of this one.
    pub fn conj(&self) -> Self {
        Self {
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            natural: self.natural.conj(),
        }
    }

    /// The map whose natural matrix is the plain transpose of this one.
    pub fn transpose_natural(&self) -> Self {
        Self {
            in_dim: self.out_dim,
            out_dim: self.in_dim,
            natural: self.natural.transpose(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            natural: self.natural.scale(s),
            ..self.clone()
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if (self.in_dim, self.out_dim) != (other.in_dim, other.out_dim) {
            return Err(Error::DimensionMismatch("maps have different shapes".into()));
        }
        Ok(Self {
            natural: self.natural.try_add(&other.natural)?,
            ..self.clone()
        })
    }

    /// Coordinates in the canonical basis `ℰ_ijkl(A) = Tr(e_ij† A) e_kl` of
    /// `L(B(C^n), B(C^m))`, ordered lexicographically in `(i,j,k,l)`.
    ///
    /// The coefficient of `ℰ_ijkl` is `Φ(e_ij)[k,l]`, which makes this the
    /// column-major `vec` of the natural matrix.
    pub fn coords(&self) -> Vec<C64> {
        self.natural.vec_cols().into_data()
    }

    pub fn from_coords(in_dim: usize, out_dim: usize, coords: &[C64]) -> Result<Self> {
        let natural = ComplexMatrix::unvec_cols(coords, out_dim * out_dim, in_dim * in_dim)?;
        Self::from_natural(in_dim, out_dim, natural)
    }

    /// Bilinear pairing `⟨Ψ, Φ⟩ = Tr(C_Ψᵀ C_Φ)` of canonical Choi matrices.
    pub fn pairing(&self, other: &Self) -> Result<C64> {
        if (self.in_dim, self.out_dim) != (other.in_dim, other.out_dim) {
            return Err(Error::DimensionMismatch("maps have different shapes".into()));
        }
        Ok(trace_transpose_product(
            &self.canonical_choi(),
            &other.canonical_choi(),
        ))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.in_dim, self.out_dim) == (other.in_dim, other.out_dim)
            && self.natural.approx_eq(&other.natural, tol)
    }
}

/// `Tr(aᵀ b) = Σ_xy a[x,y] b[x,y]`.
pub(crate) fn trace_transpose_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x * y).sum()
}

pub(crate) fn psd_verdict(m: &ComplexMatrix, tol: &Tolerances) -> Verdict {
    let check = m.psd_check(tol);
    let reason = if !check.hermitian {
        Reason::ChoiNotHermitian
    } else if !check.psd {
        Reason::ChoiNotPsd
    } else {
        Reason::Ok
    };
    Verdict {
        holds: check.psd,
        reason,
        spectrum: check.spectrum,
        hermiticity_defect: check.hermiticity_defect,
        tolerances: *tol,
    }
}

/// Rotates `v` so that its first entry above `rel_tol * |v|_max` is real positive.
pub(crate) fn fix_phase(v: &mut [C64], rel_tol: f64) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    if let Some(pivot) = v.iter().find(|z| z.norm() > rel_tol * max).copied() {
        let phase = pivot.conj() / pivot.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// `e^{iφ}` minimizing `|a - e^{iφ} b|`, used to compare objects defined up to phase.
pub fn align_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let overlap: C64 = b.data().iter().zip(a.data()).map(|(x, y)| x.conj() * y).sum();
    if overlap.norm() == 0.0 {
        ONE
    } else {
        overlap / overlap.norm()
    }
}
