//! Super-maps `Θ: L(B(C^n1), B(C^n2)) → L(B(C^n3), B(C^n4))`.
//!
//! A [`SuperMap`] is stored as its coefficient matrix in the canonical bases
//! `ℰ_ijkl(A) = Tr(e_ij† A) e_kl`: column `α` holds the coordinates of
//! `Θ(ℰ_α)`. The canonical coordinates of a map are
//! [`LinearMap::coords`], so applying `Θ` is a matrix-vector product,
//! composition is a matrix product and the adjoint is the transpose.
//!
//! Related objects:
//!
//! * [`ChoiType`]: `Λ = Σ_β ℱ_β ⊗ Θ(ℱ_β)` as a map `B(H1⊗H3) → B(H2⊗H4)`.
//! * [`representing_map`]: `T(x) = C_{Θ(Γ_x)}` on `B(H1⊗H2) → B(H3⊗H4)`.
//! * [`correspondence`]: `Θ^N = V Vᵀ`, `Θ^G` and the correspondence tests.

mod basis;
mod choi_type;
pub mod correspondence;
mod representing;

pub use basis::SuperMapBasis;
pub use choi_type::ChoiType;
pub use correspondence::{
    correspondence_check_basis, correspondence_check_g, theta_of_basis, theta_of_g,
};
pub use representing::representing_map;

use crate::channel::LinearMap;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::tolerance::Tolerances;
use crate::verdict::{CoiVerdict, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct SuperMap {
    dims: [usize; 4],
    coeff: ComplexMatrix,
}

impl SuperMap {
    pub fn new(dims: [usize; 4], coeff: ComplexMatrix) -> Result<Self> {
        let [n1, n2, n3, n4] = dims;
        let expected = (n3 * n3 * n4 * n4, n1 * n1 * n2 * n2);
        if dims.contains(&0) || coeff.shape() != expected {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix for dims {dims:?} must be {}x{}, got {}x{}",
                expected.0,
                expected.1,
                coeff.rows(),
                coeff.cols()
            )));
        }
        Ok(Self { dims, coeff })
    }

    pub fn identity(n1: usize, n2: usize) -> Self {
        Self {
            dims: [n1, n2, n1, n2],
            coeff: ComplexMatrix::identity(n1 * n1 * n2 * n2),
        }
    }

    /// The super-map sending `ℰ_α` to `images[α]`.
    pub fn from_action(n1: usize, n2: usize, images: &[LinearMap]) -> Result<Self> {
        let count = n1 * n1 * n2 * n2;
        if count == 0 || images.len() != count {
            return Err(Error::DimensionMismatch(format!(
                "a super-map on L(B(C^{n1}),B(C^{n2})) needs {count} images, got {}",
                images.len()
            )));
        }
        let (n3, n4) = (images[0].in_dim(), images[0].out_dim());
        let mut coeff = ComplexMatrix::zeros(n3 * n3 * n4 * n4, count);
        for (alpha, img) in images.iter().enumerate() {
            if (img.in_dim(), img.out_dim()) != (n3, n4) {
                return Err(Error::DimensionMismatch("images have different shapes".into()));
            }
            coeff.set_column(alpha, &img.coords());
        }
        Self::new([n1, n2, n3, n4], coeff)
    }

    /// Builds `Θ` by evaluating a linear function on the canonical basis.
    pub fn from_fn(n1: usize, n2: usize, f: impl Fn(&LinearMap) -> LinearMap) -> Result<Self> {
        let images: Vec<_> = SuperMapBasis::canonical(n1, n2).elements().iter().map(f).collect();
        Self::from_action(n1, n2, &images)
    }

    /// `Θ(Φ) = Ad_U ∘ Φ ∘ Ad_V` with `Ad_K(X) = K X K†`.
    pub fn sandwich(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<Self> {
        let post = LinearMap::from_kraus(std::slice::from_ref(u))?;
        let pre = LinearMap::from_kraus(std::slice::from_ref(v))?;
        let (n1, n2) = (pre.out_dim(), post.in_dim());
        let images = SuperMapBasis::canonical(n1, n2)
            .elements()
            .iter()
            .map(|e| post.compose(&e.compose(&pre)?))
            .collect::<Result<Vec<_>>>()?;
        Self::from_action(n1, n2, &images)
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn coeff(&self) -> &ComplexMatrix {
        &self.coeff
    }

    pub fn apply(&self, phi: &LinearMap) -> Result<LinearMap> {
        let [n1, n2, n3, n4] = self.dims;
        if (phi.in_dim(), phi.out_dim()) != (n1, n2) {
            return Err(Error::DimensionMismatch(format!(
                "super-map acts on maps C^{n1} -> C^{n2}, got C^{} -> C^{}",
                phi.in_dim(),
                phi.out_dim()
            )));
        }
        LinearMap::from_coords(n3, n4, &self.coeff.apply_to(&phi.coords()))
    }

    /// `Θ*`, whose coefficient matrix is the plain transpose.
    pub fn adjoint(&self) -> Self {
        let [n1, n2, n3, n4] = self.dims;
        Self {
            dims: [n3, n4, n1, n2],
            coeff: self.coeff.transpose(),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.dims[2..] != self.dims[..2] {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose super-map with dims {:?} after {:?}",
                self.dims, other.dims
            )));
        }
        Self::new(
            [other.dims[0], other.dims[1], self.dims[2], self.dims[3]],
            &self.coeff * &other.coeff,
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dims: self.dims,
            coeff: self.coeff.scale(s),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("super-maps have different dims".into()));
        }
        Self::new(self.dims, self.coeff.try_add(&other.coeff)?)
    }

    /// `Θ₁ ⊗ Θ₂` on `L(B(H1⊗H1'), B(H2⊗H2'))`, built from `T₁ ⊗ T₂` with the
    /// factors of the Choi spaces reordered.
    pub fn tensor(&self, other: &Self) -> Self {
        representing::tensor_supermap(self, other)
    }

    /// `Tr(C_{Λ_Θ₁}ᵀ C_{Λ_Θ₂})` from the canonical Choi-type representations.
    pub fn pairing(&self, other: &Self) -> Result<C64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("super-maps have different dims".into()));
        }
        let a = ChoiType::canonical(self).choi_matrix();
        let b = ChoiType::canonical(other).choi_matrix();
        Ok(crate::channel::trace_transpose_product(&a, &b))
    }

    pub fn representing_map(&self) -> LinearMap {
        representing_map(self)
    }

    pub fn from_representing(t: &LinearMap, dims: [usize; 4]) -> Result<Self> {
        representing::supermap_from_representing(t, dims)
    }

    /// Completely CP-preserving iff the representing map is CP.
    pub fn is_ccpp(&self, tol: &Tolerances) -> Verdict {
        self.representing_map().is_cp(tol)
    }

    /// Complete order isomorphism iff `T(x) = K x K†` for invertible `K`.
    pub fn is_coi(&self, tol: &Tolerances) -> CoiVerdict {
        self.representing_map().is_coi(tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dims == other.dims && self.coeff.approx_eq(&other.coeff, tol)
    }
}
