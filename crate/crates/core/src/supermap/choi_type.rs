use super::{SuperMap, SuperMapBasis};
use crate::channel::LinearMap;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ONE};
use crate::regroup;

/// `Λ = Σ_β Ψ_β ⊗ Φ_β ∈ L(B(H1),B(H2)) ⊗ L(B(H3),B(H4))`, identified with
/// the map `B(H1⊗H3) → B(H2⊗H4)` sending `A⊗B ↦ Σ_β Ψ_β(A) ⊗ Φ_β(B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiType {
    dims: [usize; 4],
    map: LinearMap,
}

impl ChoiType {
    pub fn from_map(dims: [usize; 4], map: LinearMap) -> Result<Self> {
        let [n1, n2, n3, n4] = dims;
        if (map.in_dim(), map.out_dim()) != (n1 * n3, n2 * n4) {
            return Err(Error::DimensionMismatch(format!(
                "Choi-type map for dims {dims:?} must map C^{} -> C^{}",
                n1 * n3,
                n2 * n4
            )));
        }
        Ok(Self { dims, map })
    }

    /// `Σ_β left_β ⊗ right_β`.
    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a LinearMap, &'a LinearMap)>,
        dims: [usize; 4],
    ) -> Result<Self> {
        let [n1, n2, n3, n4] = dims;
        let mut kron_sum = ComplexMatrix::zeros(n2 * n2 * n4 * n4, n1 * n1 * n3 * n3);
        for (left, right) in pairs {
            if (left.in_dim(), left.out_dim(), right.in_dim(), right.out_dim()) != (n1, n2, n3, n4) {
                return Err(Error::DimensionMismatch(format!(
                    "tensor factor shapes do not match dims {dims:?}"
                )));
            }
            kron_sum.add_kron(ONE, left.natural(), right.natural());
        }
        let natural = regroup::kron_to_tensor_natural(&kron_sum, (n1, n2), (n3, n4));
        Ok(Self {
            dims,
            map: LinearMap::from_natural(n1 * n3, n2 * n4, natural)?,
        })
    }

    /// `Λ^ℱ_Θ = Σ_β ℱ_β ⊗ Θ(ℱ_β)`.
    pub fn new(theta: &SuperMap, basis: &SuperMapBasis) -> Result<Self> {
        let [n1, n2, n3, n4] = theta.dims();
        if basis.dims() != (n1, n2) {
            return Err(Error::DimensionMismatch(format!(
                "basis of L(B(C^{}),B(C^{})) used for a super-map on L(B(C^{n1}),B(C^{n2}))",
                basis.dims().0,
                basis.dims().1
            )));
        }
        let images = basis
            .elements()
            .iter()
            .map(|f| theta.apply(f))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(basis.elements().iter().zip(&images), [n1, n2, n3, n4])
    }

    /// `Λ_Θ` in the canonical basis `ℰ`.
    pub fn canonical(theta: &SuperMap) -> Self {
        let [n1, n2, ..] = theta.dims();
        Self::new(theta, &SuperMapBasis::canonical(n1, n2)).expect("canonical basis matches dims")
    }

    /// `𝔐 = Σ_α ℰ_α ⊗ ℰ_α`.
    pub fn canonical_m(n1: usize, n2: usize) -> Self {
        Self::canonical(&SuperMap::identity(n1, n2))
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// Canonical Choi matrix of the map `B(H1⊗H3) → B(H2⊗H4)`, factors ordered (1,3,2,4).
    pub fn choi_matrix(&self) -> ComplexMatrix {
        self.map.canonical_choi()
    }

    /// `Λ' = Σ_β Φ_β ⊗ Ψ_β`.
    pub fn swap_factors(&self) -> Self {
        let [n1, n2, n3, n4] = self.dims;
        let natural = regroup::swap_map_factors(self.map.natural(), (n1, n3), (n2, n4));
        Self {
            dims: [n3, n4, n1, n2],
            map: LinearMap::from_natural(n3 * n1, n4 * n2, natural).expect("swapped shape"),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dims == other.dims && self.map.approx_eq(&other.map, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::OperatorBasis;
    use crate::matrix::C64;

    #[test]
    fn tensor_of_single_pair_acts_on_products() {
        let left = LinearMap::transpose_map(2);
        let right = LinearMap::from_kraus(&[ComplexMatrix::from_rows(&[
            &[ONE, C64::new(0.0, 1.0)],
            &[C64::new(2.0, 0.0), ONE],
        ])])
        .unwrap();
        let lambda = ChoiType::from_pairs([(&left, &right)], [2, 2, 2, 2]).unwrap();
        assert_eq!(lambda.map(), &left.tensor(&right));
    }

    #[test]
    fn pauli_functional_identity_has_six_negative_eigenvalues() {
        let p = OperatorBasis::pauli();
        let basis = SuperMapBasis::functional(&p, &p);
        let lambda = ChoiType::new(&SuperMap::identity(2, 2), &basis).unwrap();
        let c = lambda.choi_matrix();
        let ev = c.hermitian_eigenvalues(&Default::default()).unwrap();
        assert_eq!(ev.iter().filter(|&&x| x < -1e-9).count(), 6);
        for (k, x) in ev.iter().enumerate() {
            let expected = if k < 6 { -4.0 } else { 4.0 };
            assert!((x - expected).abs() < 1e-9, "{ev:?}");
        }
    }

    #[test]
    fn canonical_identity_choi_is_psd() {
        let lambda = ChoiType::canonical_m(2, 2);
        assert!(lambda.choi_matrix().is_psd(&Default::default()));
        assert_eq!(lambda.swap_factors(), lambda);
    }

    #[test]
    fn choi_matrix_agrees_with_sum_over_composite_basis() {
        let theta = SuperMap::sandwich(
            &ComplexMatrix::from_rows(&[&[ONE, C64::new(0.5, 0.5)], &[C64::new(0.0, -1.0), ONE]]),
            &ComplexMatrix::identity(2),
        )
        .unwrap();
        let lambda = ChoiType::canonical(&theta);
        let summed = lambda.map().choi_matrix(&OperatorBasis::canonical(4)).unwrap();
        assert!(summed.approx_eq(&lambda.choi_matrix(), 1e-13));
        let back = LinearMap::from_choi(&lambda.choi_matrix(), 4, 4).unwrap();
        assert_eq!(&back, lambda.map());
    }

    #[test]
    fn dimension_errors() {
        let theta = SuperMap::identity(2, 2);
        assert!(ChoiType::new(&theta, &SuperMapBasis::canonical(2, 1)).is_err());
        assert!(ChoiType::from_map([2, 2, 2, 2], LinearMap::identity(2)).is_err());
    }
}
