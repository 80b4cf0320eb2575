use super::{SuperMap, SuperMapBasis};
use crate::channel::LinearMap;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::regroup;

/// `T: B(H1⊗H2) → B(H3⊗H4)`, `T(x) = C_{Θ(Γ_x)}`.
pub fn representing_map(theta: &SuperMap) -> LinearMap {
    let [n1, n2, n3, n4] = theta.dims();
    let side = n1 * n2;
    let images: Vec<ComplexMatrix> = (0..side * side)
        .map(|a| {
            let x = ComplexMatrix::unit(side, side, a / side, a % side);
            let gamma = LinearMap::from_choi(&x, n1, n2).expect("unit has composite shape");
            theta.apply(&gamma).expect("Γ_x has the input dims").canonical_choi()
        })
        .collect();
    let t = LinearMap::from_action(side, &images).expect("uniform image shape");
    debug_assert_eq!(t.out_dim(), n3 * n4);
    t
}

/// Inverse of [`representing_map`]: `Θ(Φ)(A) = Tr_3[(Aᵀ ⊗ I) T(C_Φ)]`.
pub(super) fn supermap_from_representing(t: &LinearMap, dims: [usize; 4]) -> Result<SuperMap> {
    let [n1, n2, n3, n4] = dims;
    if (t.in_dim(), t.out_dim()) != (n1 * n2, n3 * n4) {
        return Err(Error::DimensionMismatch(format!(
            "representing map for dims {dims:?} must map C^{} -> C^{}, got C^{} -> C^{}",
            n1 * n2,
            n3 * n4,
            t.in_dim(),
            t.out_dim()
        )));
    }
    let images = SuperMapBasis::canonical(n1, n2)
        .elements()
        .iter()
        .map(|e| LinearMap::from_choi(&t.apply(&e.canonical_choi())?, n3, n4))
        .collect::<Result<Vec<_>>>()?;
    SuperMap::from_action(n1, n2, &images)
}

/// `Θ₁ ⊗ Θ₂` from `T₁ ⊗ T₂`.
///
/// Choi matrices of maps on `H1⊗H1' → H2⊗H2'` have factors ordered
/// `(1,1',2,2')` while `T₁ ⊗ T₂` acts on `(1,2,1',2')`, so the tensor map is
/// conjugated by the matching factor permutations on both sides.
pub(super) fn tensor_supermap(a: &SuperMap, b: &SuperMap) -> SuperMap {
    let [n1, n2, n3, n4] = a.dims();
    let [m1, m2, m3, m4] = b.dims();
    let t = representing_map(a).tensor(&representing_map(b));
    let p_in = regroup::factor_permutation(&[n1, m1, n2, m2], &[0, 2, 1, 3]);
    let p_out = regroup::factor_permutation(&[n3, n4, m3, m4], &[0, 2, 1, 3]);
    let into_t = LinearMap::from_kraus(&[p_in]).expect("permutation matrix");
    let out_of_t = LinearMap::from_kraus(&[p_out]).expect("permutation matrix");
    let t = out_of_t
        .compose(&t.compose(&into_t).expect("matching dims"))
        .expect("matching dims");
    supermap_from_representing(&t, [n1 * m1, n2 * m2, n3 * m3, n4 * m4])
        .expect("tensor representing map has composite dims")
}
