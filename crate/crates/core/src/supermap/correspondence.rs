//! When does "Θ CCPP ⇔ Λ^ℱ_Θ CP" hold for a super-map basis `ℱ`?
//!
//! With `V` the matrix of canonical coordinates of `ℱ`, the generalized
//! Choi-type representation is `Λ^ℱ_Θ = Λ_{Θ∘Θ^N}` where `Θ^N = V Vᵀ`. The
//! correspondence therefore holds exactly when `Θ^N` is a complete order
//! isomorphism. More generally any `𝒢 = Σ g_αβ ℰ_α ⊗ ℰ_β` determines
//! `Θ^𝒢(ℰ_α) = Σ_β g_αβ ℰ_β`, so that `𝒢 = (id ⊗ Θ^𝒢) 𝔐`.

use super::{ChoiType, SuperMap, SuperMapBasis};
use crate::error::{Error, Result};
use crate::regroup;
use crate::tolerance::Tolerances;
use crate::verdict::CoiVerdict;

/// The unique `Θ^𝒢` with `𝒢 = (id ⊗ Θ^𝒢) 𝔐`.
pub fn theta_of_g(g: &ChoiType) -> Result<SuperMap> {
    let [n1, n2, n3, n4] = g.dims();
    if (n1, n2) != (n3, n4) {
        return Err(Error::DimensionMismatch(format!(
            "Θ^G needs both tensor factors in L(B(C^{n1}),B(C^{n2})), got dims {:?}",
            g.dims()
        )));
    }
    // Natural matrix axes: rows (k,r,l,s), cols (i,p,j,q) for ℰ_ijkl ⊗ ℰ_pqrs.
    let coeffs = regroup::permute_axes(
        g.map().natural(),
        &[n2, n2, n2, n2, n1, n1, n1, n1],
        &[4, 6, 0, 2, 5, 7, 1, 3],
        4,
    );
    SuperMap::new([n1, n2, n1, n2], coeffs.transpose())
}

/// `Θ^N = V Vᵀ`.
pub fn theta_of_basis(basis: &SuperMapBasis) -> SuperMap {
    let (n1, n2) = basis.dims();
    let v = basis.coords_matrix();
    SuperMap::new([n1, n2, n1, n2], &v * &v.transpose()).expect("square coordinate matrix")
}

/// `Θ^N` is a complete order isomorphism.
pub fn correspondence_check_basis(basis: &SuperMapBasis, tol: &Tolerances) -> CoiVerdict {
    theta_of_basis(basis).is_coi(tol)
}

/// `Θ^𝒢` is a complete order isomorphism.
pub fn correspondence_check_g(g: &ChoiType, tol: &Tolerances) -> Result<CoiVerdict> {
    Ok(theta_of_g(g)?.is_coi(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::OperatorBasis;
    use crate::matrix::{ComplexMatrix, C64};
    use crate::verdict::Reason;

    fn sample_supermap(seed: f64) -> SuperMap {
        let coeff = ComplexMatrix::from_fn(16, 16, |i, j| {
            C64::new(((i * 13 + j * 5) as f64 * seed).sin(), ((3 * i + j) as f64 - seed).cos())
        });
        SuperMap::new([2, 2, 2, 2], coeff).unwrap()
    }

    #[test]
    fn theta_of_m_is_identity() {
        let m = ChoiType::canonical_m(2, 2);
        assert_eq!(theta_of_g(&m).unwrap(), SuperMap::identity(2, 2));
        assert!(correspondence_check_g(&m, &Tolerances::default()).unwrap().is_coi);
    }

    #[test]
    fn theta_of_g_recovers_generator() {
        let theta = sample_supermap(0.29);
        let g = ChoiType::canonical(&theta);
        assert!(theta_of_g(&g).unwrap().approx_eq(&theta, 1e-13));
        let rectangular = SuperMap::new([2, 1, 1, 2], ComplexMatrix::identity(4)).unwrap();
        assert!(theta_of_g(&ChoiType::canonical(&rectangular)).is_err());
    }

    #[test]
    fn theta_of_n_matches_theta_of_g() {
        let p = OperatorBasis::pauli();
        let basis = SuperMapBasis::functional(&p, &p);
        let n = ChoiType::new(&SuperMap::identity(2, 2), &basis).unwrap();
        assert!(theta_of_g(&n).unwrap().approx_eq(&theta_of_basis(&basis), 1e-13));
    }

    #[test]
    fn canonical_and_pauli_verdicts() {
        let tol = Tolerances::default();
        assert_eq!(theta_of_basis(&SuperMapBasis::canonical(2, 2)), SuperMap::identity(2, 2));
        assert!(correspondence_check_basis(&SuperMapBasis::canonical(2, 2), &tol).is_coi);
        let p = OperatorBasis::pauli();
        let verdict = correspondence_check_basis(&SuperMapBasis::functional(&p, &p), &tol);
        assert!(!verdict.is_coi);
        assert_eq!(verdict.reason, Reason::ChoiNotPsd);
    }

    #[test]
    fn generalized_choi_type_is_canonical_after_theta_n() {
        let theta = sample_supermap(1.37);
        let p = OperatorBasis::pauli();
        let basis = SuperMapBasis::functional(&p, &OperatorBasis::weyl(2));
        let general = ChoiType::new(&theta, &basis).unwrap();
        let via_n = ChoiType::canonical(&theta.compose(&theta_of_basis(&basis)).unwrap());
        assert!(general.approx_eq(&via_n, 1e-12));
    }
}
