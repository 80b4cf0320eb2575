//! Operator bases of `B(C^n)` and the basis-validity test.
//!
//! Elements are indexed by a double index `(i, j)` with ordinal
//! `ord(i,j) = i·n + j`. For a basis `{h_ij}` the change-of-basis map `W`
//! sends `e_ij ↦ h_ij`, and `M = W Wᵀ` (plain transpose of the natural
//! matrix). The generalized Choi matrix satisfies
//! `Σ_ij h_ij ⊗ Φ(h_ij) = C_{Φ∘M}`, so the equivalence "Φ CP iff its Choi
//! matrix in this basis is PSD" holds exactly when `M` is a complete order
//! isomorphism.

use crate::channel::{fix_phase, LinearMap};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::tolerance::Tolerances;
use crate::verdict::Reason;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    label: String,
}

/// Outcome of [`OperatorBasis::validity`].
///
/// `correspondence_holds` is the COI status of `M`. `valid` additionally
/// requires the elements to be literally `h_ij = |ζ_i⟩⟨ζ_j|` under their
/// labels, in which case `witness` holds the `ζ_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVerdict {
    pub valid: bool,
    pub correspondence_holds: bool,
    pub witness: Option<Vec<Vec<C64>>>,
    pub m_superoperator: LinearMap,
    /// Ascending eigenvalues of the (Hermitian part of the) canonical Choi matrix of `M`.
    pub spectrum: Vec<f64>,
    pub reason: Reason,
}

impl OperatorBasis {
    /// Checks count, shapes and linear independence under default tolerances.
    pub fn new(dim: usize, elements: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        Self::with_tolerances(dim, elements, label, &Tolerances::default())
    }

    pub fn with_tolerances(
        dim: usize,
        elements: Vec<ComplexMatrix>,
        label: impl Into<String>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if dim == 0 || elements.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "a basis of B(C^{dim}) needs {} elements, got {}",
                dim * dim,
                elements.len()
            )));
        }
        if let Some(bad) = elements.iter().find(|e| e.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!(
                "basis elements must be {dim}x{dim}, found {}x{}",
                bad.rows(),
                bad.cols()
            )));
        }
        let basis = Self {
            dim,
            elements,
            label: label.into(),
        };
        let rank = basis.change_of_basis().natural().matrix_rank(tol);
        if rank != dim * dim {
            return Err(Error::DependentBasis {
                rank,
                expected: dim * dim,
            });
        }
        Ok(basis)
    }

    /// Matrix units `e_ij = |i⟩⟨j|` in lexicographic order.
    pub fn canonical(n: usize) -> Self {
        let elements = (0..n * n).map(|a| ComplexMatrix::unit(n, n, a / n, a % n)).collect();
        Self {
            dim: n,
            elements,
            label: format!("canonical({n})"),
        }
    }

    /// `{I, σ_x, σ_y, σ_z}`.
    pub fn pauli() -> Self {
        Self {
            dim: 2,
            elements: pauli_matrices().to_vec(),
            label: "pauli".into(),
        }
    }

    /// Weyl operators `X^a Z^b` at ordinal `a·n + b`, with `X|j⟩ = |j+1⟩` and
    /// `Z|j⟩ = ω^j |j⟩`. For `n = 2` these are `I, Z, X, XZ`.
    pub fn weyl(n: usize) -> Self {
        let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
        let elements = (0..n * n)
            .map(|ord| {
                let (a, b) = (ord / n, ord % n);
                ComplexMatrix::from_fn(n, n, |r, c| {
                    if r == (c + a) % n {
                        omega.powu((b * c) as u32)
                    } else {
                        ZERO
                    }
                })
            })
            .collect();
        Self {
            dim: n,
            elements,
            label: format!("weyl({n})"),
        }
    }

    /// `E_ij = |k_i⟩⟨λ_j|` for two orthonormal families.
    pub fn tilted(kets: &[Vec<C64>], lambdas: &[Vec<C64>], tol: &Tolerances) -> Result<Self> {
        let n = kets.len();
        check_orthonormal(kets, n, tol)?;
        check_orthonormal(lambdas, n, tol)?;
        let elements = (0..n * n)
            .map(|a| ComplexMatrix::outer(&kets[a / n], &lambdas[a % n]))
            .collect();
        Self::with_tolerances(n, elements, "tilted", tol)
    }

    /// `h_ij = |ζ_i⟩⟨ζ_j|` for linearly independent `ζ_i`.
    pub fn rank_one(zetas: &[Vec<C64>], tol: &Tolerances) -> Result<Self> {
        let n = zetas.len();
        if n == 0 || zetas.iter().any(|z| z.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "need {n} vectors of length {n}"
            )));
        }
        let z = ComplexMatrix::from_fn(n, n, |r, c| zetas[c][r]);
        let cond = z.inverse_condition();
        if cond <= tol.invertibility_rel_tol {
            return Err(Error::LinearlyDependent(cond));
        }
        let elements = (0..n * n)
            .map(|a| ComplexMatrix::outer(&zetas[a / n], &zetas[a % n]))
            .collect();
        Self::with_tolerances(n, elements, "rank-one", tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// `h_ij`.
    pub fn element(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.elements[i * self.dim + j]
    }

    /// The same elements with ordinal `k` moved to position `perm⁻¹(k)`:
    /// new element `a` is old element `perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.elements.len()];
        if perm.len() != seen.len() || perm.iter().any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::DimensionMismatch(format!(
                "not a permutation of {} ordinals",
                self.elements.len()
            )));
        }
        Ok(Self {
            dim: self.dim,
            elements: perm.iter().map(|&p| self.elements[p].clone()).collect(),
            label: format!("{} (permuted)", self.label),
        })
    }

    /// `W` with `W(e_ij) = h_ij`.
    pub fn change_of_basis(&self) -> LinearMap {
        LinearMap::from_action(self.dim, &self.elements).expect("basis shape invariant")
    }

    /// `M = W Wᵀ`, transpose taken on the natural matrix.
    pub fn m_superoperator(&self) -> LinearMap {
        let w = self.change_of_basis();
        let natural = w.natural() * &w.natural().transpose();
        LinearMap::from_natural(self.dim, self.dim, natural).expect("square natural matrix")
    }

    pub fn validity(&self, tol: &Tolerances) -> BasisVerdict {
        let m = self.m_superoperator();
        let coi = m.is_coi(tol);
        let spectrum = coi.choi_spectrum.clone();
        if !coi.is_coi {
            return BasisVerdict {
                valid: false,
                correspondence_holds: false,
                witness: None,
                m_superoperator: m,
                spectrum,
                reason: coi.reason,
            };
        }
        let witness = self.zeta_witness(tol);
        BasisVerdict {
            valid: witness.is_some(),
            correspondence_holds: true,
            reason: if witness.is_some() {
                Reason::Ok
            } else {
                Reason::WitnessMismatch
            },
            witness,
            m_superoperator: m,
            spectrum,
        }
    }

    /// Recovers `ζ_i` with `h_ij = |ζ_i⟩⟨ζ_j|`, or `None` if the labelled
    /// elements do not have that form.
    pub fn zeta_witness(&self, tol: &Tolerances) -> Option<Vec<Vec<C64>>> {
        let n = self.dim;
        let h11 = self.element(0, 0);
        if !h11.is_psd(tol) || h11.matrix_rank(tol) != 1 {
            return None;
        }
        let (values, vectors) = h11.hermitian_eigen(tol).ok()?;
        let scale = values[n - 1].max(0.0).sqrt();
        let mut zeta1: Vec<C64> = vectors.column_vec(n - 1).iter().map(|z| z * scale).collect();
        fix_phase(&mut zeta1, tol.equality_tol);
        let norm_sq: f64 = zeta1.iter().map(|z| z.norm_sqr()).sum();
        let zetas: Vec<Vec<C64>> = (0..n)
            .map(|j| {
                self.element(j, 0)
                    .apply_to(&zeta1)
                    .into_iter()
                    .map(|z| z / norm_sq)
                    .collect()
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                let rebuilt = ComplexMatrix::outer(&zetas[i], &zetas[j]);
                if !rebuilt.approx_eq(self.element(i, j), tol.equality_tol) {
                    return None;
                }
            }
        }
        Some(zetas)
    }
}

pub(crate) fn pauli_matrices() -> [ComplexMatrix; 4] {
    [
        ComplexMatrix::identity(2),
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
        ComplexMatrix::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]),
    ]
}

fn check_orthonormal(vectors: &[Vec<C64>], n: usize, tol: &Tolerances) -> Result<()> {
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "need {n} vectors of length {n}"
        )));
    }
    let mut defect = 0f64;
    for (a, u) in vectors.iter().enumerate() {
        for (b, v) in vectors.iter().enumerate() {
            let inner: C64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
            let expected = if a == b { ONE } else { ZERO };
            defect = defect.max((inner - expected).norm());
        }
    }
    if defect > tol.equality_tol {
        return Err(Error::NotOrthonormal(defect));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn standard(n: usize) -> Vec<Vec<C64>> {
        (0..n)
            .map(|i| (0..n).map(|k| if k == i { ONE } else { ZERO }).collect())
            .collect()
    }

    fn hadamard() -> Vec<Vec<C64>> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        vec![
            vec![C64::new(s, 0.0), C64::new(s, 0.0)],
            vec![C64::new(s, 0.0), C64::new(-s, 0.0)],
        ]
    }

    #[test]
    fn canonical_elements() {
        assert_eq!(OperatorBasis::canonical(1).elements(), &[ComplexMatrix::identity(1)]);
        let b = OperatorBasis::canonical(2);
        assert_eq!(b.element(0, 1), &ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        for n in 2..=4 {
            let b = OperatorBasis::canonical(n);
            assert!(OperatorBasis::new(n, b.elements().to_vec(), "copy").is_ok());
            assert_eq!(b.change_of_basis(), LinearMap::identity(n));
            assert_eq!(b.m_superoperator(), LinearMap::identity(n));
        }
    }

    #[test]
    fn constructor_errors() {
        assert!(OperatorBasis::new(2, vec![ComplexMatrix::identity(2); 3], "short").is_err());
        assert!(matches!(
            OperatorBasis::new(2, vec![ComplexMatrix::identity(2); 4], "repeated"),
            Err(Error::DependentBasis { rank: 1, expected: 4 })
        ));
        let skew = vec![vec![ONE, ZERO], vec![ONE, ONE]];
        assert!(matches!(
            OperatorBasis::tilted(&standard(2), &skew, &tol()),
            Err(Error::NotOrthonormal(_))
        ));
        let dependent = vec![vec![ONE, ONE], vec![ONE, ONE]];
        assert!(matches!(
            OperatorBasis::rank_one(&dependent, &tol()),
            Err(Error::LinearlyDependent(_))
        ));
    }

    #[test]
    fn pauli_properties() {
        let b = OperatorBasis::pauli();
        assert_eq!(b.elements()[0], ComplexMatrix::identity(2));
        for (a, s) in b.elements().iter().enumerate() {
            assert_eq!(s, &s.adjoint());
            if a > 0 {
                assert_eq!(s.trace(), ZERO);
            }
            for (c, t) in b.elements().iter().enumerate() {
                let expected = if a == c { 2.0 } else { 0.0 };
                assert_eq!((&s.adjoint() * t).trace(), C64::new(expected, 0.0));
            }
        }
        let w = b.change_of_basis();
        for (a, s) in b.elements().iter().enumerate() {
            assert_eq!(w.natural().column_vec(a), s.data());
        }
        let mut expected = ComplexMatrix::zeros(4, 4);
        for s in b.elements() {
            let v = ComplexMatrix::column(s.data());
            expected = &expected + &(&v * &v.transpose());
        }
        let m = b.m_superoperator();
        assert!(m.natural().approx_eq(&expected, 1e-15));
        assert_eq!(m.natural(), &m.natural().transpose());
    }

    #[test]
    fn tilted_elements() {
        assert_eq!(
            OperatorBasis::tilted(&standard(3), &standard(3), &tol()).unwrap().elements(),
            OperatorBasis::canonical(3).elements()
        );
        let b = OperatorBasis::tilted(&standard(2), &hadamard(), &tol()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(b.element(0, 0).approx_eq(&ComplexMatrix::from_real_rows(&[&[s, s], &[0.0, 0.0]]), 1e-15));
    }

    #[test]
    fn rank_one_elements() {
        let zetas = vec![vec![ONE, ZERO], vec![ONE, ONE]];
        let b = OperatorBasis::rank_one(&zetas, &tol()).unwrap();
        assert_eq!(b.element(1, 1), &ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]));
        let v = b.validity(&tol());
        assert!(v.valid && v.correspondence_holds, "{:?}", v.reason);
        let w = v.witness.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(ComplexMatrix::outer(&w[i], &w[j]).approx_eq(b.element(i, j), 1e-12));
            }
        }
    }

    #[test]
    fn validity_examples() {
        let v = OperatorBasis::canonical(3).validity(&tol());
        assert!(v.valid);
        assert_eq!(v.witness.unwrap(), standard(3));

        let v = OperatorBasis::pauli().validity(&tol());
        assert!(!v.valid && !v.correspondence_holds);
        assert_eq!(v.reason, Reason::ChoiNotPsd);

        let v = OperatorBasis::weyl(3).validity(&tol());
        assert!(!v.valid && !v.correspondence_holds);
    }

    #[test]
    fn permuted_canonical_keeps_correspondence_but_loses_labels() {
        // Swapping e11 and e12: M = W Wᵀ is unchanged because P Pᵀ = I.
        let b = OperatorBasis::canonical(2).permuted(&[1, 0, 2, 3]).unwrap();
        assert_eq!(b.m_superoperator(), LinearMap::identity(2));
        let v = b.validity(&tol());
        assert!(v.correspondence_holds);
        assert!(!v.valid);
        assert_eq!(v.reason, Reason::WitnessMismatch);
        assert!(b.permuted(&[0, 0, 1, 2]).is_err());
    }
}
