use crate::basis::OperatorBasis;
use crate::channel::LinearMap;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tolerance::Tolerances;

/// An ordered basis `{ℱ_β}` of `L(B(C^n1), B(C^n2))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMapBasis {
    n1: usize,
    n2: usize,
    elements: Vec<LinearMap>,
    label: String,
}

impl SuperMapBasis {
    pub fn new(n1: usize, n2: usize, elements: Vec<LinearMap>, label: impl Into<String>) -> Result<Self> {
        let expected = n1 * n1 * n2 * n2;
        if expected == 0 || elements.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "a basis of L(B(C^{n1}),B(C^{n2})) needs {expected} elements, got {}",
                elements.len()
            )));
        }
        if let Some(bad) = elements.iter().find(|e| (e.in_dim(), e.out_dim()) != (n1, n2)) {
            return Err(Error::DimensionMismatch(format!(
                "elements must map C^{n1} -> C^{n2}, found C^{} -> C^{}",
                bad.in_dim(),
                bad.out_dim()
            )));
        }
        let basis = Self {
            n1,
            n2,
            elements,
            label: label.into(),
        };
        let rank = basis.coords_matrix().matrix_rank(&Tolerances::default());
        if rank != expected {
            return Err(Error::DependentBasis { rank, expected });
        }
        Ok(basis)
    }

    /// `ℰ_ijkl(A) = Tr(e_ij† A) e_kl` at ordinal `ord(i,j)·n2² + ord(k,l)`.
    pub fn canonical(n1: usize, n2: usize) -> Self {
        let (s1, s2) = (n1 * n1, n2 * n2);
        let elements = (0..s1 * s2)
            .map(|alpha| {
                let natural = ComplexMatrix::unit(s2, s1, alpha % s2, alpha / s2);
                LinearMap::from_natural(n1, n2, natural).expect("unit natural matrix")
            })
            .collect();
        Self {
            n1,
            n2,
            elements,
            label: format!("canonical({n1},{n2})"),
        }
    }

    /// `ℱ_ij(A) = Tr(b1_i† A) b2_j` at ordinal `i·|b2| + j`.
    pub fn functional(b1: &OperatorBasis, b2: &OperatorBasis) -> Self {
        let (n1, n2) = (b1.dim(), b2.dim());
        let mut elements = Vec::with_capacity(b1.elements().len() * b2.elements().len());
        for x in b1.elements() {
            let dual = ComplexMatrix::column(x.conj().data()).transpose();
            for y in b2.elements() {
                let natural = &ComplexMatrix::column(y.data()) * &dual;
                elements.push(LinearMap::from_natural(n1, n2, natural).expect("rank-one natural matrix"));
            }
        }
        Self {
            n1,
            n2,
            elements,
            label: format!("functional({}, {})", b1.label(), b2.label()),
        }
    }

    /// `ℱ_β = S(ℰ_β)` for an invertible super-map `S`.
    pub fn image_of_canonical(s: &super::SuperMap) -> Result<Self> {
        let [n1, n2, n3, n4] = s.dims();
        if (n1, n2) != (n3, n4) {
            return Err(Error::DimensionMismatch(
                "basis image needs a super-map from a space to itself".into(),
            ));
        }
        let elements = Self::canonical(n1, n2)
            .elements
            .iter()
            .map(|e| s.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n1, n2, elements, "image of canonical")
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn elements(&self) -> &[LinearMap] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `V`: column `β` holds the canonical coordinates of `ℱ_β`.
    ///
    /// `ℰ` is orthonormal for the bilinear pairing, so the coordinates are
    /// read off directly without solving a system.
    pub fn coords_matrix(&self) -> ComplexMatrix {
        let side = self.elements.len();
        let mut v = ComplexMatrix::zeros(side, side);
        for (beta, f) in self.elements.iter().enumerate() {
            v.set_column(beta, &f.coords());
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{C64, ZERO};

    #[test]
    fn canonical_action() {
        let one = SuperMapBasis::canonical(1, 1);
        assert_eq!(one.elements(), &[LinearMap::identity(1)]);

        let b = SuperMapBasis::canonical(2, 3);
        assert_eq!(b.elements().len(), 36);
        for (alpha, e) in b.elements().iter().enumerate() {
            let (ij, kl) = (alpha / 9, alpha % 9);
            for pq in 0..4 {
                let out = e.apply(&ComplexMatrix::unit(2, 2, pq / 2, pq % 2)).unwrap();
                let expected = if pq == ij {
                    ComplexMatrix::unit(3, 3, kl / 3, kl % 3)
                } else {
                    ComplexMatrix::zeros(3, 3)
                };
                assert_eq!(out, expected);
            }
        }
        assert_eq!(b.coords_matrix(), ComplexMatrix::identity(36));
        assert!(SuperMapBasis::new(2, 2, SuperMapBasis::canonical(2, 2).elements, "copy").is_ok());
    }

    #[test]
    fn functional_of_canonical_is_canonical() {
        let b = SuperMapBasis::functional(&OperatorBasis::canonical(2), &OperatorBasis::canonical(3));
        assert_eq!(b.elements(), SuperMapBasis::canonical(2, 3).elements());
    }

    #[test]
    fn pauli_functional_action() {
        let p = OperatorBasis::pauli();
        let b = SuperMapBasis::functional(&p, &p);
        assert!(SuperMapBasis::new(2, 2, b.elements().to_vec(), "copy").is_ok());
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64 + 0.5, j as f64 - 0.25));
        for i in 0..4 {
            for j in 0..4 {
                let s = &p.elements()[i];
                let expected = p.elements()[j].scale((&s.adjoint() * &a).trace());
                assert!(b.elements()[i * 4 + j].apply(&a).unwrap().approx_eq(&expected, 1e-14));
            }
        }
    }

    #[test]
    fn constructor_errors() {
        assert!(SuperMapBasis::new(2, 2, vec![LinearMap::identity(2); 16], "repeated").is_err());
        assert!(SuperMapBasis::new(2, 2, vec![LinearMap::identity(2); 3], "short").is_err());
        let zero = LinearMap::from_natural(2, 2, ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(zero.coords(), vec![ZERO; 16]);
    }
}
