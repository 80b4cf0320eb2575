//! Seeded random generators.
//!
//! All sampling goes through [`Sampler`], a thin wrapper over ChaCha8. Equal
//! seeds give identical output on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::basis::OperatorBasis;
use crate::channel::LinearMap;
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::supermap::{SuperMap, SuperMapBasis};
use crate::tolerance::Tolerances;

/// Name of the pseudo-random generator, recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8";

/// Smallest singular value of [`Sampler::invertible`] relative to the largest.
pub const SINGULAR_FLOOR: f64 = 0.1;

/// Families accepted by [`Sampler::basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `n²` independent complex Gaussian matrices.
    GenericGaussian,
    /// `|ζ_i⟩⟨ζ_j|` for random invertible `[ζ_1 … ζ_n]`.
    RankOneZeta,
    /// `|u_i⟩⟨v_j|` for two independent random unitaries.
    Tilted,
    /// Weyl operators conjugated by a random unitary.
    PauliLike,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [
        BasisKind::GenericGaussian,
        BasisKind::RankOneZeta,
        BasisKind::Tilted,
        BasisKind::PauliLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::GenericGaussian => "generic-gaussian",
            BasisKind::RankOneZeta => "rank-one-zeta",
            BasisKind::Tilted => "tilted",
            BasisKind::PauliLike => "pauli-like",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown basis kind '{s}'"))
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for the same seed, used to decorrelate suites.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex(&mut self) -> C64 {
        C64::new(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn vector(&mut self, n: usize) -> Vec<C64> {
        (0..n).map(|_| self.complex()).collect()
    }

    pub fn gaussian(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex())
    }

    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        self.gaussian(n, n).hermitian_part()
    }

    /// Gram–Schmidt on a Gaussian matrix; `R` has a positive diagonal, which
    /// fixes the column phases.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        loop {
            let g = self.gaussian(n, n);
            if let Some(q) = gram_schmidt(&g) {
                return q;
            }
        }
    }

    /// Gaussian matrix with singular values floored at `SINGULAR_FLOOR · σ_max`.
    pub fn invertible(&mut self, n: usize) -> ComplexMatrix {
        let g = self.gaussian(n, n);
        let (u, s, vt) = g.svd().expect("SVD of a finite matrix");
        let floor = SINGULAR_FLOOR * s[0];
        let sigma = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(s[i].max(floor), 0.0)
            } else {
                ZERO
            }
        });
        &(&u * &sigma) * &vt
    }

    /// `A ↦ Σ_k K_k A K_k†` with `kraus` Gaussian `m x n` operators.
    pub fn cp_map(&mut self, n: usize, m: usize, kraus: usize) -> LinearMap {
        let ops: Vec<_> = (0..kraus.max(1)).map(|_| self.gaussian(m, n)).collect();
        LinearMap::from_kraus(&ops).expect("uniform Kraus shapes")
    }

    /// Hermitian matrix `U diag(λ) U†` with `λ_0 = -|negative|` and the rest in `[0.1, 2)`.
    pub fn planted_negative(&mut self, side: usize) -> ComplexMatrix {
        let u = self.unitary(side);
        let mut lambda: Vec<f64> = (0..side).map(|_| self.uniform(0.1, 2.0)).collect();
        lambda[0] = -self.uniform(0.5, 1.5);
        let d = ComplexMatrix::from_fn(side, side, |i, j| {
            if i == j {
                C64::new(lambda[i], 0.0)
            } else {
                ZERO
            }
        });
        (&(&u * &d) * &u.adjoint()).hermitian_part()
    }

    /// Hermiticity-preserving map whose Choi matrix has a negative eigenvalue.
    pub fn non_cp_map(&mut self, n: usize, m: usize) -> LinearMap {
        LinearMap::from_choi(&self.planted_negative(n * m), n, m).expect("Choi shape")
    }

    /// Super-map whose representing map has `kraus` Gaussian Kraus operators.
    pub fn ccpp(&mut self, dims: [usize; 4], kraus: usize) -> SuperMap {
        let [n1, n2, n3, n4] = dims;
        let t = self.cp_map(n1 * n2, n3 * n4, kraus);
        SuperMap::from_representing(&t, dims).expect("representing map has composite dims")
    }

    /// Super-map whose representing map has a planted negative Choi eigenvalue.
    pub fn non_ccpp(&mut self, dims: [usize; 4]) -> SuperMap {
        let [n1, n2, n3, n4] = dims;
        let t = self.non_cp_map(n1 * n2, n3 * n4);
        SuperMap::from_representing(&t, dims).expect("representing map has composite dims")
    }

    /// Gaussian coefficient matrix.
    pub fn supermap(&mut self, dims: [usize; 4]) -> SuperMap {
        let [n1, n2, n3, n4] = dims;
        SuperMap::new(dims, self.gaussian(n3 * n3 * n4 * n4, n1 * n1 * n2 * n2)).expect("shape")
    }

    /// `Θ(Φ) = Ad_U ∘ Φ ∘ Ad_V` with random invertible `U`, `V`.
    pub fn sandwich(&mut self, n1: usize, n2: usize) -> SuperMap {
        let u = self.invertible(n2);
        let v = self.invertible(n1);
        SuperMap::sandwich(&u, &v).expect("square conjugations")
    }

    pub fn basis(&mut self, n: usize, kind: BasisKind) -> OperatorBasis {
        let tol = Tolerances::default();
        loop {
            let candidate = match kind {
                BasisKind::GenericGaussian => {
                    let elements = (0..n * n).map(|_| self.gaussian(n, n)).collect();
                    OperatorBasis::new(n, elements, kind.name())
                }
                BasisKind::RankOneZeta => {
                    let z = self.invertible(n);
                    let zetas: Vec<_> = (0..n).map(|c| z.column_vec(c)).collect();
                    OperatorBasis::rank_one(&zetas, &tol)
                }
                BasisKind::Tilted => {
                    let u = self.unitary(n);
                    let v = self.unitary(n);
                    let kets: Vec<_> = (0..n).map(|c| u.column_vec(c)).collect();
                    let lambdas: Vec<_> = (0..n).map(|c| v.column_vec(c)).collect();
                    OperatorBasis::tilted(&kets, &lambdas, &tol)
                }
                BasisKind::PauliLike => {
                    let u = self.unitary(n);
                    let u_adj = u.adjoint();
                    let elements = OperatorBasis::weyl(n)
                        .elements()
                        .iter()
                        .map(|w| &(&u * w) * &u_adj)
                        .collect();
                    OperatorBasis::new(n, elements, kind.name())
                }
            };
            if let Ok(basis) = candidate {
                return basis.with_label(kind.name());
            }
        }
    }

    /// Random super-map basis: `S(ℰ)` for a sandwich `S`.
    pub fn sandwich_supermap_basis(&mut self, n1: usize, n2: usize) -> SuperMapBasis {
        let s = self.sandwich(n1, n2);
        SuperMapBasis::image_of_canonical(&s)
            .expect("invertible sandwich")
            .with_label("sandwich image")
    }

    /// Random super-map basis `S(ℰ)` for a super-map `S` whose representing
    /// map is a conjugation by a random invertible matrix.
    pub fn coi_supermap_basis(&mut self, n1: usize, n2: usize) -> SuperMapBasis {
        let k = self.invertible(n1 * n2);
        let t = LinearMap::from_kraus(&[k]).expect("square Kraus operator");
        let s = SuperMap::from_representing(&t, [n1, n2, n1, n2]).expect("composite dims");
        SuperMapBasis::image_of_canonical(&s)
            .expect("invertible super-map")
            .with_label("coi image")
    }

    /// Gaussian super-map basis.
    pub fn gaussian_supermap_basis(&mut self, n1: usize, n2: usize) -> SuperMapBasis {
        loop {
            let elements = (0..n1 * n1 * n2 * n2)
                .map(|_| {
                    LinearMap::from_natural(n1, n2, self.gaussian(n2 * n2, n1 * n1)).expect("shape")
                })
                .collect();
            if let Ok(b) = SuperMapBasis::new(n1, n2, elements, "generic-gaussian") {
                return b;
            }
        }
    }
}

fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.rows();
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for c in 0..g.cols() {
        let mut v = g.column_vec(c);
        for _ in 0..2 {
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    Some(ComplexMatrix::from_fn(n, g.cols(), |i, j| cols[j][i]))
}

pub fn rand_unitary(n: usize, seed: u64) -> ComplexMatrix {
    Sampler::new(seed).unitary(n)
}

pub fn rand_invertible(n: usize, seed: u64) -> ComplexMatrix {
    Sampler::new(seed).invertible(n)
}

pub fn rand_cp_map(n: usize, m: usize, kraus: usize, seed: u64) -> LinearMap {
    Sampler::new(seed).cp_map(n, m, kraus)
}

/// CCPP super-map with 1 to 4 Kraus operators in its representing map.
pub fn rand_ccpp(dims: [usize; 4], seed: u64) -> SuperMap {
    let mut s = Sampler::new(seed);
    let kraus = 1 + s.index(4);
    s.ccpp(dims, kraus)
}

pub fn rand_basis(n: usize, kind: BasisKind, seed: u64) -> OperatorBasis {
    Sampler::new(seed).basis(n, kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        for seed in 0..10 {
            let u = rand_unitary(3, seed);
            assert!((&u.adjoint() * &u).approx_eq(&ComplexMatrix::identity(3), 1e-10));
        }
    }

    #[test]
    fn invertible_condition_bounded() {
        for seed in 0..10 {
            let k = rand_invertible(4, seed);
            assert!(k.inverse_condition() >= SINGULAR_FLOOR - 1e-9);
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(rand_unitary(2, 5), rand_unitary(2, 5));
        assert_ne!(rand_unitary(2, 5), rand_unitary(2, 6));
        assert_eq!(rand_basis(2, BasisKind::Tilted, 1), rand_basis(2, BasisKind::Tilted, 1));
        let a = Sampler::with_stream(3, 1).complex();
        let b = Sampler::with_stream(3, 2).complex();
        assert_ne!(a, b);
    }

    #[test]
    fn kinds_round_trip_names() {
        for kind in BasisKind::ALL {
            assert_eq!(kind.name().parse::<BasisKind>().unwrap(), kind);
        }
        assert!("nope".parse::<BasisKind>().is_err());
    }

    #[test]
    fn planted_maps_are_not_cp() {
        let tol = Tolerances::default();
        let mut s = Sampler::new(9);
        assert!(!s.non_cp_map(2, 3).is_cp(&tol).holds);
        assert!(s.cp_map(2, 3, 2).is_cp(&tol).holds);
        assert!(!s.non_ccpp([2, 2, 2, 2]).is_ccpp(&tol).holds);
        assert!(s.ccpp([2, 2, 2, 2], 3).is_ccpp(&tol).holds);
    }

    #[test]
    fn basis_kinds_have_expected_validity() {
        let tol = Tolerances::default();
        for seed in 0..5 {
            assert!(rand_basis(2, BasisKind::RankOneZeta, seed).validity(&tol).valid);
            assert!(!rand_basis(2, BasisKind::GenericGaussian, seed).validity(&tol).valid);
            assert!(!rand_basis(3, BasisKind::Tilted, seed).validity(&tol).valid);
            assert!(!rand_basis(2, BasisKind::PauliLike, seed).validity(&tol).valid);
        }
    }
}
