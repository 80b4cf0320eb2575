//! Tensor-factor regrouping.
//!
//! Every reordering of tensor factors in the crate goes through
//! [`permute_axes`]. A matrix whose row index is a multi-index over
//! `dims[..split_in]` and whose column index is a multi-index over the
//! remaining `dims` is viewed as a tensor with axes `dims` (row-major, first
//! axis slowest). The axes are permuted and the result is read back as a
//! matrix whose rows are the first `split_out` permuted axes.
//!
//! Factor ordering conventions used by callers:
//!
//! * Choi matrices put the input space first: `C ∈ B(H_in) ⊗ B(H_out)`.
//! * A tensor product of maps `Φ₁ ⊗ Φ₂` acts on `H_in1 ⊗ H_in2`.
//! * A Choi-type map of a super-map acts from `H1 ⊗ H3` to `H2 ⊗ H4`.

use crate::matrix::{ComplexMatrix, ZERO};

/// Output axis `k` is input axis `perm[k]`.
pub fn permute_axes(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
    split_out: usize,
) -> ComplexMatrix {
    let total: usize = dims.iter().product();
    assert_eq!(total, m.rows() * m.cols(), "axis dims do not cover matrix");
    assert_eq!(dims.len(), perm.len());
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
        seen[p] = true;
    }

    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let out_rows: usize = out_dims[..split_out].iter().product();
    let out_cols = total / out_rows;

    // Row-major strides of the input tensor, reordered to follow output axes.
    let mut in_strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        in_strides[k] = in_strides[k + 1] * dims[k + 1];
    }
    let strides: Vec<usize> = perm.iter().map(|&p| in_strides[p]).collect();

    let src = m.data();
    let mut data = vec![ZERO; total];
    let mut index = vec![0usize; out_dims.len()];
    let mut offset = 0usize;
    for slot in data.iter_mut() {
        *slot = src[offset];
        for k in (0..out_dims.len()).rev() {
            index[k] += 1;
            offset += strides[k];
            if index[k] < out_dims[k] {
                break;
            }
            offset -= strides[k] * out_dims[k];
            index[k] = 0;
        }
    }
    ComplexMatrix::new(out_rows, out_cols, data).expect("permuted shape is consistent")
}

/// Natural matrix (`m² x n²`) of a map `B(C^n) → B(C^m)` to its canonical Choi matrix.
///
/// `C[(i,k),(j,l)] = N[(k,l),(i,j)]`.
pub fn natural_to_choi(natural: &ComplexMatrix, n: usize, m: usize) -> ComplexMatrix {
    permute_axes(natural, &[m, m, n, n], &[2, 0, 3, 1], 2)
}

/// Inverse of [`natural_to_choi`].
pub fn choi_to_natural(choi: &ComplexMatrix, n: usize, m: usize) -> ComplexMatrix {
    permute_axes(choi, &[n, m, n, m], &[1, 3, 0, 2], 2)
}

/// Regroups `kron(N₁, N₂)` into the natural matrix of `Φ₁ ⊗ Φ₂`.
///
/// `Φ₁: B(C^n1) → B(C^m1)`, `Φ₂: B(C^n2) → B(C^m2)`; the kron has axes
/// `(a1,b1,a2,b2 | i1,j1,i2,j2)` and the tensor map wants
/// `(a1,a2,b1,b2 | i1,i2,j1,j2)`.
pub fn kron_to_tensor_natural(
    kron: &ComplexMatrix,
    (n1, m1): (usize, usize),
    (n2, m2): (usize, usize),
) -> ComplexMatrix {
    permute_axes(
        kron,
        &[m1, m1, m2, m2, n1, n1, n2, n2],
        &[0, 2, 1, 3, 4, 6, 5, 7],
        4,
    )
}

/// Swaps the two tensor factors on both sides of a natural matrix of a map
/// `B(A ⊗ B) → B(C ⊗ D)`, producing the map `B(B ⊗ A) → B(D ⊗ C)`.
pub fn swap_map_factors(
    natural: &ComplexMatrix,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
) -> ComplexMatrix {
    // Axes: rows (c,d,c',d'), cols (a,b,a',b').
    permute_axes(
        natural,
        &[c, d, c, d, a, b, a, b],
        &[1, 0, 3, 2, 5, 4, 7, 6],
        4,
    )
}

/// Permutation matrix sending `|x1, x2, ..⟩` (dims `dims`) to the state with
/// factors in order `perm` (output factor `k` is input factor `perm[k]`).
pub fn factor_permutation(dims: &[usize], perm: &[usize]) -> ComplexMatrix {
    let n: usize = dims.iter().product();
    let id = ComplexMatrix::identity(n);
    // Permuting the row axes of the identity gives P with P|x⟩ = |perm(x)⟩.
    let mut full_dims = dims.to_vec();
    full_dims.push(n);
    let mut full_perm = perm.to_vec();
    full_perm.push(dims.len());
    permute_axes(&id, &full_dims, &full_perm, dims.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    fn sample(rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |i, j| C64::new(i as f64, j as f64 * 0.5 + 1.0))
    }

    #[test]
    fn identity_permutation_is_noop() {
        let m = sample(6, 4);
        assert_eq!(permute_axes(&m, &[2, 3, 4], &[0, 1, 2], 2), m);
    }

    #[test]
    fn transpose_as_permutation() {
        let m = sample(3, 5);
        assert_eq!(permute_axes(&m, &[3, 5], &[1, 0], 1), m.transpose());
    }

    #[test]
    fn choi_natural_inverse() {
        let n = sample(9, 4);
        let c = natural_to_choi(&n, 2, 3);
        assert_eq!(c.shape(), (6, 6));
        assert_eq!(choi_to_natural(&c, 2, 3), n);
    }

    #[test]
    fn factor_permutation_swaps_kets() {
        let p = factor_permutation(&[2, 3], &[1, 0]);
        let u = [C64::new(1.0, 0.0), C64::new(2.0, 0.0)];
        let v = [C64::new(3.0, 0.0), C64::new(4.0, 1.0), C64::new(5.0, 0.0)];
        let uv = ComplexMatrix::column(&u).kron(&ComplexMatrix::column(&v));
        let vu = ComplexMatrix::column(&v).kron(&ComplexMatrix::column(&u));
        assert_eq!(&p * &uv, vu);
    }

    #[test]
    fn swap_factors_twice_is_identity() {
        let n = sample(36, 16);
        let once = swap_map_factors(&n, (2, 2), (2, 3));
        let twice = swap_map_factors(&once, (2, 2), (3, 2));
        assert_eq!(twice, n);
    }
}
