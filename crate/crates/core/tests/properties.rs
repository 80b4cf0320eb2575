//! Property tests over proptest-generated operators, maps and super-maps.

use choi_duality::harness::io::{BasisJson, MatrixJson, SuperMapJson};
use choi_duality::matrix::{ONE, ZERO};
use choi_duality::supermap::{theta_of_g, ChoiType};
use choi_duality::{ComplexMatrix, Factor, LinearMap, OperatorBasis, SuperMap, Tolerances, C64};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |data| ComplexMatrix::new(rows, cols, data).expect("length"))
}

fn map(n: usize, m: usize) -> impl Strategy<Value = LinearMap> {
    matrix(m * m, n * n).prop_map(move |nat| LinearMap::from_natural(n, m, nat).expect("shape"))
}

fn supermap() -> impl Strategy<Value = SuperMap> {
    matrix(16, 16).prop_map(|c| SuperMap::new([2, 2, 2, 2], c).expect("shape"))
}

fn well_conditioned(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, n).prop_filter("condition number at most 20", |k| k.inverse_condition() > 0.05)
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 1)) {
        let lhs = &a.kron(&b) * &c.kron(&d);
        let rhs = (&a * &c).kron(&(&b * &d));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn partial_trace_of_product(a in matrix(2, 2), b in matrix(3, 3)) {
        let ab = a.kron(&b);
        prop_assert!(ab.partial_trace(2, 3, Factor::Second).unwrap().approx_eq(&a.scale(b.trace()), 1e-12));
        prop_assert!(ab.partial_trace(2, 3, Factor::First).unwrap().approx_eq(&b.scale(a.trace()), 1e-12));
    }

    #[test]
    fn vec_is_row_major(a in matrix(3, 2)) {
        let v = a.vec();
        for i in 0..3 {
            for j in 0..2 {
                prop_assert_eq!(v.data()[i * 2 + j], a[(i, j)]);
            }
        }
    }

    #[test]
    fn choi_round_trip(phi in map(2, 3)) {
        let back = LinearMap::from_choi(&phi.canonical_choi(), 2, 3).unwrap();
        prop_assert!(back.approx_eq(&phi, 1e-12));
    }

    #[test]
    fn choi_blocks_are_images(phi in map(2, 2)) {
        let c = phi.canonical_choi();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let img = phi.image_of_unit(i, j);
            for k in 0..2 {
                for l in 0..2 {
                    prop_assert_eq!(c[(i * 2 + k, j * 2 + l)], img[(k, l)]);
                }
            }
        }
    }

    #[test]
    fn kraus_maps_are_cp(k1 in matrix(3, 2), k2 in matrix(3, 2)) {
        let phi = LinearMap::from_kraus(&[k1, k2]).unwrap();
        prop_assert!(phi.is_cp(&Tolerances::default()).holds);
    }

    #[test]
    fn transpose_composed_kraus_is_not_cp(k in well_conditioned(2)) {
        // Ad_K followed by transposition has a Choi matrix with negative spectrum.
        let phi = LinearMap::transpose_map(2).compose(&LinearMap::from_kraus(&[k]).unwrap()).unwrap();
        prop_assert!(!phi.is_cp(&Tolerances::default()).holds);
    }

    #[test]
    fn conjugations_are_coi(k in well_conditioned(3)) {
        let tol = Tolerances::default();
        let v = LinearMap::from_kraus(std::slice::from_ref(&k)).unwrap().is_coi(&tol);
        prop_assert!(v.is_coi, "{}", v.reason);
        let w = v.k_witness.unwrap();
        let phase = choi_duality::channel::align_phase(&k, &w);
        prop_assert!(w.scale(phase).approx_eq(&k, 1e-8 * k.max_abs()));
    }

    #[test]
    fn rank_one_bases_are_valid(z in well_conditioned(2)) {
        let tol = Tolerances::default();
        let zetas: Vec<Vec<C64>> = (0..2).map(|i| z.column_vec(i)).collect();
        let basis = OperatorBasis::rank_one(&zetas, &tol).unwrap();
        let v = basis.validity(&tol);
        prop_assert!(v.valid, "{}", v.reason);
        let w = v.witness.unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let rebuilt = ComplexMatrix::outer(&w[i], &w[j]);
                prop_assert!(rebuilt.approx_eq(basis.element(i, j), 1e-8 * basis.element(i, j).max_abs().max(1.0)));
            }
        }
    }

    #[test]
    fn generalized_choi_is_choi_of_composition(phi in map(2, 2), raw in prop::collection::vec(matrix(2, 2), 4)) {
        let Ok(basis) = OperatorBasis::new(2, raw, "sampled") else { return Ok(()) };
        let direct = phi.choi_matrix(&basis).unwrap();
        let composed = phi.compose(&basis.m_superoperator()).unwrap().canonical_choi();
        prop_assert!(direct.approx_eq(&composed, 1e-10));
    }

    #[test]
    fn adjoint_is_an_involution(theta in supermap()) {
        prop_assert_eq!(theta.adjoint().adjoint(), theta);
    }

    #[test]
    fn pairing_symmetric_and_adjoint_invariant(a in supermap(), b in supermap()) {
        let ab = a.pairing(&b).unwrap();
        prop_assert!((ab - b.pairing(&a).unwrap()).norm() <= 1e-9 * ab.norm().max(1.0));
        let adj = a.adjoint().pairing(&b.adjoint()).unwrap();
        prop_assert!((ab - adj).norm() <= 1e-9 * ab.norm().max(1.0));
    }

    #[test]
    fn choi_type_swaps_under_adjoint(theta in supermap()) {
        let lhs = ChoiType::canonical(&theta);
        let rhs = ChoiType::canonical(&theta.adjoint()).swap_factors();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn theta_of_g_inverts_choi_type(theta in supermap()) {
        let back = theta_of_g(&ChoiType::canonical(&theta)).unwrap();
        prop_assert!(back.approx_eq(&theta, 1e-10));
    }

    #[test]
    fn representing_map_round_trip(theta in supermap()) {
        let back = SuperMap::from_representing(&theta.representing_map(), [2, 2, 2, 2]).unwrap();
        prop_assert!(back.approx_eq(&theta, 1e-10));
    }

    #[test]
    fn sandwich_supermaps_are_coi(u in well_conditioned(2), v in well_conditioned(2)) {
        let theta = SuperMap::sandwich(&u, &v).unwrap();
        prop_assert!(theta.is_coi(&Tolerances::default()).is_coi);
        prop_assert!(theta.is_ccpp(&Tolerances::default()).holds);
    }

    #[test]
    fn json_round_trip_is_bit_exact(bits in prop::collection::vec(any::<u64>(), 8)) {
        let data: Vec<C64> = bits
            .chunks(2)
            .map(|c| C64::new(finite(c[0]), finite(c[1])))
            .collect();
        let m = ComplexMatrix::new(2, 2, data).unwrap();
        let text = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
        let back = ComplexMatrix::try_from(serde_json::from_str::<MatrixJson>(&text).unwrap()).unwrap();
        for (a, b) in m.data().iter().zip(back.data()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

/// Reinterprets bits as an `f64`, mapping non-finite values to zero.
fn finite(bits: u64) -> f64 {
    let x = f64::from_bits(bits);
    if x.is_finite() { x } else { 0.0 }
}

#[test]
fn canonical_m_is_identity_and_pauli_fails() {
    let tol = Tolerances::default();
    assert_eq!(OperatorBasis::canonical(3).m_superoperator(), LinearMap::identity(3));
    let pauli = OperatorBasis::pauli().validity(&tol);
    assert!(!pauli.valid && !pauli.correspondence_holds);
}

#[test]
fn permuted_canonical_basis_is_invalid() {
    let tol = Tolerances::default();
    // Swap e_00 and e_01.
    let basis = OperatorBasis::canonical(2).permuted(&[1, 0, 2, 3]).unwrap();
    let v = basis.validity(&tol);
    assert!(!v.valid);
    assert!(v.witness.is_none());
}

#[test]
fn schema_round_trips() {
    let b = OperatorBasis::weyl(3);
    assert_eq!(OperatorBasis::try_from(BasisJson::from(&b)).unwrap(), b);
    let s = SuperMap::identity(2, 1);
    assert_eq!(SuperMap::try_from(SuperMapJson::from(&s)).unwrap(), s);
    let omega = [ONE, ZERO, ZERO, ONE];
    let m = ComplexMatrix::outer(&omega, &omega);
    assert_eq!(ComplexMatrix::try_from(MatrixJson::from(&m)).unwrap(), m);
}
