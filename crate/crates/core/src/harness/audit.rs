//! Randomized property audits.
//!
//! Every property runs `trials` independent trials. Trial `t` draws from
//! `Sampler::with_stream(seed + t, stream)` where `stream` is fixed per
//! property, so outcomes do not depend on scheduling or on which other
//! properties run. Trials are evaluated in parallel.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::io::{BasisJson, MapJson, SuperMapJson};
use super::report::{AuditReport, VerdictSummary};
use crate::basis::OperatorBasis;
use crate::channel::{align_phase, LinearMap};
use crate::matrix::{ComplexMatrix, Factor, C64, ONE, ZERO};
use crate::random::{BasisKind, Sampler};
use crate::regroup;
use crate::supermap::{
    correspondence_check_basis, theta_of_basis, theta_of_g, ChoiType, SuperMap, SuperMapBasis,
};
use crate::tolerance::Tolerances;
use crate::verdict::Reason;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Props,
    Theorems,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "props" => Ok(Suite::Props),
            "theorems" => Ok(Suite::Theorems),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite '{s}' (props, theorems, all)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AuditConfig {
    pub trials: usize,
    pub seed: u64,
    /// Hilbert-space dimension for the operator-level properties. Super-map
    /// properties always use dimension 2.
    pub dim: usize,
    pub tol: Tolerances,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            seed: 42,
            dim: 2,
            tol: Tolerances::default(),
        }
    }
}

/// State handed to one trial of a property.
pub struct Trial<'a> {
    pub rng: Sampler,
    pub tol: &'a Tolerances,
    pub dim: usize,
    pub index: usize,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub detail: String,
    pub counterexample: Value,
}

/// `Ok(spectrum)` for a passing trial; the spectrum, if any, is reported for trial 0.
pub type TrialResult = Result<Option<Vec<f64>>, Failure>;

pub struct Property {
    pub name: &'static str,
    pub suite: Suite,
    pub check: fn(&mut Trial) -> TrialResult,
}

#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub failing_seed: Option<u64>,
    pub first_failure: Option<Failure>,
    pub spectrum: Option<Vec<f64>>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> VerdictSummary {
        let detail = match &self.first_failure {
            None => format!("{}/{} trials", self.trials, self.trials),
            Some(f) => format!("{} of {} trials failed: {}", self.failures, self.trials, f.detail),
        };
        VerdictSummary {
            name: self.name.to_string(),
            passed: self.passed(),
            detail,
            trials: Some(self.trials),
            failures: Some(self.failures),
            failing_seed: self.failing_seed,
            counterexample: self.first_failure.as_ref().map(|f| f.counterexample.clone()),
        }
    }
}

fn fail(detail: impl Into<String>, counterexample: Value) -> TrialResult {
    Err(Failure {
        detail: detail.into(),
        counterexample,
    })
}

macro_rules! ensure {
    ($cond:expr, $ce:expr, $($fmt:tt)+) => {
        if let false = $cond {
            return fail(format!($($fmt)+), $ce);
        }
    };
}

/// `|a - b| <= rel · max(1, |a|, |b|)`.
pub fn close(a: C64, b: C64, rel: f64) -> bool {
    (a - b).norm() <= rel * 1f64.max(a.norm()).max(b.norm())
}

fn map_json(m: &LinearMap) -> Value {
    serde_json::to_value(MapJson::from(m)).expect("serializable")
}

fn supermap_json(s: &SuperMap) -> Value {
    serde_json::to_value(SuperMapJson::from(s)).expect("serializable")
}

fn basis_json(b: &OperatorBasis) -> Value {
    serde_json::to_value(BasisJson::from(b)).expect("serializable")
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    serde_json::to_value(super::io::MatrixJson::from(m)).expect("serializable")
}

const SQUARE: [usize; 4] = [2, 2, 2, 2];

/// Every audited property, in reporting order.
pub fn properties() -> Vec<Property> {
    use Suite::{Props, Theorems};
    vec![
        Property { name: "kron associative and bilinear", suite: Props, check: kron_laws },
        Property { name: "partial trace matches index sum", suite: Props, check: partial_trace_laws },
        Property { name: "eigenvalues match trace moments", suite: Props, check: eigen_moments },
        Property { name: "psd invariant under unitaries", suite: Props, check: psd_unitary_invariance },
        Property { name: "rank invariant under unitaries", suite: Props, check: rank_unitary_invariance },
        Property { name: "vec round trips", suite: Props, check: vec_round_trips },
        Property { name: "Choi isomorphism is bijective", suite: Props, check: choi_bijection },
        Property { name: "apply is linear", suite: Props, check: apply_linear },
        Property { name: "tensor map acts on products", suite: Props, check: tensor_map_products },
        Property { name: "Kraus maps are CP", suite: Props, check: kraus_is_cp },
        Property { name: "PSD Choi gives CP map", suite: Props, check: psd_choi_is_cp },
        Property { name: "planted negative Choi is not CP", suite: Props, check: planted_not_cp },
        Property { name: "W reproduces basis, M symmetric", suite: Props, check: w_and_m },
        Property { name: "generalized Choi equals C of Φ∘M", suite: Props, check: generalized_choi },
        Property { name: "CCPP pairing nonnegative", suite: Props, check: prop1_self_dual },
        Property { name: "pairing symmetric", suite: Props, check: prop2_symmetric },
        Property { name: "pairing factorizes on tensors", suite: Props, check: prop3_tensor },
        Property { name: "adjoint pairing identity", suite: Props, check: prop4_adjoint },
        Property { name: "Λ_Θ equals swapped Λ of Θ*", suite: Props, check: prop5_swap },
        Property { name: "adjoint preserves pairing", suite: Props, check: prop6_adjoint_pairing },
        Property { name: "adjoint reverses composition", suite: Props, check: adjoint_composition },
        Property { name: "representing map round trips", suite: Props, check: prop7_round_trip },
        Property { name: "representing map is multiplicative", suite: Props, check: prop7_multiplicative },
        Property { name: "rank-one bases valid with witness", suite: Theorems, check: rank_one_valid },
        Property { name: "generic bases match empirical audit", suite: Theorems, check: generic_basis_audit },
        Property { name: "basis families match empirical audit", suite: Theorems, check: basis_family_audit },
        Property { name: "verdict stable under enumeration", suite: Theorems, check: enumeration_stability },
        Property { name: "conjugations are COI", suite: Theorems, check: conjugation_coi },
        Property { name: "rank>1 Choi is not COI", suite: Theorems, check: rank_two_not_coi },
        Property { name: "CCPP iff canonical Choi-type CP", suite: Theorems, check: choi_type_theorem },
        Property { name: "Θ^G recovers generator", suite: Theorems, check: theta_g_recovery },
        Property { name: "super-map bases match empirical audit", suite: Theorems, check: supermap_basis_audit },
        Property { name: "CP representing map preserves CP", suite: Theorems, check: cp_t_preserves_cp },
        Property { name: "non-CP representing map has violation", suite: Theorems, check: non_cp_t_violation },
        Property { name: "sandwich super-maps are COI", suite: Theorems, check: sandwich_coi },
    ]
}

pub fn run_property(property: &Property, stream: u64, config: &AuditConfig) -> PropertyOutcome {
    let results: Vec<TrialResult> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let mut trial = Trial {
                rng: Sampler::with_stream(config.seed.wrapping_add(index as u64), stream),
                tol: &config.tol,
                dim: config.dim,
                index,
            };
            (property.check)(&mut trial)
        })
        .collect();
    let mut outcome = PropertyOutcome {
        name: property.name,
        trials: config.trials,
        failures: 0,
        failing_seed: None,
        first_failure: None,
        spectrum: None,
    };
    for (index, result) in results.into_iter().enumerate() {
        match result {
            Ok(spectrum) => {
                if index == 0 {
                    outcome.spectrum = spectrum;
                }
            }
            Err(f) => {
                outcome.failures += 1;
                if outcome.first_failure.is_none() {
                    outcome.failing_seed = Some(config.seed.wrapping_add(index as u64));
                    outcome.first_failure = Some(f);
                }
            }
        }
    }
    outcome
}

/// Runs `name` alone, as the audit would.
pub fn run_named(name: &str, config: &AuditConfig) -> Option<PropertyOutcome> {
    properties()
        .iter()
        .enumerate()
        .find(|(_, p)| p.name == name)
        .map(|(stream, p)| run_property(p, stream as u64, config))
}

pub fn run_suite(suite: Suite, config: &AuditConfig) -> AuditReport {
    let start = Instant::now();
    let label = match suite {
        Suite::Props => "props",
        Suite::Theorems => "theorems",
        Suite::All => "all",
    };
    let mut report = AuditReport::new(format!("audit --suite {label}"), config.tol);
    report.seed = config.seed;
    report.trials = config.trials;
    for (stream, property) in properties().iter().enumerate() {
        if suite != Suite::All && property.suite != suite {
            continue;
        }
        let outcome = run_property(property, stream as u64, config);
        report.verdicts.push(outcome.summary());
        if let Some(s) = outcome.spectrum {
            report.spectra.push(s);
        }
    }
    report.payload = json!({ "dim": config.dim });
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.settle();
    report
}

// ---------------------------------------------------------------------------
// Empirical oracles.

/// Samples `maps` maps on `B(C^n)` (alternately CP and planted non-CP) and
/// checks "Φ CP ⇔ Σ h_ij ⊗ Φ(h_ij) PSD" on each. Returns the index of the
/// first disagreement.
pub fn empirical_basis_audit(
    basis: &OperatorBasis,
    rng: &mut Sampler,
    maps: usize,
    tol: &Tolerances,
) -> Option<usize> {
    let n = basis.dim();
    (0..maps).find(|&k| {
        let phi = if k % 2 == 0 {
            rng.cp_map(n, n, 1 + (k / 2) % (n * n))
        } else {
            rng.non_cp_map(n, n)
        };
        let generalized = phi.choi_matrix(basis).expect("basis matches map");
        phi.is_cp(tol).holds != generalized.is_psd(tol)
    })
}

/// Samples `samples` super-maps (first half CCPP with 1-4 Kraus operators in
/// the representing map, second half with a planted negative eigenvalue) and
/// checks "Θ CCPP ⇔ Λ^ℱ_Θ CP" on each. Returns the index of the first
/// disagreement.
pub fn empirical_supermap_audit(
    basis: &SuperMapBasis,
    rng: &mut Sampler,
    samples: usize,
    tol: &Tolerances,
) -> Option<usize> {
    let (n1, n2) = basis.dims();
    let dims = [n1, n2, n1, n2];
    (0..samples).find(|&k| {
        let theta = if k < samples.div_ceil(2) {
            rng.ccpp(dims, 1 + k % 4)
        } else {
            rng.non_ccpp(dims)
        };
        let lambda = ChoiType::new(&theta, basis).expect("basis matches super-map");
        theta.is_ccpp(tol).holds != lambda.map().is_cp(tol).holds
    })
}

/// Super-map basis families, cycled by index. Returns the basis and whether
/// the correspondence is expected to hold by construction.
pub fn supermap_basis_family(index: usize, rng: &mut Sampler) -> (SuperMapBasis, bool) {
    let n = 2;
    match index % 7 {
        0 => (rng.coi_supermap_basis(n, n), true),
        1 => (rng.sandwich_supermap_basis(n, n), true),
        2 => {
            let b1 = rng.basis(n, BasisKind::RankOneZeta);
            let b2 = rng.basis(n, BasisKind::RankOneZeta);
            (SuperMapBasis::functional(&b1, &b2).with_label("functional(rank-one, rank-one)"), true)
        }
        3 => {
            let b1 = rng.basis(n, BasisKind::GenericGaussian);
            let b2 = rng.basis(n, BasisKind::GenericGaussian);
            (SuperMapBasis::functional(&b1, &b2).with_label("functional(generic, generic)"), false)
        }
        4 => {
            let p = OperatorBasis::pauli();
            (SuperMapBasis::functional(&p, &p).with_label("functional(pauli, pauli)"), false)
        }
        5 => {
            let tilted = rng.basis(n, BasisKind::Tilted);
            let b = SuperMapBasis::functional(&OperatorBasis::canonical(n), &tilted);
            (b.with_label("functional(canonical, tilted)"), false)
        }
        _ => (rng.gaussian_supermap_basis(n, n), false),
    }
}

/// A CP input `Φ` with `Θ(Φ)` not CP, searched first among maps with Choi
/// matrix `|v⟩⟨v|` for `v` a unit vector or a sum of two, then through
/// `id ⊗ Θ` on the maximally entangled Choi input.
pub fn find_cp_violation(theta: &SuperMap, tol: &Tolerances) -> Option<(String, LinearMap)> {
    let [n1, n2, ..] = theta.dims();
    let side = n1 * n2;
    let mut candidates: Vec<Vec<C64>> = Vec::new();
    for a in 0..side {
        let mut v = vec![ZERO; side];
        v[a] = ONE;
        candidates.push(v);
        for b in a + 1..side {
            for phase in [ONE, C64::new(0.0, 1.0)] {
                let mut w = vec![ZERO; side];
                w[a] = ONE;
                w[b] = phase;
                candidates.push(w);
            }
        }
    }
    for v in &candidates {
        let phi = LinearMap::from_choi(&ComplexMatrix::outer(v, v), n1, n2).expect("Choi shape");
        let image = theta.apply(&phi).expect("input dims");
        if !image.is_cp(tol).holds {
            return Some(("canonical rank-one Choi input".into(), phi));
        }
    }
    let extended = SuperMap::identity(n1, n2).tensor(theta);
    let phi = entangled_input(n1, n2);
    let image = extended.apply(&phi).expect("input dims");
    if !image.is_cp(tol).holds {
        return Some(("maximally entangled input through id ⊗ Θ".into(), phi));
    }
    None
}

/// The CP map on `B(C^{n1}⊗C^{n1}) → B(C^{n2}⊗C^{n2})` whose Choi matrix is
/// maximally entangled between the ancilla pair and the system pair.
fn entangled_input(n1: usize, n2: usize) -> LinearMap {
    let side = n1 * n2;
    let omega: Vec<C64> = (0..side * side)
        .map(|k| if k / side == k % side { ONE } else { ZERO })
        .collect();
    // Factors (a, a', 1, 2) to the Choi order (a, 1, a', 2).
    let p = regroup::factor_permutation(&[n1, n2, n1, n2], &[0, 2, 1, 3]);
    let psi = p.apply_to(&omega);
    LinearMap::from_choi(&ComplexMatrix::outer(&psi, &psi), n1 * n1, n2 * n2).expect("Choi shape")
}

// ---------------------------------------------------------------------------
// Operator-level properties.

fn kron_laws(t: &mut Trial) -> TrialResult {
    let d = t.dim;
    let a = t.rng.gaussian(d, d + 1);
    let a2 = t.rng.gaussian(d, d + 1);
    let b = t.rng.gaussian(d + 1, d);
    let c = t.rng.gaussian(2, 3);
    let (s, r) = (t.rng.complex(), t.rng.complex());
    let ce = || json!({ "a": matrix_json(&a), "b": matrix_json(&b), "c": matrix_json(&c) });
    ensure!(a.kron(&b).kron(&c).approx_eq(&a.kron(&b.kron(&c)), 1e-12), ce(), "associativity");
    let lhs = (&a.scale(s) + &a2.scale(r)).kron(&b);
    let rhs = &a.kron(&b).scale(s) + &a2.kron(&b).scale(r);
    ensure!(lhs.approx_eq(&rhs, 1e-12), ce(), "left linearity");
    let lhs = a.kron(&(&b.scale(s) + &b.scale(r)));
    ensure!(lhs.approx_eq(&a.kron(&b).scale(s + r), 1e-12), ce(), "right linearity");
    Ok(None)
}

fn partial_trace_laws(t: &mut Trial) -> TrialResult {
    let (d1, d2) = (t.dim, t.dim + 1);
    let x = t.rng.gaussian(d1 * d2, d1 * d2);
    let ce = || json!({ "x": matrix_json(&x), "dims": [d1, d2] });
    let first = x.partial_trace(d1, d2, Factor::First).expect("square");
    let second = x.partial_trace(d1, d2, Factor::Second).expect("square");
    ensure!(close(first.trace(), x.trace(), 1e-12), ce(), "trace after tracing out first factor");
    ensure!(close(second.trace(), x.trace(), 1e-12), ce(), "trace after tracing out second factor");
    // Σ_k (⟨k| ⊗ I) x (|k⟩ ⊗ I).
    let mut oracle = ComplexMatrix::zeros(d2, d2);
    for k in 0..d1 {
        let bra = ComplexMatrix::unit(1, d1, 0, k).kron(&ComplexMatrix::identity(d2));
        oracle = &oracle + &(&(&bra * &x) * &bra.adjoint());
    }
    ensure!(first.approx_eq(&oracle, 1e-12), ce(), "index-sum oracle");
    Ok(None)
}

fn eigen_moments(t: &mut Trial) -> TrialResult {
    let n = t.dim * t.dim;
    let h = t.rng.hermitian(n);
    let ev = h.hermitian_eigenvalues(t.tol).expect("Hermitian by construction");
    let sum: f64 = ev.iter().sum();
    let sq: f64 = ev.iter().map(|x| x * x).sum();
    let ce = || json!({ "x": matrix_json(&h) });
    ensure!(close(sum.into(), h.trace(), 1e-9), ce(), "Σλ = {sum} vs Tr = {}", h.trace());
    ensure!(close(sq.into(), (&h * &h).trace(), 1e-9), ce(), "Σλ² mismatch");
    ensure!(ev.windows(2).all(|w| w[0] <= w[1]), ce(), "not ascending");
    Ok(Some(ev))
}

fn psd_unitary_invariance(t: &mut Trial) -> TrialResult {
    let n = t.dim + 1;
    let x = if t.index.is_multiple_of(2) {
        let g = t.rng.gaussian(n, n);
        &(&g * &g.adjoint()) + &ComplexMatrix::identity(n).scale(C64::new(0.1, 0.0))
    } else {
        t.rng.planted_negative(n)
    };
    let u = t.rng.unitary(n);
    let y = (&(&u * &x) * &u.adjoint()).hermitian_part();
    let ce = || json!({ "x": matrix_json(&x), "u": matrix_json(&u) });
    ensure!(x.is_psd(t.tol) == (t.index.is_multiple_of(2)), ce(), "construction not respected");
    ensure!(x.is_psd(t.tol) == y.is_psd(t.tol), ce(), "verdict changed under conjugation");
    Ok(None)
}

fn rank_unitary_invariance(t: &mut Trial) -> TrialResult {
    let n = t.dim + 2;
    let k = 1 + t.index % (n - 1);
    let g = t.rng.gaussian(n, k);
    let x = &g * &g.adjoint();
    let (u, v) = (t.rng.unitary(n), t.rng.unitary(n));
    let ce = || json!({ "x": matrix_json(&x) });
    ensure!(x.matrix_rank(t.tol) == k, ce(), "rank {} != {k}", x.matrix_rank(t.tol));
    let y = &(&u * &x) * &v;
    ensure!(y.matrix_rank(t.tol) == k, ce(), "rank changed under unitaries");
    Ok(None)
}

fn vec_round_trips(t: &mut Trial) -> TrialResult {
    let (r, c) = (t.dim, t.dim + 1);
    let a = t.rng.gaussian(r, c);
    let ce = || json!({ "a": matrix_json(&a) });
    let back = ComplexMatrix::unvec(a.vec().data(), r, c).expect("length");
    ensure!(back == a, ce(), "unvec(vec(a)) != a");
    let back = ComplexMatrix::unvec_cols(a.vec_cols().data(), r, c).expect("length");
    ensure!(back == a, ce(), "unvec_cols(vec_cols(a)) != a");
    // Σ_i |i⟩ ⊗ K|i⟩ unvecs to K under the column convention.
    let k = t.rng.gaussian(r, r);
    let mut v = vec![ZERO; r * r];
    for i in 0..r {
        for (row, z) in k.column_vec(i).into_iter().enumerate() {
            v[i * r + row] = z;
        }
    }
    ensure!(ComplexMatrix::unvec_cols(&v, r, r).expect("length") == k, ce(), "entangled vector");
    Ok(None)
}

fn choi_bijection(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dim, t.dim + 1);
    let phi = LinearMap::from_natural(n, m, t.rng.gaussian(m * m, n * n)).expect("shape");
    let ce = || json!({ "map": map_json(&phi) });
    let choi = phi.canonical_choi();
    let back = LinearMap::from_choi(&choi, n, m).expect("shape");
    ensure!(back.approx_eq(&phi, 1e-12), ce(), "map -> Choi -> map");
    let summed = phi.choi_matrix(&OperatorBasis::canonical(n)).expect("dims");
    ensure!(summed.approx_eq(&choi, 1e-12), ce(), "sum and reshuffle disagree");
    let x = t.rng.gaussian(n * m, n * m);
    let again = LinearMap::from_choi(&x, n, m).expect("shape").canonical_choi();
    ensure!(again.approx_eq(&x, 1e-12), ce(), "Choi -> map -> Choi");
    // Γ_X(A) = tr_1[(Aᵀ ⊗ I) X].
    let a = t.rng.gaussian(n, n);
    let literal = (&a.transpose().kron(&ComplexMatrix::identity(m)) * &x)
        .partial_trace(n, m, Factor::First)
        .expect("square");
    let gamma = LinearMap::from_choi(&x, n, m).expect("shape").apply(&a).expect("dims");
    ensure!(gamma.approx_eq(&literal, 1e-12), ce(), "partial-trace reconstruction");
    Ok(None)
}

fn apply_linear(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dim, t.dim + 1);
    let phi = LinearMap::from_natural(n, m, t.rng.gaussian(m * m, n * n)).expect("shape");
    let (a, b) = (t.rng.gaussian(n, n), t.rng.gaussian(n, n));
    let (s, r) = (t.rng.complex(), t.rng.complex());
    let lhs = phi.apply(&(&a.scale(s) + &b.scale(r))).expect("dims");
    let rhs = &phi.apply(&a).expect("dims").scale(s) + &phi.apply(&b).expect("dims").scale(r);
    ensure!(lhs.approx_eq(&rhs, 1e-12), json!({ "map": map_json(&phi) }), "not linear");
    Ok(None)
}

fn tensor_map_products(t: &mut Trial) -> TrialResult {
    let d = t.dim;
    let p1 = LinearMap::from_natural(d, 2, t.rng.gaussian(4, d * d)).expect("shape");
    let p2 = LinearMap::from_natural(2, d, t.rng.gaussian(d * d, 4)).expect("shape");
    let (a, b) = (t.rng.gaussian(d, d), t.rng.gaussian(2, 2));
    let lhs = p1.tensor(&p2).apply(&a.kron(&b)).expect("dims");
    let rhs = p1.apply(&a).expect("dims").kron(&p2.apply(&b).expect("dims"));
    let ce = json!({ "phi1": map_json(&p1), "phi2": map_json(&p2) });
    ensure!(lhs.approx_eq(&rhs, 1e-12), ce, "(Φ₁⊗Φ₂)(A⊗B) != Φ₁(A)⊗Φ₂(B)");
    Ok(None)
}

fn kraus_is_cp(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dim, t.dim + 1);
    let phi = t.rng.cp_map(n, m, 1 + t.index % 4);
    let v = phi.is_cp(t.tol);
    ensure!(v.holds, json!({ "map": map_json(&phi) }), "Kraus map rejected: {}", v.reason);
    Ok(Some(v.spectrum))
}

fn psd_choi_is_cp(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dim, t.dim + 1);
    let g = t.rng.gaussian(n * m, 1 + t.index % (n * m));
    let phi = LinearMap::from_choi(&(&g * &g.adjoint()), n, m).expect("shape");
    let ce = || json!({ "map": map_json(&phi) });
    ensure!(phi.is_cp(t.tol).holds, ce(), "PSD Choi rejected");
    // id_n ⊗ Φ on a random pure state stays PSD.
    let psi = t.rng.vector(n * n);
    let rho = ComplexMatrix::outer(&psi, &psi);
    let out = LinearMap::identity(n).tensor(&phi).apply(&rho).expect("dims");
    ensure!(out.is_psd(t.tol), ce(), "(id ⊗ Φ)(ρ) not PSD");
    Ok(None)
}

fn planted_not_cp(t: &mut Trial) -> TrialResult {
    let (n, m) = (t.dim, t.dim + 1);
    let phi = t.rng.non_cp_map(n, m);
    let v = phi.is_cp(t.tol);
    ensure!(!v.holds && v.reason == Reason::ChoiNotPsd, json!({ "map": map_json(&phi) }), "planted map accepted");
    Ok(Some(v.spectrum))
}

fn w_and_m(t: &mut Trial) -> TrialResult {
    let n = t.dim;
    let kind = BasisKind::ALL[t.index % 4];
    let basis = t.rng.basis(n, kind);
    let w = basis.change_of_basis();
    let ce = || json!({ "basis": basis_json(&basis) });
    for i in 0..n {
        for j in 0..n {
            let img = w.apply(&ComplexMatrix::unit(n, n, i, j)).expect("dims");
            ensure!(img.approx_eq(basis.element(i, j), 1e-12), ce(), "W(e_{i}{j}) != h_{i}{j}");
        }
    }
    ensure!(w.natural().is_invertible(t.tol), ce(), "W singular");
    let m = basis.m_superoperator();
    ensure!(m.natural().approx_eq(&m.natural().transpose(), 1e-12), ce(), "[M] not symmetric");
    Ok(None)
}

fn generalized_choi(t: &mut Trial) -> TrialResult {
    let n = t.dim;
    let basis = t.rng.basis(n, BasisKind::ALL[t.index % 4]);
    let phi = LinearMap::from_natural(n, n + 1, t.rng.gaussian((n + 1) * (n + 1), n * n)).expect("shape");
    let ce = || json!({ "basis": basis_json(&basis), "map": map_json(&phi) });
    let direct = phi.choi_matrix(&basis).expect("dims");
    let w = basis.change_of_basis();
    let omega = LinearMap::identity(n).canonical_choi();
    let lifted = w.tensor(&phi.compose(&w).expect("dims")).apply(&omega).expect("dims");
    ensure!(direct.approx_eq(&lifted, 1e-10), ce(), "Σ h⊗Φ(h) != (W ⊗ Φ∘W)(Σ e⊗e)");
    let via_m = phi.compose(&basis.m_superoperator()).expect("dims").canonical_choi();
    ensure!(direct.approx_eq(&via_m, 1e-10), ce(), "Σ h⊗Φ(h) != C of Φ∘M");
    Ok(None)
}

// ---------------------------------------------------------------------------
// Super-map algebra.

fn prop1_self_dual(t: &mut Trial) -> TrialResult {
    let a = t.rng.ccpp(SQUARE, 1 + t.index % 4);
    let b = t.rng.ccpp(SQUARE, 1 + (t.index / 4) % 4);
    let p = a.pairing(&b).expect("dims");
    let scale = ChoiType::canonical(&a).choi_matrix().frobenius_norm()
        * ChoiType::canonical(&b).choi_matrix().frobenius_norm();
    let ce = json!({ "theta1": supermap_json(&a), "theta2": supermap_json(&b) });
    ensure!(p.re >= -1e-9 * scale.max(1.0) && p.im.abs() <= 1e-9 * scale.max(1.0), ce, "pairing {p}");
    Ok(None)
}

fn prop2_symmetric(t: &mut Trial) -> TrialResult {
    let (a, b) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let (ab, ba) = (a.pairing(&b).expect("dims"), b.pairing(&a).expect("dims"));
    ensure!(close(ab, ba, 1e-9), json!({ "theta1": supermap_json(&a), "theta2": supermap_json(&b) }), "{ab} != {ba}");
    Ok(None)
}

fn prop3_tensor(t: &mut Trial) -> TrialResult {
    let (a1, a2) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let (d1, d2) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let lhs = a1.tensor(&a2).pairing(&d1.tensor(&d2)).expect("dims");
    let rhs = a1.pairing(&d1).expect("dims") * a2.pairing(&d2).expect("dims");
    ensure!(close(lhs, rhs, 1e-9), json!({ "theta1": supermap_json(&a1), "theta2": supermap_json(&a2) }), "{lhs} != {rhs}");
    Ok(None)
}

fn prop4_adjoint(t: &mut Trial) -> TrialResult {
    let theta = t.rng.supermap(SQUARE);
    let psi = LinearMap::from_natural(2, 2, t.rng.gaussian(4, 4)).expect("shape");
    let phi = LinearMap::from_natural(2, 2, t.rng.gaussian(4, 4)).expect("shape");
    let lhs = theta.adjoint().apply(&psi).expect("dims").pairing(&phi).expect("dims");
    let rhs = psi.pairing(&theta.apply(&phi).expect("dims")).expect("dims");
    ensure!(close(lhs, rhs, 1e-9), json!({ "theta": supermap_json(&theta) }), "{lhs} != {rhs}");
    Ok(None)
}

fn prop5_swap(t: &mut Trial) -> TrialResult {
    let theta = t.rng.supermap(SQUARE);
    let lambda = ChoiType::canonical(&theta);
    let swapped = ChoiType::canonical(&theta.adjoint()).swap_factors();
    ensure!(lambda.approx_eq(&swapped, 1e-9), json!({ "theta": supermap_json(&theta) }), "Λ_Θ != Λ'_Θ*");
    Ok(None)
}

fn prop6_adjoint_pairing(t: &mut Trial) -> TrialResult {
    let (a, b) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let lhs = a.adjoint().pairing(&b.adjoint()).expect("dims");
    let rhs = a.pairing(&b).expect("dims");
    ensure!(close(lhs, rhs, 1e-9), json!({ "theta1": supermap_json(&a), "theta2": supermap_json(&b) }), "{lhs} != {rhs}");
    Ok(None)
}

fn adjoint_composition(t: &mut Trial) -> TrialResult {
    let (a, b) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let lhs = a.compose(&b).expect("dims").adjoint();
    let rhs = b.adjoint().compose(&a.adjoint()).expect("dims");
    ensure!(lhs.approx_eq(&rhs, 1e-12), json!({ "theta1": supermap_json(&a) }), "(Θ₁∘Θ₂)* != Θ₂*∘Θ₁*");
    Ok(None)
}

fn prop7_round_trip(t: &mut Trial) -> TrialResult {
    let theta = t.rng.supermap(SQUARE);
    let back = SuperMap::from_representing(&theta.representing_map(), SQUARE).expect("dims");
    ensure!(back.approx_eq(&theta, 1e-9), json!({ "theta": supermap_json(&theta) }), "Θ -> T -> Θ");
    let tmap = LinearMap::from_natural(4, 4, t.rng.gaussian(16, 16)).expect("shape");
    let again = SuperMap::from_representing(&tmap, SQUARE).expect("dims").representing_map();
    ensure!(again.approx_eq(&tmap, 1e-9), json!({ "t": map_json(&tmap) }), "T -> Θ -> T");
    Ok(None)
}

fn prop7_multiplicative(t: &mut Trial) -> TrialResult {
    let (a, b) = (t.rng.supermap(SQUARE), t.rng.supermap(SQUARE));
    let ce = || json!({ "theta1": supermap_json(&a), "theta2": supermap_json(&b) });
    let lhs = a.compose(&b).expect("dims").representing_map();
    let rhs = a.representing_map().compose(&b.representing_map()).expect("dims");
    ensure!(lhs.approx_eq(&rhs, 1e-9), ce(), "T(Θ₁∘Θ₂) != T₁∘T₂");
    let s = t.rng.complex();
    let lhs = a.scale(s).try_add(&b).expect("dims").representing_map();
    let rhs = a.representing_map().scale(s).try_add(&b.representing_map()).expect("dims");
    ensure!(lhs.approx_eq(&rhs, 1e-9), ce(), "T not linear");
    Ok(None)
}

// ---------------------------------------------------------------------------
// Theorems.

fn rank_one_valid(t: &mut Trial) -> TrialResult {
    let n = t.dim + t.index % 2;
    let basis = t.rng.basis(n, BasisKind::RankOneZeta);
    let v = basis.validity(t.tol);
    let ce = || json!({ "basis": basis_json(&basis) });
    ensure!(v.valid, ce(), "rejected: {}", v.reason);
    let zetas = v.witness.as_ref().expect("valid verdict carries witness");
    let mut err = 0f64;
    for i in 0..n {
        for j in 0..n {
            let rebuilt = ComplexMatrix::outer(&zetas[i], &zetas[j]);
            let h = basis.element(i, j);
            err = err.max(rebuilt.max_abs_diff(h) / h.max_abs().max(1.0));
        }
    }
    ensure!(err < 1e-8, ce(), "witness reconstruction error {err:e}");
    Ok(Some(v.spectrum))
}

fn generic_basis_audit(t: &mut Trial) -> TrialResult {
    let n = t.dim + t.index % 2;
    let basis = t.rng.basis(n, BasisKind::GenericGaussian);
    basis_vs_empirical(t, basis)
}

fn basis_family_audit(t: &mut Trial) -> TrialResult {
    let n = t.dim + (t.index / 4) % 2;
    let basis = t.rng.basis(n, BasisKind::ALL[t.index % 4]);
    basis_vs_empirical(t, basis)
}

fn basis_vs_empirical(t: &mut Trial, basis: OperatorBasis) -> TrialResult {
    let verdict = basis.validity(t.tol);
    let disagreement = empirical_basis_audit(&basis, &mut t.rng, 50, t.tol);
    ensure!(
        verdict.correspondence_holds == disagreement.is_none(),
        json!({ "basis": basis_json(&basis) }),
        "decision {} vs empirical {} ({})",
        verdict.correspondence_holds,
        disagreement.is_none(),
        basis.label()
    );
    Ok(None)
}

fn enumeration_stability(t: &mut Trial) -> TrialResult {
    let n = t.dim;
    let basis = t.rng.basis(n, BasisKind::ALL[t.index % 4]);
    // Random relabelling σ of the double indices: P e_a = e_σ(a).
    let mut sigma: Vec<usize> = (0..n * n).collect();
    for k in (1..sigma.len()).rev() {
        sigma.swap(k, t.rng.index(k + 1));
    }
    let p = ComplexMatrix::from_fn(n * n, n * n, |r, c| if r == sigma[c] { ONE } else { ZERO });
    // Represent W in the permuted enumeration, transpose there, map back.
    let w = basis.change_of_basis();
    let w_sigma = &(&p * w.natural()) * &p.transpose();
    let wt = &(&p.transpose() * &w_sigma.transpose()) * &p;
    let m_sigma = LinearMap::from_natural(n, n, w.natural() * &wt).expect("shape");
    let m = basis.m_superoperator();
    let ce = || json!({ "basis": basis_json(&basis), "sigma": sigma });
    ensure!(m_sigma.approx_eq(&m, 1e-12), ce(), "M depends on the enumeration");
    ensure!(m_sigma.is_coi(t.tol).is_coi == m.is_coi(t.tol).is_coi, ce(), "verdict depends on the enumeration");
    Ok(None)
}

fn conjugation_coi(t: &mut Trial) -> TrialResult {
    let n = t.dim + t.index % 2;
    let k0 = t.rng.invertible(n);
    let phi = LinearMap::from_kraus(std::slice::from_ref(&k0)).expect("Kraus");
    let v = phi.is_coi(t.tol);
    let ce = || json!({ "k": matrix_json(&k0) });
    ensure!(v.is_coi, ce(), "rejected: {}", v.reason);
    let k = v.k_witness.expect("COI verdict carries witness");
    let aligned = k.scale(align_phase(&k0, &k));
    let rel = aligned.max_abs_diff(&k0) / k0.max_abs();
    ensure!(rel < 1e-8, ce(), "K recovered with relative error {rel:e}");
    Ok(Some(v.choi_spectrum))
}

fn rank_two_not_coi(t: &mut Trial) -> TrialResult {
    let n = t.dim + t.index % 2;
    let phi = t.rng.cp_map(n, n, 2 + t.index % 3);
    let v = phi.is_coi(t.tol);
    ensure!(
        !v.is_coi && v.reason == Reason::ChoiRankAboveOne,
        json!({ "map": map_json(&phi) }),
        "reason {}",
        v.reason
    );
    Ok(None)
}

fn choi_type_theorem(t: &mut Trial) -> TrialResult {
    let theta = if t.index.is_multiple_of(2) {
        t.rng.ccpp(SQUARE, 1 + (t.index / 2) % 4)
    } else {
        t.rng.non_ccpp(SQUARE)
    };
    let ccpp = theta.is_ccpp(t.tol);
    let lambda = ChoiType::canonical(&theta);
    let ce = || json!({ "theta": supermap_json(&theta) });
    ensure!(ccpp.holds == (t.index.is_multiple_of(2)), ce(), "construction not respected");
    ensure!(ccpp.holds == lambda.map().is_cp(t.tol).holds, ce(), "T and Λ_Θ disagree");
    // C_Λ is C_T with the middle factors exchanged.
    let p = regroup::factor_permutation(&[2, 2, 2, 2], &[0, 2, 1, 3]);
    let c_t = theta.representing_map().canonical_choi();
    let expected = &(&p * &c_t) * &p.transpose();
    ensure!(lambda.choi_matrix().approx_eq(&expected, 1e-10), ce(), "C_Λ != P C_T Pᵀ");
    Ok(Some(ccpp.spectrum))
}

fn theta_g_recovery(t: &mut Trial) -> TrialResult {
    let theta = t.rng.supermap(SQUARE);
    let g = ChoiType::canonical(&theta);
    let back = theta_of_g(&g).expect("square dims");
    ensure!(back.approx_eq(&theta, 1e-10), json!({ "theta": supermap_json(&theta) }), "Θ^G != Θ₀");
    let rebuilt = ChoiType::canonical(&back);
    ensure!(rebuilt.approx_eq(&g, 1e-10), json!({ "theta": supermap_json(&theta) }), "G not rebuilt");
    let (basis, _) = supermap_basis_family(t.index, &mut t.rng);
    let n = ChoiType::new(&SuperMap::identity(2, 2), &basis).expect("dims");
    let from_g = theta_of_g(&n).expect("square dims");
    ensure!(from_g.approx_eq(&theta_of_basis(&basis), 1e-10), json!({ "basis": basis.label() }), "Θ^G(𝔑) != V Vᵀ");
    Ok(None)
}

fn supermap_basis_audit(t: &mut Trial) -> TrialResult {
    let (basis, expected) = supermap_basis_family(t.index, &mut t.rng);
    let verdict = correspondence_check_basis(&basis, t.tol);
    let disagreement = empirical_supermap_audit(&basis, &mut t.rng, 30, t.tol);
    let ce = || json!({ "basis": basis.label(), "reason": verdict.reason.code() });
    ensure!(
        verdict.is_coi == disagreement.is_none(),
        ce(),
        "{}: decision {} vs empirical {}",
        basis.label(),
        verdict.is_coi,
        disagreement.is_none()
    );
    ensure!(verdict.is_coi == expected, ce(), "{}: expected {expected}", basis.label());
    Ok(None)
}

fn cp_t_preserves_cp(t: &mut Trial) -> TrialResult {
    let theta = t.rng.ccpp(SQUARE, 1 + t.index % 4);
    let ce = || json!({ "theta": supermap_json(&theta) });
    let v = theta.is_ccpp(t.tol);
    ensure!(v.holds, ce(), "CP representing map rejected: {}", v.reason);
    for k in 0..5 {
        let phi = t.rng.cp_map(2, 2, 1 + k % 4);
        ensure!(theta.apply(&phi).expect("dims").is_cp(t.tol).holds, ce(), "Θ(Φ) not CP");
    }
    let extended = SuperMap::identity(2, 2).tensor(&theta);
    for k in 0..2 {
        let phi = t.rng.cp_map(4, 4, 1 + k);
        ensure!(extended.apply(&phi).expect("dims").is_cp(t.tol).holds, ce(), "(id⊗Θ)(Φ) not CP");
    }
    Ok(Some(v.spectrum))
}

fn non_cp_t_violation(t: &mut Trial) -> TrialResult {
    let theta = t.rng.non_ccpp(SQUARE);
    let ce = || json!({ "theta": supermap_json(&theta) });
    ensure!(!theta.is_ccpp(t.tol).holds, ce(), "planted super-map accepted");
    ensure!(find_cp_violation(&theta, t.tol).is_some(), ce(), "no CP input with non-CP image found");
    Ok(None)
}

fn sandwich_coi(t: &mut Trial) -> TrialResult {
    let theta = t.rng.sandwich(2, 2);
    let v = theta.is_coi(t.tol);
    let ce = || json!({ "theta": supermap_json(&theta) });
    ensure!(v.is_coi, ce(), "rejected: {}", v.reason);
    let k = v.k_witness.expect("COI verdict carries witness");
    let k_adj = k.adjoint();
    for _ in 0..10 {
        let phi = LinearMap::from_natural(2, 2, t.rng.gaussian(4, 4)).expect("shape");
        let a = t.rng.gaussian(2, 2);
        let direct = theta.apply(&phi).expect("dims").apply(&a).expect("dims");
        // Tr_3[(Aᵀ ⊗ I)(K C_Φ K†)].
        let x = &(&k * &phi.canonical_choi()) * &k_adj;
        let formula = (&a.transpose().kron(&ComplexMatrix::identity(2)) * &x)
            .partial_trace(2, 2, Factor::First)
            .expect("square");
        ensure!(direct.approx_eq(&formula, 1e-9), ce(), "K does not reproduce Θ");
    }
    Ok(Some(v.choi_spectrum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: usize) -> AuditConfig {
        AuditConfig {
            trials,
            seed: 3,
            ..AuditConfig::default()
        }
    }

    #[test]
    fn every_property_passes_a_few_trials() {
        let config = quick(4);
        for (stream, p) in properties().iter().enumerate() {
            let outcome = run_property(p, stream as u64, &config);
            assert!(outcome.passed(), "{}: {:?}", p.name, outcome.first_failure);
        }
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::HashSet<_> = properties().iter().map(|p| p.name).collect();
        assert_eq!(names.len(), properties().len());
    }

    #[test]
    fn suites_parse() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn entangled_input_is_cp() {
        let phi = entangled_input(2, 2);
        assert!(phi.is_cp(&Tolerances::default()).holds);
        let theta = SuperMap::identity(2, 2);
        assert!(find_cp_violation(&theta, &Tolerances::default()).is_none());
    }

    #[test]
    fn transpose_representing_map_is_caught() {
        let t = LinearMap::transpose_map(4);
        let theta = SuperMap::from_representing(&t, [2, 2, 2, 2]).unwrap();
        let tol = Tolerances::default();
        assert!(!theta.is_ccpp(&tol).holds);
        assert!(find_cp_violation(&theta, &tol).is_some());
    }
}
