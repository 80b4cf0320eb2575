//! The four worked examples: Choi matrices of the identity map (or identity
//! super-map) built from non-canonical bases.

use serde_json::json;

use super::report::{format_spectrum, AuditReport, VerdictSummary};
use crate::basis::{pauli_matrices, OperatorBasis};
use crate::channel::LinearMap;
use crate::matrix::{ComplexMatrix, C64, I, ONE, ZERO};
use crate::supermap::{correspondence_check_basis, ChoiType, SuperMap, SuperMapBasis};
use crate::tolerance::Tolerances;

/// `{(1,1)/√2, (1,-1)/√2}`.
pub fn hadamard_lambdas() -> Vec<Vec<C64>> {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    vec![vec![s, s], vec![s, -s]]
}

/// Eigenbasis of `σ_y`: `{(1,i)/√2, (1,-i)/√2}`.
pub fn sigma_y_lambdas() -> Vec<Vec<C64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![vec![ONE * s, I * s], vec![ONE * s, -I * s]]
}

fn standard(n: usize) -> Vec<Vec<C64>> {
    (0..n)
        .map(|i| (0..n).map(|k| if k == i { ONE } else { ZERO }).collect())
        .collect()
}

/// `E_ij = |i⟩⟨λ_j|` on `C²`.
pub fn tilted_example_basis(lambdas: &[Vec<C64>], tol: &Tolerances) -> crate::Result<OperatorBasis> {
    OperatorBasis::tilted(&standard(lambdas.len()), lambdas, tol)
}

/// `ℱ̃_ijkl(A) = Tr(e_ij† A) E_kl` with `E` from [`tilted_example_basis`].
pub fn tilted_supermap_basis(lambdas: &[Vec<C64>], tol: &Tolerances) -> crate::Result<SuperMapBasis> {
    let n = lambdas.len();
    Ok(SuperMapBasis::functional(&OperatorBasis::canonical(n), &tilted_example_basis(lambdas, tol)?))
}

/// `Σ_α b_α ⊗ b_α`.
fn self_tensor_sum(basis: &OperatorBasis) -> ComplexMatrix {
    let side = basis.dim() * basis.dim();
    let mut sum = ComplexMatrix::zeros(side, side);
    for b in basis.elements() {
        sum.add_kron(ONE, b, b);
    }
    sum
}

pub fn run(example: u8, tol: &Tolerances) -> AuditReport {
    let mut report = AuditReport::new(format!("demo {example}"), *tol);
    match example {
        1 => pauli_choi(&mut report, tol),
        2 => tilted_choi(&mut report, tol),
        3 => pauli_choi_type(&mut report, tol),
        4 => tilted_choi_type(&mut report, tol),
        _ => {
            report
                .verdicts
                .push(VerdictSummary::new("example", false, format!("no example {example}; choose 1-4")));
        }
    }
    report.settle();
    report
}

fn pauli_choi(report: &mut AuditReport, tol: &Tolerances) {
    let c = LinearMap::identity(2)
        .choi_matrix(&OperatorBasis::pauli())
        .expect("basis matches map");
    let spectrum = c.psd_check(tol).spectrum;
    let expected = [-2.0, 2.0, 2.0, 2.0];
    let matches = spectrum.iter().zip(expected).all(|(a, b)| (a - b).abs() <= 1e-9);
    report.verdicts.push(VerdictSummary::new(
        "spectrum {-2,2,2,2}",
        matches,
        format_spectrum(&spectrum),
    ));
    report.verdicts.push(VerdictSummary::new(
        "not positive",
        !c.is_psd(tol),
        "identity is CP but its Pauli-basis Choi matrix is not PSD",
    ));
    report.spectra.push(spectrum);
}

fn tilted_choi(report: &mut AuditReport, tol: &Tolerances) {
    let lambdas = sigma_y_lambdas();
    let basis = tilted_example_basis(&lambdas, tol).expect("orthonormal families");
    let c = LinearMap::identity(2).choi_matrix(&basis).expect("basis matches map");

    let omega: Vec<C64> = vec![ONE, ZERO, ZERO, ONE];
    let lambda_lambda: Vec<C64> = lambdas
        .iter()
        .map(|l| ComplexMatrix::column(l).kron(&ComplexMatrix::column(l)))
        .fold(vec![ZERO; 4], |acc, v| acc.iter().zip(v.data()).map(|(a, b)| a + b).collect());
    let closed_form = ComplexMatrix::outer(&omega, &lambda_lambda);
    report.verdicts.push(VerdictSummary::new(
        "closed form (Σ|i⟩|i⟩)(Σ⟨λ|⟨λ|)",
        c.approx_eq(&closed_form, 1e-12),
        format!("max deviation {:.1e}", c.max_abs_diff(&closed_form)),
    ));

    let check = c.psd_check(tol);
    report.verdicts.push(VerdictSummary::new(
        "non-Hermitian",
        check.hermiticity_defect > 0.1,
        format!("max |C - C†| = {:.6}", check.hermiticity_defect),
    ));
    report.verdicts.push(VerdictSummary::new(
        "flagged not positive",
        !check.psd,
        "reason choi-not-hermitian",
    ));
    let verdict = basis.validity(tol);
    report.verdicts.push(VerdictSummary::new(
        "basis invalid",
        !verdict.valid,
        format!("M = W Wᵀ rejected: {}", verdict.reason),
    ));

    // A real orthogonal λ gives Σ E⊗E = |Ω⟩⟨Ω|, so it is reported but not asserted.
    let hadamard = tilted_example_basis(&hadamard_lambdas(), tol).expect("orthonormal families");
    let c_h = LinearMap::identity(2).choi_matrix(&hadamard).expect("basis matches map");
    report.payload = json!({
        "lambda": "sigma_y eigenbasis",
        "hermiticity_defect": check.hermiticity_defect,
        "hadamard_lambda": {
            "hermiticity_defect": c_h.hermiticity_defect(),
            "psd": c_h.is_psd(tol),
            "basis_valid": hadamard.validity(tol).valid,
        },
    });
    report.spectra.push(check.spectrum);
}

fn pauli_choi_type(report: &mut AuditReport, tol: &Tolerances) {
    let p = OperatorBasis::pauli();
    let basis = SuperMapBasis::functional(&p, &p);
    let c = ChoiType::new(&SuperMap::identity(2, 2), &basis)
        .expect("basis matches super-map")
        .choi_matrix();

    let conj_sum = pauli_matrices()
        .iter()
        .fold(ComplexMatrix::zeros(4, 4), |acc, s| &acc + &s.conj().kron(&s.conj()));
    let closed_form = conj_sum.kron(&self_tensor_sum(&p));
    report.verdicts.push(VerdictSummary::new(
        "closed form Σσ̄⊗σ̄ ⊗ Σσ⊗σ",
        c.approx_eq(&closed_form, 1e-12),
        format!("max deviation {:.1e}", c.max_abs_diff(&closed_form)),
    ));

    let spectrum = c.psd_check(tol).spectrum;
    let negatives = spectrum.iter().filter(|&&x| x < -tol.psd_tol).count();
    report.verdicts.push(VerdictSummary::new(
        "six negative eigenvalues",
        negatives == 6,
        format!("{negatives} below -{:e}", tol.psd_tol),
    ));
    let values_ok = spectrum
        .iter()
        .enumerate()
        .all(|(k, x)| (x - if k < 6 { -4.0 } else { 4.0 }).abs() <= 1e-9);
    report.verdicts.push(VerdictSummary::new(
        "values -4 (x6) and +4 (x10)",
        values_ok,
        format_spectrum(&spectrum),
    ));
    let verdict = correspondence_check_basis(&basis, tol);
    report.verdicts.push(VerdictSummary::new(
        "correspondence fails",
        !verdict.is_coi,
        format!("Θ^N rejected: {}", verdict.reason),
    ));
    report.spectra.push(spectrum);
}

fn tilted_choi_type(report: &mut AuditReport, tol: &Tolerances) {
    let lambdas = sigma_y_lambdas();
    let basis = tilted_supermap_basis(&lambdas, tol).expect("orthonormal families");
    let c = ChoiType::new(&SuperMap::identity(2, 2), &basis)
        .expect("basis matches super-map")
        .choi_matrix();
    let tilted = tilted_example_basis(&lambdas, tol).expect("orthonormal families");
    let closed_form = self_tensor_sum(&OperatorBasis::canonical(2)).kron(&self_tensor_sum(&tilted));
    report.verdicts.push(VerdictSummary::new(
        "closed form Σe⊗e ⊗ ΣE⊗E",
        c.approx_eq(&closed_form, 1e-12),
        format!("max deviation {:.1e}", c.max_abs_diff(&closed_form)),
    ));
    let check = c.psd_check(tol);
    report.verdicts.push(VerdictSummary::new(
        "non-Hermitian",
        !check.hermitian,
        format!("max |C - C†| = {:.6}", check.hermiticity_defect),
    ));
    report.verdicts.push(VerdictSummary::new(
        "flagged not semidefinite",
        !check.psd,
        "reason choi-not-hermitian",
    ));
    let verdict = correspondence_check_basis(&basis, tol);
    report.verdicts.push(VerdictSummary::new(
        "correspondence fails",
        !verdict.is_coi,
        format!("Θ^N rejected: {}", verdict.reason),
    ));
    report.payload = json!({
        "lambda": "sigma_y eigenbasis",
        "hermiticity_defect": check.hermiticity_defect,
    });
    report.spectra.push(check.spectrum);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::ExitStatus;

    #[test]
    fn all_demos_pass() {
        let tol = Tolerances::default();
        for example in 1..=4 {
            let r = run(example, &tol);
            assert_eq!(r.status, ExitStatus::Ok, "{}", r.to_table());
        }
        assert_eq!(run(7, &tol).status, ExitStatus::Invalid);
    }

    #[test]
    fn hadamard_lambda_gives_hermitian_choi() {
        let tol = Tolerances::default();
        let basis = tilted_example_basis(&hadamard_lambdas(), &tol).unwrap();
        let c = LinearMap::identity(2).choi_matrix(&basis).unwrap();
        assert!(c.hermiticity_defect() < 1e-15);
        assert!(c.is_psd(&tol));
        assert!(basis.validity(&tol).correspondence_holds);
    }
}
