//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Criteria that cannot hold as stated are still evaluated literally and
//! listed in `UNATTAINABLE`; the process fails only if some other criterion
//! fails.

use std::time::{Duration, Instant};

use choi_duality::harness::audit::{run_named, run_suite, AuditConfig, Suite};
use choi_duality::harness::demo::{hadamard_lambdas, sigma_y_lambdas, tilted_example_basis, tilted_supermap_basis};
use choi_duality::supermap::correspondence_check_basis;
use choi_duality::{ChoiType, LinearMap, OperatorBasis, SuperMap, SuperMapBasis, Tolerances};

/// A real orthogonal λ makes `Σ E⊗E = |Ω⟩⟨Ω|`, which is Hermitian and PSD.
const UNATTAINABLE: &[u8] = &[2];

struct Line {
    id: u8,
    passed: bool,
    detail: String,
}

fn median_time<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut times = Vec::with_capacity(runs);
    let mut last = None;
    for _ in 0..runs {
        let start = Instant::now();
        last = Some(f());
        times.push(start.elapsed());
    }
    times.sort();
    (last.expect("runs > 0"), times[runs / 2])
}

fn outcome_line(names: &[&str], trials: usize, seed: u64) -> (bool, String) {
    let config = AuditConfig { trials, seed, dim: 2, tol: Tolerances::default() };
    let mut passed = true;
    let mut parts = Vec::new();
    for name in names {
        let outcome = run_named(name, &config).unwrap_or_else(|| panic!("unknown property {name}"));
        passed &= outcome.passed();
        parts.push(format!("{name}: {}/{}", trials - outcome.failures, trials));
    }
    (passed, parts.join("; "))
}

fn criterion_1(tol: &Tolerances) -> Line {
    let pauli = OperatorBasis::pauli();
    let (spectrum, t) = median_time(21, || {
        LinearMap::identity(2).choi_matrix(&pauli).unwrap().hermitian_eigenvalues(tol).unwrap()
    });
    let expected = [-2.0, 2.0, 2.0, 2.0];
    let exact = spectrum.iter().zip(expected).all(|(a, b)| (a - b).abs() <= 1e-9);
    Line {
        id: 1,
        passed: exact && t < Duration::from_millis(1),
        detail: format!("spectrum {spectrum:.9?}, median {t:?}"),
    }
}

fn criterion_2(tol: &Tolerances) -> Line {
    let verdict = |lambdas: Vec<Vec<_>>| {
        let basis = tilted_example_basis(&lambdas, tol).unwrap();
        let c = LinearMap::identity(2).choi_matrix(&basis).unwrap();
        (c.hermiticity_defect(), c.is_psd(tol))
    };
    let (defect, psd) = verdict(hadamard_lambdas());
    let (y_defect, y_psd) = verdict(sigma_y_lambdas());
    Line {
        id: 2,
        passed: defect > 0.1 && !psd,
        detail: format!(
            "Hadamard λ: max|C-C†| = {defect:.3e}, psd = {psd}; σ_y eigenbasis λ: max|C-C†| = {y_defect:.3}, psd = {y_psd}"
        ),
    }
}

fn criterion_3(tol: &Tolerances) -> Line {
    let p = OperatorBasis::pauli();
    let basis = SuperMapBasis::functional(&p, &p);
    let id = SuperMap::identity(2, 2);
    let (spectrum, t) = median_time(11, || {
        ChoiType::new(&id, &basis).unwrap().choi_matrix().hermitian_eigenvalues(tol).unwrap()
    });
    let negatives = spectrum.iter().filter(|&&x| x < -1e-9).count();
    let values = spectrum
        .iter()
        .enumerate()
        .all(|(k, x)| (x - if k < 6 { -4.0 } else { 4.0 }).abs() <= 1e-9);
    Line {
        id: 3,
        passed: negatives == 6 && values && t < Duration::from_millis(50),
        detail: format!("{negatives} negative, values ±4: {values}, median {t:?}"),
    }
}

fn criterion_4(tol: &Tolerances) -> Line {
    let basis = tilted_supermap_basis(&sigma_y_lambdas(), tol).unwrap();
    let c = ChoiType::new(&SuperMap::identity(2, 2), &basis).unwrap().choi_matrix();
    let check = c.psd_check(tol);
    let correspondence = correspondence_check_basis(&basis, tol);
    Line {
        id: 4,
        passed: !check.hermitian && !check.psd,
        detail: format!(
            "σ_y eigenbasis λ: max|C-C†| = {:.3}, psd = {}, correspondence {}",
            check.hermiticity_defect, check.psd, correspondence.reason
        ),
    }
}

fn main() {
    let tol = Tolerances::default();
    let mut lines = vec![criterion_1(&tol), criterion_2(&tol), criterion_3(&tol), criterion_4(&tol)];

    let suites: [(u8, &[&str], usize); 6] = [
        (5, &["rank-one bases valid with witness", "generic bases match empirical audit"], 200),
        (6, &["conjugations are COI", "rank>1 Choi is not COI"], 200),
        (
            7,
            &[
                "pairing symmetric",
                "pairing factorizes on tensors",
                "adjoint pairing identity",
                "Λ_Θ equals swapped Λ of Θ*",
                "adjoint preserves pairing",
            ],
            100,
        ),
        (8, &["representing map round trips", "representing map is multiplicative"], 100),
        (9, &["super-map bases match empirical audit"], 50),
        (10, &["sandwich super-maps are COI"], 100),
    ];
    for (id, names, trials) in suites {
        let (mut passed, mut detail) = outcome_line(names, trials, 42);
        if id == 9 {
            let (p, d) = outcome_line(
                &["CP representing map preserves CP", "non-CP representing map has violation"],
                100,
                42,
            );
            passed &= p;
            detail = format!("{detail}; {d}");
        }
        lines.push(Line { id, passed, detail });
    }

    let config = AuditConfig { trials: 100, seed: 42, dim: 2, tol };
    let start = Instant::now();
    let first = run_suite(Suite::All, &config);
    let elapsed = start.elapsed();
    let second = run_suite(Suite::All, &config);
    let same = first.verdicts == second.verdicts && first.spectra == second.spectra;
    lines.push(Line {
        id: 11,
        passed: first.all_passed() && elapsed < Duration::from_secs(60) && same,
        detail: format!(
            "{} properties, all passed = {}, {elapsed:.1?}, reproducible = {same}",
            first.verdicts.len(),
            first.all_passed()
        ),
    });

    let mut unexpected = Vec::new();
    for line in &lines {
        let mark = if line.passed { "PASS" } else { "FAIL" };
        let note = if UNATTAINABLE.contains(&line.id) { " (unattainable as stated)" } else { "" };
        println!("criterion {:>2}: {mark}{note}  {}", line.id, line.detail);
        if !line.passed && !UNATTAINABLE.contains(&line.id) {
            unexpected.push(line.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("failed criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
