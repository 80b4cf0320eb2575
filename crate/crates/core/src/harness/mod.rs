//! Demos, audits and JSON I/O.
//!
//! Each `cmd_*` function returns an [`AuditReport`] whose status carries the
//! process exit code; the binary only parses arguments and prints.

pub mod audit;
pub mod demo;
pub mod io;
pub mod report;

use std::path::Path;
use std::time::Instant;

use serde_json::json;

use self::io::{LoadError, MatrixJson};
use self::report::{format_spectrum, AuditReport, ExitStatus, VerdictSummary};
use crate::supermap::correspondence_check_basis;
use crate::tolerance::Tolerances;

pub use self::audit::{AuditConfig, Suite};

fn load_failure(command: String, tol: &Tolerances, err: LoadError) -> AuditReport {
    let mut report = AuditReport::new(command, *tol);
    let status = match err {
        LoadError::Parse(_) => ExitStatus::ParseError,
        LoadError::Invariant(_) => ExitStatus::InvariantViolation,
    };
    report.verdicts.push(VerdictSummary::new("load", false, err.to_string()));
    report.status = status;
    report
}

pub fn cmd_demo(example: u8, tol: &Tolerances) -> AuditReport {
    let start = Instant::now();
    let mut report = demo::run(example, tol);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Exit 0 iff the basis is valid (correspondence holds with a ζ-witness).
pub fn cmd_check_basis(path: &Path, tol: &Tolerances) -> AuditReport {
    let command = format!("check-basis {}", path.display());
    let start = Instant::now();
    let basis = match io::load_basis(path) {
        Ok(b) => b,
        Err(e) => return load_failure(command, tol, e),
    };
    let verdict = basis.validity(tol);
    let mut report = AuditReport::new(command, *tol);
    report.verdicts.push(VerdictSummary::new(
        "M = W Wᵀ is a conjugation",
        verdict.correspondence_holds,
        format!("reason {}", verdict.reason),
    ));
    report.verdicts.push(VerdictSummary::new(
        "rank-one ζ witness",
        verdict.valid,
        match &verdict.witness {
            Some(z) => format!("{} vectors", z.len()),
            None => "none".to_string(),
        },
    ));
    let witness: Option<Vec<Vec<[f64; 2]>>> = verdict
        .witness
        .as_ref()
        .map(|zs| zs.iter().map(|z| z.iter().map(|c| [c.re, c.im]).collect()).collect());
    report.payload = json!({
        "label": basis.label(),
        "valid": verdict.valid,
        "correspondence_holds": verdict.correspondence_holds,
        "reason": verdict.reason.code(),
        "witness": witness,
        "m_superoperator": MatrixJson::from(verdict.m_superoperator.natural()),
    });
    report.spectra.push(verdict.spectrum);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.settle();
    report
}

/// Exit 0 iff the super-map basis induces a Choi-type correspondence.
pub fn cmd_check_supermap_basis(path: &Path, tol: &Tolerances) -> AuditReport {
    let command = format!("check-supermap-basis {}", path.display());
    let start = Instant::now();
    let basis = match io::load_supermap_basis(path) {
        Ok(b) => b,
        Err(e) => return load_failure(command, tol, e),
    };
    let verdict = correspondence_check_basis(&basis, tol);
    let mut report = AuditReport::new(command, *tol);
    report.verdicts.push(VerdictSummary::new(
        "Θ^N is a conjugation",
        verdict.is_coi,
        format!("reason {}", verdict.reason),
    ));
    report.payload = json!({
        "label": basis.label(),
        "is_coi": verdict.is_coi,
        "reason": verdict.reason.code(),
        "k_witness": verdict.k_witness.as_ref().map(MatrixJson::from),
    });
    report.spectra.push(verdict.choi_spectrum);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.settle();
    report
}

/// Generalized Choi matrix of a map in a basis, with its positivity verdict.
/// Exit 0 iff the matrix is PSD.
pub fn cmd_choi(map_path: &Path, basis_path: &Path, tol: &Tolerances) -> AuditReport {
    let command = format!("choi --map {} --basis {}", map_path.display(), basis_path.display());
    let start = Instant::now();
    let map = match io::load_map(map_path) {
        Ok(m) => m,
        Err(e) => return load_failure(command, tol, e),
    };
    let basis = match io::load_basis(basis_path) {
        Ok(b) => b,
        Err(e) => return load_failure(command, tol, e),
    };
    let mut report = AuditReport::new(command, *tol);
    let choi = match map.choi_matrix(&basis) {
        Ok(c) => c,
        Err(e) => {
            report.verdicts.push(VerdictSummary::new("dimensions", false, e.to_string()));
            report.status = ExitStatus::InvariantViolation;
            return report;
        }
    };
    let check = choi.psd_check(tol);
    report.verdicts.push(VerdictSummary::new(
        "Choi matrix PSD",
        check.psd,
        format!(
            "hermiticity defect {:.3e}, spectrum {}",
            check.hermiticity_defect,
            format_spectrum(&check.spectrum)
        ),
    ));
    report.payload = json!({
        "choi_matrix": MatrixJson::from(&choi),
        "hermitian": check.hermitian,
        "map_is_cp": map.is_cp(tol).holds,
    });
    report.spectra.push(check.spectrum);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.settle();
    report
}

pub fn cmd_audit(suite: Suite, config: &AuditConfig) -> AuditReport {
    audit::run_suite(suite, config)
}
