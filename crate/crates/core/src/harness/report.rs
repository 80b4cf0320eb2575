use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::random::PRNG_NAME;
use crate::tolerance::Tolerances;

/// Process exit status shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Ok,
    Invalid,
    ParseError,
    InvariantViolation,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::Invalid => 1,
            ExitStatus::ParseError => 2,
            ExitStatus::InvariantViolation => 3,
        }
    }
}

/// One checked claim: a demo assertion, a basis verdict or an audited property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictSummary {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failures: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl VerdictSummary {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
            trials: None,
            failures: None,
            failing_seed: None,
            counterexample: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub command: String,
    pub version: String,
    pub prng: String,
    pub seed: u64,
    pub trials: usize,
    pub status: ExitStatus,
    pub verdicts: Vec<VerdictSummary>,
    pub spectra: Vec<Vec<f64>>,
    pub elapsed_ms: u64,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub payload: Value,
}

impl AuditReport {
    pub fn new(command: impl Into<String>, tolerances: Tolerances) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            prng: PRNG_NAME.to_string(),
            seed: 0,
            trials: 0,
            status: ExitStatus::Ok,
            verdicts: Vec::new(),
            spectra: Vec::new(),
            elapsed_ms: 0,
            tolerances,
            payload: Value::Null,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// `Ok` when every verdict passed, `Invalid` otherwise.
    pub fn settle(&mut self) {
        self.status = if self.all_passed() {
            ExitStatus::Ok
        } else {
            ExitStatus::Invalid
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let width = self.verdicts.iter().map(|v| v.name.chars().count()).max().unwrap_or(4);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} (v{}, {} seed {}, {} ms)",
            self.command, self.version, self.prng, self.seed, self.elapsed_ms
        );
        for v in &self.verdicts {
            let mark = if v.passed { "PASS" } else { "FAIL" };
            let pad = width - v.name.chars().count();
            let _ = write!(out, "  {mark}  {}{}  {}", v.name, " ".repeat(pad), v.detail);
            if let Some(seed) = v.failing_seed {
                let _ = write!(out, " [first failing seed {seed}]");
            }
            out.push('\n');
        }
        for s in &self.spectra {
            let _ = writeln!(out, "  spectrum {}", format_spectrum(s));
        }
        let _ = write!(out, "status: {:?} (exit {})", self.status, self.status.code());
        out
    }
}

pub fn format_spectrum(s: &[f64]) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|x| {
            let x = if x.abs() < 5e-13 { 0.0 } else { *x };
            format!("{x:.6}")
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settle_and_render() {
        let mut r = AuditReport::new("demo 1", Tolerances::default());
        r.verdicts.push(VerdictSummary::new("spectrum", true, "ok"));
        r.settle();
        assert_eq!(r.status, ExitStatus::Ok);
        r.verdicts.push(VerdictSummary::new("other", false, "bad"));
        r.settle();
        assert_eq!(r.status.code(), 1);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["prng"], "ChaCha8");
        assert_eq!(json["tolerances"]["psd_tol"], 1e-9);
        assert!(r.to_table().contains("FAIL  other"));
    }

    #[test]
    fn spectrum_formatting_hides_roundoff() {
        assert_eq!(format_spectrum(&[-1e-15, 2.0]), "[0.000000, 2.000000]");
    }
}
