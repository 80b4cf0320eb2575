//! Structured results returned by the decision procedures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::ComplexMatrix;
use crate::tolerance::Tolerances;

/// Why a decision procedure answered the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    #[serde(rename = "ok")]
    Ok,
    /// Input and output dimensions differ, so no invertible `K` can exist.
    #[serde(rename = "non-square")]
    NonSquare,
    /// The Choi matrix is not Hermitian, hence not positive.
    #[serde(rename = "choi-not-hermitian")]
    ChoiNotHermitian,
    #[serde(rename = "choi-not-psd")]
    ChoiNotPsd,
    #[serde(rename = "choi-rank>1")]
    ChoiRankAboveOne,
    #[serde(rename = "K-singular")]
    KSingular,
    /// The recovered witness does not reproduce the input.
    #[serde(rename = "witness-mismatch")]
    WitnessMismatch,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Ok => "ok",
            Reason::NonSquare => "non-square",
            Reason::ChoiNotHermitian => "choi-not-hermitian",
            Reason::ChoiNotPsd => "choi-not-psd",
            Reason::ChoiRankAboveOne => "choi-rank>1",
            Reason::KSingular => "K-singular",
            Reason::WitnessMismatch => "witness-mismatch",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Yes/no answer of a positivity-type test, with the evidence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub reason: Reason,
    /// Ascending eigenvalues of the (Hermitian part of the) tested matrix.
    pub spectrum: Vec<f64>,
    pub hermiticity_defect: f64,
    pub tolerances: Tolerances,
}

/// Result of a complete-order-isomorphism test.
///
/// When `is_coi` holds, `k_witness` is an invertible `K` with `Φ(X) = K X K†`,
/// gauged so that the first nonzero entry of `vec_cols(K)` is real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct CoiVerdict {
    pub is_coi: bool,
    pub k_witness: Option<ComplexMatrix>,
    pub reason: Reason,
    pub choi_spectrum: Vec<f64>,
}

impl CoiVerdict {
    pub(crate) fn rejected(reason: Reason, choi_spectrum: Vec<f64>) -> Self {
        Self {
            is_coi: false,
            k_witness: None,
            reason,
            choi_spectrum,
        }
    }
}
