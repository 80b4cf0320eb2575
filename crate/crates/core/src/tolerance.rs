//! Numerical tolerances shared by every decision procedure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Thresholds used when turning floating-point results into yes/no answers.
///
/// All fields are strictly positive. `Default` gives `1e-9` everywhere, which
/// is comfortable for the dimensions this crate targets (at most a few
/// hundred, typically 16).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute bound on `max |x - x†|` for a matrix to count as Hermitian.
    pub hermiticity_tol: f64,
    /// A Hermitian matrix is PSD when `λ_min >= -psd_tol * max(1, |λ|_max)`.
    pub psd_tol: f64,
    /// Singular values below `rank_rel_tol * σ_max` do not count towards rank.
    pub rank_rel_tol: f64,
    /// A matrix is invertible when `σ_min > invertibility_rel_tol * σ_max`.
    pub invertibility_rel_tol: f64,
    /// Entrywise tolerance for matrix equality checks, scaled by `max(1, |x|_max)`.
    pub equality_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity_tol: 1e-9,
            psd_tol: 1e-9,
            rank_rel_tol: 1e-9,
            invertibility_rel_tol: 1e-9,
            equality_tol: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.fields() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    fn fields(&self) -> [(&'static str, f64); 5] {
        [
            ("hermiticity_tol", self.hermiticity_tol),
            ("psd_tol", self.psd_tol),
            ("rank_rel_tol", self.rank_rel_tol),
            ("invertibility_rel_tol", self.invertibility_rel_tol),
            ("equality_tol", self.equality_tol),
        ]
    }

    /// Applies a `key=value` override such as `psd_tol=1e-7`.
    pub fn set_override(&mut self, spec: &str) -> Result<()> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| Error::InvalidTolerance(format!("expected key=value, got {spec:?}")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTolerance(format!("not a number: {value:?}")))?;
        let mut updated = *self;
        let slot = match key.trim() {
            "hermiticity_tol" => &mut updated.hermiticity_tol,
            "psd_tol" => &mut updated.psd_tol,
            "rank_rel_tol" => &mut updated.rank_rel_tol,
            "invertibility_rel_tol" => &mut updated.invertibility_rel_tol,
            "equality_tol" => &mut updated.equality_tol,
            other => return Err(Error::InvalidTolerance(format!("unknown key {other:?}"))),
        };
        *slot = value;
        updated.validate()?;
        *self = updated;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let tol = Tolerances::default();
        tol.validate().unwrap();
        assert_eq!(tol.psd_tol, 1e-9);
    }

    #[test]
    fn overrides() {
        let mut tol = Tolerances::default();
        tol.set_override("psd_tol=1e-6").unwrap();
        assert_eq!(tol.psd_tol, 1e-6);
        assert!(tol.set_override("psd_tol=0").is_err());
        assert!(tol.set_override("bogus=1").is_err());
        assert!(tol.set_override("rank_rel_tol").is_err());
    }
}
