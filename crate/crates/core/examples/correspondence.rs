//! Which super-map bases `{ℱ_β}` make "Θ CCPP ⇔ Λ^ℱ_Θ CP" true?
//! The decision is whether `Θ^N = V Vᵀ` is a conjugation; here it is
//! compared with an empirical audit over sampled super-maps.

use choi_duality::harness::audit::{empirical_supermap_audit, supermap_basis_family};
use choi_duality::random::Sampler;
use choi_duality::supermap::correspondence_check_basis;
use choi_duality::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let mut rng = Sampler::new(99);
    for family in 0..7 {
        let (basis, _) = supermap_basis_family(family, &mut rng);
        let verdict = correspondence_check_basis(&basis, &tol);
        let audit = empirical_supermap_audit(&basis, &mut rng, 30, &tol);
        println!(
            "{:<34} decision = {:<5} ({:<19}) empirical = {}",
            basis.label(),
            verdict.is_coi,
            verdict.reason.code(),
            match audit {
                None => "consistent on 30 samples".to_string(),
                Some(k) => format!("counterexample at sample {k}"),
            }
        );
    }
}
