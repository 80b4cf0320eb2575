//! Recovering K from a conjugation map `Φ(X) = K X K†`, and the rejection
//! reasons for maps that are not of that form.

use choi_duality::channel::align_phase;
use choi_duality::random::Sampler;
use choi_duality::{LinearMap, Tolerances};

fn main() -> choi_duality::Result<()> {
    let tol = Tolerances::default();
    let mut rng = Sampler::new(7);

    let k = rng.invertible(3);
    let phi = LinearMap::from_kraus(std::slice::from_ref(&k))?;
    let verdict = phi.is_coi(&tol);
    let witness = verdict.k_witness.expect("conjugation is a COI");
    let aligned = witness.scale(align_phase(&k, &witness));
    println!("Ad_K: is_coi = {}, |K - e^(iθ)K̂|max = {:.2e}", verdict.is_coi, aligned.max_abs_diff(&k));

    let cases = [
        ("two Kraus operators", rng.cp_map(3, 3, 2)),
        ("planted negative Choi", rng.non_cp_map(3, 3)),
        ("transpose", LinearMap::transpose_map(3)),
        ("zero map", LinearMap::zero(3, 3)),
        ("rectangular", rng.cp_map(2, 3, 1)),
    ];
    for (name, map) in cases {
        println!("{name:<22} is_coi = {:<5} reason = {}", map.is_coi(&tol).is_coi, map.is_coi(&tol).reason);
    }
    Ok(())
}
