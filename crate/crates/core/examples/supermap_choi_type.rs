//! Choi-type representations `Λ_Θ = Σ ℰ_α ⊗ Θ(ℰ_α)` of super-maps, and the
//! CCPP test through the Choi matrix of `Λ_Θ`.

use choi_duality::random::Sampler;
use choi_duality::{ChoiType, OperatorBasis, SuperMap, SuperMapBasis, Tolerances};

fn main() -> choi_duality::Result<()> {
    let tol = Tolerances::default();
    let mut rng = Sampler::new(11);
    let dims = [2, 2, 2, 2];

    for (name, theta) in [
        ("identity", SuperMap::identity(2, 2)),
        ("random CCPP", rng.ccpp(dims, 2)),
        ("planted non-CCPP", rng.non_ccpp(dims)),
    ] {
        let lambda = ChoiType::canonical(&theta);
        println!(
            "{name:<17} Λ_Θ CP = {:<5} CCPP = {}",
            lambda.map().is_cp(&tol).holds,
            theta.is_ccpp(&tol).holds
        );
    }

    // The Pauli functional basis breaks the correspondence for Θ = id.
    let p = OperatorBasis::pauli();
    let basis = SuperMapBasis::functional(&p, &p);
    let c = ChoiType::new(&SuperMap::identity(2, 2), &basis)?.choi_matrix();
    println!("Pauli functional basis, Θ = id: spectrum {:?}", c.hermitian_eigenvalues(&tol)?);
    Ok(())
}
