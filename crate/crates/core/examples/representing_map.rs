//! The representing map `T_Θ(x) = C_{Θ(Γ_x)}` turns super-maps into ordinary
//! maps: composition becomes composition, CCPP becomes CP, and sandwiches
//! `Φ ↦ U∘Φ∘V` become conjugations by `Vᵀ ⊗ U`.

use choi_duality::random::Sampler;
use choi_duality::{LinearMap, SuperMap, Tolerances};

fn main() -> choi_duality::Result<()> {
    let tol = Tolerances::default();
    let mut rng = Sampler::new(5);
    let dims = [2, 2, 2, 2];

    let (a, b) = (rng.supermap(dims), rng.supermap(dims));
    let t_ab = a.compose(&b)?.representing_map();
    let ta_tb = a.representing_map().compose(&b.representing_map())?;
    println!("T(Θ₁∘Θ₂) = T₁∘T₂: {}", t_ab.approx_eq(&ta_tb, 1e-9));

    let back = SuperMap::from_representing(&a.representing_map(), dims)?;
    println!("round trip: {}", back.approx_eq(&a, 1e-9));

    let (u, v) = (rng.invertible(2), rng.invertible(2));
    let sandwich = SuperMap::sandwich(&u, &v)?;
    let expected = LinearMap::from_kraus(&[v.transpose().kron(&u)])?;
    println!("sandwich T = Ad(Vᵀ⊗U): {}", sandwich.representing_map().approx_eq(&expected, 1e-9));
    println!("sandwich is COI: {}", sandwich.is_coi(&tol).is_coi);
    Ok(())
}
