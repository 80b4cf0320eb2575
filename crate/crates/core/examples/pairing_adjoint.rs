//! The bilinear pairing `⟨Θ₁, Θ₂⟩ = Tr(C_{Λ₁}ᵀ C_{Λ₂})` and its behaviour
//! under adjoints and tensor products.

use choi_duality::random::Sampler;

fn main() -> choi_duality::Result<()> {
    let mut rng = Sampler::new(3);
    let dims = [2, 2, 2, 2];
    let (a, b) = (rng.supermap(dims), rng.supermap(dims));

    println!("⟨Θ₁,Θ₂⟩   = {:.6}", a.pairing(&b)?);
    println!("⟨Θ₂,Θ₁⟩   = {:.6}", b.pairing(&a)?);
    println!("⟨Θ₁*,Θ₂*⟩ = {:.6}", a.adjoint().pairing(&b.adjoint())?);

    let (c, d) = (rng.ccpp(dims, 1), rng.ccpp(dims, 3));
    println!("two CCPP super-maps pair to {:.6}", c.pairing(&d)?);

    let product = a.tensor(&c).pairing(&b.tensor(&d))?;
    println!("⟨Θ₁⊗Θ₃, Θ₂⊗Θ₄⟩ = {product:.6}");
    println!("⟨Θ₁,Θ₂⟩⟨Θ₃,Θ₄⟩  = {:.6}", a.pairing(&b)? * c.pairing(&d)?);
    Ok(())
}
