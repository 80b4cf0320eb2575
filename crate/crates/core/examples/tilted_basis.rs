//! Choi matrices in a "tilted" basis `E_ij = |i⟩⟨λ_j|`.
//!
//! Whether `Σ E⊗E` is positive depends on λ: a real orthogonal λ (Hadamard)
//! gives `|Ω⟩⟨Ω|` again, while the σ_y eigenbasis gives a non-Hermitian matrix.

use choi_duality::harness::demo::{hadamard_lambdas, sigma_y_lambdas, tilted_example_basis};
use choi_duality::{LinearMap, Tolerances};

fn main() -> choi_duality::Result<()> {
    let tol = Tolerances::default();
    for (name, lambdas) in [("Hadamard", hadamard_lambdas()), ("σ_y eigenbasis", sigma_y_lambdas())] {
        let basis = tilted_example_basis(&lambdas, &tol)?;
        let c = LinearMap::identity(2).choi_matrix(&basis)?;
        let check = c.psd_check(&tol);
        let verdict = basis.validity(&tol);
        println!("{name}:");
        println!("  max |C - C†| = {:.3}", check.hermiticity_defect);
        println!("  PSD: {}", check.psd);
        println!("  M = W Wᵀ is a conjugation: {} ({})", verdict.correspondence_holds, verdict.reason);
    }
    Ok(())
}
