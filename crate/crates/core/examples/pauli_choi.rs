//! The identity channel is CP, yet its Choi matrix built from the Pauli
//! basis has a negative eigenvalue.
//!
//! cargo run --example pauli_choi

use choi_duality::{LinearMap, OperatorBasis, Tolerances};

fn main() -> choi_duality::Result<()> {
    let tol = Tolerances::default();
    let id = LinearMap::identity(2);

    let canonical = id.choi_matrix(&OperatorBasis::canonical(2))?;
    let pauli = id.choi_matrix(&OperatorBasis::pauli())?;

    println!("canonical basis: spectrum {:?}", canonical.hermitian_eigenvalues(&tol)?);
    println!("Pauli basis:     spectrum {:?}", pauli.hermitian_eigenvalues(&tol)?);
    println!("identity is CP: {}", id.is_cp(&tol).holds);
    println!("Pauli-basis Choi matrix PSD: {}", pauli.is_psd(&tol));
    Ok(())
}
