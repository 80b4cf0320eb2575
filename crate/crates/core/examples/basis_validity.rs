//! Deciding whether a basis of B(C^n) gives a faithful CP/positivity
//! correspondence, with the rank-one witness `h_ij = |ζ_i⟩⟨ζ_j|` when it does.

use choi_duality::random::{BasisKind, Sampler};
use choi_duality::{OperatorBasis, Tolerances};

fn report(basis: &OperatorBasis, tol: &Tolerances) {
    let v = basis.validity(tol);
    println!(
        "{:<28} valid={:<5} correspondence={:<5} reason={}",
        basis.label(),
        v.valid,
        v.correspondence_holds,
        v.reason
    );
    if let Some(zetas) = &v.witness {
        for (i, z) in zetas.iter().enumerate() {
            let shown: Vec<String> = z.iter().map(|c| format!("{:.3}{:+.3}i", c.re, c.im)).collect();
            println!("    ζ_{i} = [{}]", shown.join(", "));
        }
    }
}

fn main() {
    let tol = Tolerances::default();
    let mut rng = Sampler::new(2024);

    report(&OperatorBasis::canonical(2), &tol);
    report(&OperatorBasis::pauli(), &tol);
    report(&OperatorBasis::weyl(3), &tol);
    // Swapping e_00 and e_01 keeps M = id but destroys the rank-one form.
    let swapped = OperatorBasis::canonical(2).permuted(&[1, 0, 2, 3]).expect("permutation");
    report(&swapped.with_label("canonical, e00<->e01"), &tol);
    for kind in BasisKind::ALL {
        report(&rng.basis(3, kind), &tol);
    }
}
