//! Two-valued truth in the full Hilbert lattice: a proposition is true when
//! the state lies in its subspace, false otherwise.

use qprop::numerics::{basis_vector, c, ComplexVector};
use qprop::valuation::{evaluate_general, evaluate_hilbert};
use qprop::{StateVector, Subspace, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let e1 = Subspace::from_span(2, &[basis_vector(2, 0)], tol)?;

    let states = [
        ("member", StateVector::basis(2, 0)),
        ("orthogonal", StateVector::basis(2, 1)),
        (
            "oblique",
            StateVector::new(ComplexVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]), tol)?,
        ),
    ];
    for (name, state) in &states {
        println!(
            "{name:<10} span(e1) is {}",
            evaluate_hilbert(&e1, state, tol)?
        );
    }

    // With a preparation subspace larger than the ray.
    let h_psi = Subspace::whole(2);
    let oblique = &states[2].1;
    println!(
        "oblique, H_psi = C^2: {}",
        evaluate_general(&h_psi, &e1, oblique, tol)?
    );
    Ok(())
}
