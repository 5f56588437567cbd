//! Lattice-theoretic commutability against the operator commutator.

use qprop::numerics::{basis_vector, real_vector};
use qprop::{Subspace, Tolerance};

fn report(
    name: &str,
    a: &Subspace,
    b: &Subspace,
    tol: Tolerance,
) -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{name:<18} commutes: {:<5}  ‖[Qa, Qb]‖ = {:.3e}",
        a.commutes(b, tol)?,
        a.projector().commutator_norm(b.projector())?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let e1 = Subspace::from_span(3, &[basis_vector(3, 0)], tol)?;
    let e12 = Subspace::from_span(3, &[basis_vector(3, 0), basis_vector(3, 1)], tol)?;
    let e3 = Subspace::from_span(3, &[basis_vector(3, 2)], tol)?;
    let diagonal = Subspace::from_span(3, &[real_vector(&[1.0, 1.0, 0.0])], tol)?;

    report("e1, span(e1,e2)", &e1, &e12, tol)?;
    report("e1, e3", &e1, &e3, tol)?;
    report("e1, e1+e2", &e1, &diagonal, tol)?;
    report("span(e1,e2), e1+e2", &e12, &diagonal, tol)?;
    Ok(())
}
