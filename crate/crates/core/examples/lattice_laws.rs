//! Orthocomplement, meet and join on C^3, and the failure of distributivity
//! in C^2.

use qprop::numerics::{basis_vector, real_vector};
use qprop::{Subspace, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();

    let plane = Subspace::from_span(3, &[basis_vector(3, 0), basis_vector(3, 1)], tol)?;
    let tilted = Subspace::from_span(3, &[real_vector(&[0.0, 1.0, 1.0])], tol)?;
    let line = plane.meet(
        &Subspace::from_span(3, &[real_vector(&[1.0, 1.0, 1.0]), basis_vector(3, 2)], tol)?,
        tol,
    )?;

    println!(
        "rank(plane) = {}, rank(plane^⊥) = {}",
        plane.rank(),
        plane.complement().rank()
    );
    println!("plane ∧ tilted = rank {}", plane.meet(&tilted, tol)?.rank());
    println!("plane ∨ tilted = rank {}", plane.join(&tilted, tol)?.rank());
    println!("line inside plane: {}", plane.contains(&line, tol)?);

    let a = Subspace::from_span(2, &[basis_vector(2, 0)], tol)?;
    let b = Subspace::from_span(2, &[basis_vector(2, 1)], tol)?;
    let c = Subspace::from_span(2, &[real_vector(&[1.0, 1.0])], tol)?;
    let lhs = a.meet(&b.join(&c, tol)?, tol)?;
    let rhs = a.meet(&b, tol)?.join(&a.meet(&c, tol)?, tol)?;
    println!(
        "a ∧ (b ∨ c) has rank {}, (a ∧ b) ∨ (a ∧ c) has rank {}",
        lhs.rank(),
        rhs.rank()
    );
    Ok(())
}
