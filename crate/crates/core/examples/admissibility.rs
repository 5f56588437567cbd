//! Admissible valuations with two non-intertwined qubit contexts: the
//! context holding the state is decided, the other is left open.

use qprop::contexts::{intertwined, ContextSet};
use qprop::qubit_model::{spin_context, Axis};
use qprop::valuation::evaluate_admissible;
use qprop::{StateVector, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let z = spin_context("z", &Axis::Z, tol)?;
    let x = spin_context("x", &Axis::X, tol)?;
    println!("intertwined: {}", intertwined(&z, &x, tol)?);
    let contexts = ContextSet::new(vec![z, x])?;
    let e1 = StateVector::basis(2, 0);

    for name in ["z+", "z-", "x+", "x-"] {
        let verdict = evaluate_admissible(name, &e1, &contexts, tol)?;
        println!(
            "P_{name}: {} (Hilbert candidate {})",
            verdict.value, verdict.candidate
        );
        for check in &verdict.checks {
            println!(
                "    context {}: exclusivity {}, exhaustivity {}",
                check.context, check.exclusivity, check.exhaustivity
            );
        }
    }
    Ok(())
}
