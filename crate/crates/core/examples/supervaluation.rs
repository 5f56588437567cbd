//! Supervaluation keeps classical tautologies true even where the atoms
//! themselves have no value.

use qprop::contexts::ContextSet;
use qprop::qubit_model::{spin_context, Axis};
use qprop::valuation::{atoms_from_contexts, evaluate_supervaluation, PropExpr};
use qprop::{StateVector, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let contexts = ContextSet::new(vec![
        spin_context("z", &Axis::Z, tol)?,
        spin_context("x", &Axis::X, tol)?,
    ])?;
    let atoms = atoms_from_contexts(&contexts);
    let e1 = StateVector::basis(2, 0);

    for text in ["x+", "!x+", "x+ | !x+", "x+ & !x+", "z+", "z+ | x+"] {
        let expr: PropExpr = text.parse()?;
        let value = evaluate_supervaluation(&expr, &atoms, &e1, &contexts, tol)?;
        println!("{text:<10} {value}");
    }
    Ok(())
}
