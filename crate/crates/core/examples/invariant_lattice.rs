//! The Boolean lattice generated by a context: every subset sum of its
//! members, with a check of commutativity, closure and distributivity.

use qprop::contexts::{generated_lattice, lattice_position};
use qprop::qubit_model::{build_se_context, ModelConfig};
use qprop::{Subspace, Tolerance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tol = Tolerance::default();
    let context = build_se_context(&ModelConfig::default(), tol)?;
    let lattice = generated_lattice(&context)?;

    for e in lattice.elements() {
        println!(
            "{:>2}  rank {}  {{{}}}",
            e.subset,
            e.subspace.rank(),
            lattice.generator_labels(e.subset).join(", ")
        );
    }
    let summary = lattice.boolean_check(tol, 4)?;
    println!(
        "Boolean: {}  ({} distributive triples checked)",
        summary.passed(),
        summary.distributive_triples_checked.unwrap_or(0)
    );

    let outsider = Subspace::from_span(
        4,
        &[qprop::numerics::real_vector(&[1.0, 1.0, 1.0, 1.0])],
        tol,
    )?;
    println!(
        "uniform ray in lattice: {:?}",
        lattice_position(&outsider, &context, tol)
    );
    Ok(())
}
