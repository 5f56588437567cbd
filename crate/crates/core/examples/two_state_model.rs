//! A qubit entangled with an environment: the qubit's gappy propositions get
//! value sets {TRUE, FALSE} and equal probabilities.
//!
//! Pass axes and environment size as arguments, e.g.
//! `cargo run --example two_state_model -- x z 3`.

use qprop::qubit_model::{run_two_state_demo, ModelConfig};
use qprop::Tolerance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut cfg = ModelConfig::default();
    if let Some(a) = args.first() {
        cfg.u_prime = a.parse()?;
    }
    if let Some(a) = args.get(1) {
        cfg.u_double_prime = a.parse()?;
    }
    if let Some(n) = args.get(2) {
        cfg.n_env = n.parse()?;
    }

    let report = run_two_state_demo(&cfg, Tolerance::default())?;
    println!("dimension {}", report.dimension);
    for (what, v) in &report.gaps_before_pasting {
        println!("before pasting  {what}: {v}");
    }
    for s in &report.states {
        let p = &s.probabilities;
        println!(
            "{}: conjunctions {:?}, gaps {} / {}, Pr = {:.3} / {:.3} ({:?})",
            s.state, s.conjunctions, s.gaps[0], s.gaps[1], p.pr_e1, p.pr_e2, p.method
        );
    }
    println!("all checks pass: {}", report.passed());
    Ok(())
}
