//! Loads a scene file and prints one JSON record per query, as `qprop eval`
//! does.
//!
//! `cargo run --example scene_report -- crates/core/scenes/two_contexts.json`

use qprop::cli::evaluate_scene;
use qprop::scene::SceneFile;
use qprop::Tolerance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenes/two_contexts.json").into());
    let tol = Tolerance::default();
    let (scene, issues) = SceneFile::parse(&std::fs::read_to_string(&path)?)?.resolve(tol);
    for issue in &issues {
        eprintln!("{issue}");
    }
    if !issues.is_empty() {
        std::process::exit(1);
    }
    for record in evaluate_scene(&scene, tol) {
        println!("{}", serde_json::to_string(&record)?);
    }
    Ok(())
}
