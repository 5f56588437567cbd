#![allow(dead_code)]

use qprop::numerics::c;
use qprop::{ComplexVector, StateVector, Subspace, Tolerance};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    ComplexVector::from_fn(dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> StateVector {
    StateVector::normalized(random_vector(rng, dim)).expect("nonzero with probability one")
}

pub fn random_subspace(rng: &mut impl Rng, dim: usize, rank: usize) -> Subspace {
    let vs: Vec<_> = (0..rank).map(|_| random_vector(rng, dim)).collect();
    Subspace::from_span(dim, &vs, Tolerance::default()).expect("valid span")
}

/// Orthonormal basis of a random unitary frame.
pub fn random_frame(rng: &mut impl Rng, dim: usize) -> Vec<ComplexVector> {
    let vs: Vec<_> = (0..dim).map(|_| random_vector(rng, dim)).collect();
    qprop::numerics::orthonormalize(&vs, Tolerance::default()).expect("finite")
}

/// Span of the frame vectors selected by `mask`.
pub fn frame_span(frame: &[ComplexVector], mask: u32) -> Subspace {
    let dim = frame.len();
    let chosen: Vec<_> = (0..dim)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| frame[i].clone())
        .collect();
    Subspace::from_span(dim, &chosen, Tolerance::default()).expect("valid span")
}

pub fn scene_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenes")
        .join(name)
}

/// Random subspace of any rank, `0..=dim`.
pub fn any_subspace(rng: &mut impl Rng, dim: usize) -> Subspace {
    let rank = rng.gen_range(0..=dim);
    random_subspace(rng, dim, rank)
}

/// Random subspace of rank `1..dim`.
pub fn proper_subspace(rng: &mut impl Rng, dim: usize) -> Subspace {
    let rank = rng.gen_range(1..dim);
    random_subspace(rng, dim, rank)
}
