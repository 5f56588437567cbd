//! Finite-dimensional quantum propositional logic.
//!
//! Propositions are closed subspaces of `C^d`. The crate provides the
//! subspace lattice ([`subspaces`]), contexts and their Boolean invariant
//! lattices ([`contexts`]), three valuation semantics plus the bivaluation
//! measure ([`valuation`]), and the qubit-plus-environment model in which
//! truth-value gaps of the qubit resolve into probabilities ([`qubit_model`]).
//! [`scene`] and [`cli`] back the `qprop` binary.

pub mod cli;
pub mod contexts;
pub mod numerics;
pub mod qubit_model;
pub mod scene;
pub mod subspaces;
pub mod valuation;

pub use numerics::{ComplexMatrix, ComplexVector, Tolerance};
pub use subspaces::{Projector, StateVector, Subspace, SubspaceError};
