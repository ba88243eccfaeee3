//! Constructive epsilon-delta limit witnesses.
//!
//! A [`witness::Witness`] pairs a limit claim with a symbolic threshold
//! `delta(eps)` and the derivation that justifies it. [`verify`] samples the
//! guarantee with exact rational arithmetic and searches for counterexamples
//! to externally supplied thresholds; [`emit`] renders derivations as proofs.

pub mod algebra;
pub mod emit;
pub mod numeric;
pub mod syntax;
pub mod verify;
pub mod witness;
