//! Opposition relations between quantum propositions.
//!
//! Quantum propositions ("the system has value v of observable O") are
//! eigenspaces of observables, asserted or negated. This crate decides,
//! from subspace geometry alone, whether two such propositions are
//! contradictory, contrary, subcontrary or subalternate; builds the square
//! and hexagon of opposition for an observable; and ships a small
//! three-valued (LP) propositional checker for the paraconsistent reading
//! of superposition.

pub mod cli;
pub mod lp;
pub mod numeric;
pub mod opposition;
pub mod quantum;
pub mod report;
pub mod sampling;
pub mod scenario;
