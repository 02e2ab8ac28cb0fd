//! Finite-algebra engine for PBZ*-lattices: bounded lattices, involutions,
//! Brouwer complements, sums, congruences, identities, subalgebras and a
//! catalog of named small examples.

pub mod catalog;
pub mod congruence;
pub mod decompose;
pub mod order;
pub mod signature;
pub mod structures;
pub mod subalg;
pub mod sums;
pub mod terms;
