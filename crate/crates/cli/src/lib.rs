//! Command-line front end for the PBZ*-lattice engine: the algebra file
//! format, algebra sources, structure enumeration, candidate families,
//! search predicates, verification suites and the commands tying them
//! together.

pub mod algfile;
pub mod commands;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod predicate;
pub mod source;
pub mod suites;
