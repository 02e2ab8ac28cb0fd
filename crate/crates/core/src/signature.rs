//! Signature levels and operation views shared by congruence enumeration,
//! subalgebra generation and isomorphism search.

use std::fmt;
use std::str::FromStr;

use crate::order::{Elem, FinLattice};
use crate::structures::BZAlgebra;

/// Which operations an algebraic notion (congruence, subalgebra, …) respects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Bounded lattice: ∧, ∨, 0, 1.
    Lattice,
    /// Bounded involution lattice: adds ′.
    Bi,
    /// Brouwer–Zadeh signature: adds ~.
    Bz,
}

impl Level {
    /// All levels, weakest first.
    pub const ALL: [Level; 3] = [Level::Lattice, Level::Bi, Level::Bz];
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Lattice => "lattice",
            Level::Bi => "bi",
            Level::Bz => "bz",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lattice" | "lat" => Ok(Level::Lattice),
            "bi" => Ok(Level::Bi),
            "bz" | "bzl" => Ok(Level::Bz),
            other => Err(format!("unknown level `{other}` (expected lattice, bi or bz)")),
        }
    }
}

/// A lattice together with the unary operations of a chosen signature.
#[derive(Debug, Clone)]
pub struct Signature<'a> {
    lat: &'a FinLattice,
    unary: Vec<&'a [Elem]>,
}

impl<'a> Signature<'a> {
    /// The bare lattice signature of `lat`.
    pub fn lattice(lat: &'a FinLattice) -> Self {
        Signature { lat, unary: Vec::new() }
    }

    /// The operations of `a` visible at `level`.
    pub fn of(a: &'a BZAlgebra, level: Level) -> Self {
        let unary: Vec<&[Elem]> = match level {
            Level::Lattice => Vec::new(),
            Level::Bi => vec![a.inv_map()],
            Level::Bz => vec![a.inv_map(), a.brouwer_map()],
        };
        Signature { lat: a.lat(), unary }
    }

    /// The lattice reduct.
    pub fn lat(&self) -> &'a FinLattice {
        self.lat
    }

    /// The unary operations, as total maps.
    pub fn unary(&self) -> &[&'a [Elem]] {
        &self.unary
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.lat.n()
    }
}
