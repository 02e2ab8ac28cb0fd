//! Generated subalgebras, induced subalgebras, quotients, isomorphism
//! testing and the classification of singleton-generated subalgebras.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::congruence::{is_congruence, Partition};
use crate::order::{Elem, FinLattice, OrderError};
use crate::signature::{Level, Signature};
use crate::structures::{BZAlgebra, StructureError};
use crate::sums::{canonical_aol, chain, mo};

/// Largest universe accepted by the isomorphism search.
pub const ISO_LIMIT: usize = 4096;

/// Errors raised by subalgebra, quotient and isomorphism operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubalgError {
    /// The partition is not a congruence at the BZ level.
    #[error("partition is not a congruence of the algebra")]
    NotACongruence,
    /// A universe exceeds the isomorphism search limit.
    #[error("universe of size {size} exceeds the limit of {limit}")]
    SizeLimit { size: usize, limit: usize },
    /// A singleton-generated subalgebra matched none of the expected types.
    #[error("subalgebra generated by {element} has {size} elements and matches no expected type")]
    UnexpectedType { element: String, size: usize },
    /// The subset is not closed under the operations.
    #[error("subset is not closed: {0}")]
    NotClosed(String),
    /// An element index is outside the universe.
    #[error("element {0} is outside the universe")]
    OutOfRange(Elem),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A subuniverse together with how it was closed.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Subuniverse {
    /// Sorted elements of the subuniverse.
    pub elements: Vec<Elem>,
    /// The signature the subset is closed under.
    pub level: Level,
    /// Number of closure rounds until the fixpoint (0 when the seeds were already closed).
    pub rounds: usize,
    /// The operations that produced at least one new element.
    pub applied: Vec<&'static str>,
}

impl Subuniverse {
    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Whether the subuniverse is empty (never, since it contains the bounds).
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Closure of `seeds ∪ {0, 1}` under the operations of `sig`.
pub fn generate_sig(sig: &Signature<'_>, seeds: &[Elem], level: Level) -> Subuniverse {
    let lat = sig.lat();
    let n = lat.n();
    let mut member = FixedBitSet::with_capacity(n);
    let mut elems: Vec<Elem> = Vec::new();
    let mut applied: Vec<&'static str> = Vec::new();
    let mut push = |x: Elem, op: &'static str, member: &mut FixedBitSet, elems: &mut Vec<Elem>| {
        if !member.contains(x) {
            member.insert(x);
            elems.push(x);
            if !op.is_empty() && !applied.contains(&op) {
                applied.push(op);
            }
        }
    };
    for &x in [lat.bot(), lat.top()].iter().chain(seeds) {
        push(x, "", &mut member, &mut elems);
    }
    let unary_names = ["inv", "brouwer"];
    let mut done = 0;
    let mut rounds = 0;
    while done < elems.len() {
        rounds += 1;
        let end = elems.len();
        for i in done..end {
            let x = elems[i];
            for (k, f) in sig.unary().iter().enumerate() {
                push(f[x], unary_names[k.min(1)], &mut member, &mut elems);
            }
            for j in 0..=i {
                let y = elems[j];
                push(lat.meet(x, y), "meet", &mut member, &mut elems);
                push(lat.join(x, y), "join", &mut member, &mut elems);
            }
        }
        done = end;
    }
    if applied.is_empty() {
        rounds = 0;
    }
    elems.sort_unstable();
    Subuniverse {
        elements: elems,
        level,
        rounds,
        applied,
    }
}

/// `⟨S⟩` in the full BZ signature.
pub fn generate(a: &BZAlgebra, seeds: &[Elem]) -> Subuniverse {
    generate_at(a, seeds, Level::Bz)
}

/// `⟨S⟩` in the signature of `level`.
pub fn generate_at(a: &BZAlgebra, seeds: &[Elem], level: Level) -> Subuniverse {
    generate_sig(&Signature::of(a, level), seeds, level)
}

/// The bounded sublattice of `l` generated by `seeds`.
pub fn generate_in_lattice(l: &FinLattice, seeds: &[Elem]) -> Subuniverse {
    generate_sig(&Signature::lattice(l), seeds, Level::Lattice)
}

/// The subalgebra on `elements`, which must be closed under all operations.
pub fn induced_subalgebra(a: &BZAlgebra, elements: &[Elem]) -> Result<BZAlgebra, SubalgError> {
    let mut elems = elements.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if let Some(&x) = elems.iter().find(|&&x| x >= a.n()) {
        return Err(SubalgError::OutOfRange(x));
    }
    let pos = |x: Elem| elems.binary_search(&x).ok();
    for &x in &elems {
        for (name, img) in [("′", a.inv(x)), ("~", a.brouwer(x))] {
            if pos(img).is_none() {
                return Err(SubalgError::NotClosed(format!("{}{} is missing", a.label(x), name)));
            }
        }
    }
    for b in [a.bot(), a.top()] {
        if pos(b).is_none() {
            return Err(SubalgError::NotClosed(format!("bound {} is missing", a.label(b))));
        }
    }
    for &x in &elems {
        for &y in &elems {
            if pos(a.meet(x, y)).is_none() || pos(a.join(x, y)).is_none() {
                return Err(SubalgError::NotClosed(format!(
                    "meet or join of {} and {} is missing",
                    a.label(x),
                    a.label(y)
                )));
            }
        }
    }
    let lat = a.lat().induced(&elems)?;
    let inv = elems.iter().map(|&x| pos(a.inv(x)).expect("closed")).collect();
    let br = elems.iter().map(|&x| pos(a.brouwer(x)).expect("closed")).collect();
    Ok(BZAlgebra::new(lat, inv, br)?)
}

/// The subalgebra `⟨S⟩` as an algebra in its own right.
pub fn generated_subalgebra(a: &BZAlgebra, seeds: &[Elem]) -> Result<BZAlgebra, SubalgError> {
    induced_subalgebra(a, &generate(a, seeds).elements)
}

/// `A/θ` for a BZ congruence `θ`; block `i` is the `i`-th block in first-occurrence order,
/// labelled by its least element.
pub fn quotient(a: &BZAlgebra, theta: &Partition) -> Result<BZAlgebra, SubalgError> {
    if theta.n() != a.n() || !is_congruence(a, theta, Level::Bz) {
        return Err(SubalgError::NotACongruence);
    }
    let blocks = theta.blocks();
    let reps: Vec<Elem> = blocks.iter().map(|b| b[0]).collect();
    let k = reps.len();
    let lat = FinLattice::from_order(k, |i, j| theta.block_of(a.join(reps[i], reps[j])) == j)?;
    let lat = match a.lat().labels() {
        Some(_) => lat.with_labels(reps.iter().map(|&r| a.label(r)).collect())?,
        None => lat,
    };
    let inv = reps.iter().map(|&r| theta.block_of(a.inv(r))).collect();
    let br = reps.iter().map(|&r| theta.block_of(a.brouwer(r))).collect();
    Ok(BZAlgebra::new(lat, inv, br)?)
}

/// Per-element invariants preserved by every isomorphism of the signature.
fn invariants(sig: &Signature<'_>) -> Vec<Vec<usize>> {
    let lat = sig.lat();
    let base: Vec<[usize; 4]> = (0..lat.n())
        .map(|x| {
            [
                lat.down_set(x).count_ones(..),
                lat.up_set(x).count_ones(..),
                lat.lower_covers(x).len(),
                lat.upper_covers(x).len(),
            ]
        })
        .collect();
    (0..lat.n())
        .map(|x| {
            let mut key: Vec<usize> = base[x].to_vec();
            for f in sig.unary() {
                key.extend_from_slice(&base[f[x]]);
                key.push(usize::from(f[x] == x));
                key.push(usize::from(f[f[x]] == x));
            }
            key
        })
        .collect()
}

struct IsoSearch<'s, 'a> {
    a: &'s Signature<'a>,
    b: &'s Signature<'a>,
    key_a: Vec<usize>,
    key_b: Vec<usize>,
    fwd: Vec<Elem>,
    bwd: Vec<Elem>,
    trail: Vec<Elem>,
    order: Vec<Elem>,
}

const NONE: Elem = Elem::MAX;

impl IsoSearch<'_, '_> {
    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if self.fwd[x] != NONE {
                if self.fwd[x] != y {
                    return false;
                }
                continue;
            }
            if self.bwd[y] != NONE || self.key_a[x] != self.key_b[y] {
                return false;
            }
            self.fwd[x] = y;
            self.bwd[y] = x;
            self.trail.push(x);
            for (fa, fb) in self.a.unary().iter().zip(self.b.unary()) {
                queue.push((fa[x], fb[y]));
            }
            let (la, lb) = (self.a.lat(), self.b.lat());
            for &z in &self.trail {
                let w = self.fwd[z];
                queue.push((la.meet(x, z), lb.meet(y, w)));
                queue.push((la.join(x, z), lb.join(y, w)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            self.bwd[self.fwd[x]] = NONE;
            self.fwd[x] = NONE;
        }
    }

    fn solve(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.fwd[x] == NONE) else {
            return true;
        };
        for y in 0..self.b.n() {
            if self.bwd[y] != NONE || self.key_a[x] != self.key_b[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Searches an isomorphism between two structures with matching signatures;
/// returns the witness bijection `A → B` if one exists.
pub fn isomorphism_sig(a: &Signature<'_>, b: &Signature<'_>) -> Result<Option<Vec<Elem>>, SubalgError> {
    for s in [a.n(), b.n()] {
        if s > ISO_LIMIT {
            return Err(SubalgError::SizeLimit { size: s, limit: ISO_LIMIT });
        }
    }
    if a.n() != b.n() || a.unary().len() != b.unary().len() {
        return Ok(None);
    }
    let (inv_a, inv_b) = (invariants(a), invariants(b));
    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut intern = |k: Vec<usize>| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    };
    let key_a: Vec<usize> = inv_a.into_iter().map(&mut intern).collect();
    let key_b: Vec<usize> = inv_b.into_iter().map(&mut intern).collect();
    let mut ca = key_a.clone();
    let mut cb = key_b.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Ok(None);
    }
    // Rarest invariant classes first, then bottom-up.
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in &key_a {
        *freq.entry(k).or_default() += 1;
    }
    let mut order: Vec<Elem> = (0..a.n()).collect();
    order.sort_by_key(|&x| (freq[&key_a[x]], a.lat().down_set(x).count_ones(..), x));
    let n = a.n();
    let mut s = IsoSearch {
        a,
        b,
        key_a,
        key_b,
        fwd: vec![NONE; n],
        bwd: vec![NONE; n],
        trail: Vec::new(),
        order,
    };
    if !s.assign(a.lat().bot(), b.lat().bot()) || !s.assign(a.lat().top(), b.lat().top()) {
        return Ok(None);
    }
    Ok(s.solve().then_some(s.fwd))
}

/// Isomorphism witness between BZ-algebras (all operations preserved).
pub fn isomorphism(a: &BZAlgebra, b: &BZAlgebra) -> Result<Option<Vec<Elem>>, SubalgError> {
    isomorphism_at(a, b, Level::Bz)
}

/// Isomorphism witness preserving only the operations of `level`.
pub fn isomorphism_at(a: &BZAlgebra, b: &BZAlgebra, level: Level) -> Result<Option<Vec<Elem>>, SubalgError> {
    isomorphism_sig(&Signature::of(a, level), &Signature::of(b, level))
}

/// Whether two BZ-algebras are isomorphic.
pub fn isomorphic(a: &BZAlgebra, b: &BZAlgebra) -> Result<bool, SubalgError> {
    Ok(isomorphism(a, b)?.is_some())
}

/// Lattice isomorphism witness.
pub fn lattice_isomorphism(l: &FinLattice, m: &FinLattice) -> Result<Option<Vec<Elem>>, SubalgError> {
    isomorphism_sig(&Signature::lattice(l), &Signature::lattice(m))
}

/// Whether two bounded lattices are isomorphic.
pub fn lattices_isomorphic(l: &FinLattice, m: &FinLattice) -> Result<bool, SubalgError> {
    Ok(lattice_isomorphism(l, m)?.is_some())
}

/// Isomorphism types of singleton-generated subalgebras in horizontal sums of
/// orthomodular lattices with antiortholattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum SingletonClass {
    /// One-element algebra.
    D1,
    /// The bounds only.
    D2,
    /// Three-element chain, generated by a fixpoint of the involution.
    D3,
    /// Four-element Boolean algebra, generated by a sharp non-bound.
    D2SQ,
    /// Four-element chain, generated by an element comparable with its complement.
    D4,
    /// `D2 ⊕ D2² ⊕ D2`, generated by an element incomparable with its complement.
    HEX,
}

impl SingletonClass {
    /// All classes in size order.
    pub const ALL: [SingletonClass; 6] = [
        SingletonClass::D1,
        SingletonClass::D2,
        SingletonClass::D3,
        SingletonClass::D2SQ,
        SingletonClass::D4,
        SingletonClass::HEX,
    ];

    /// The reference algebra of this type.
    pub fn reference(self) -> &'static BZAlgebra {
        static REFS: OnceLock<Vec<BZAlgebra>> = OnceLock::new();
        let refs = REFS.get_or_init(|| {
            vec![
                chain(1),
                chain(2),
                chain(3),
                mo(1).expect("MO1"),
                chain(4),
                canonical_aol(chain(2).lat(), &mo(1).expect("MO1")).expect("hexagon"),
            ]
        });
        &refs[self as usize]
    }
}

impl fmt::Display for SingletonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingletonClass::D1 => "D1",
            SingletonClass::D2 => "D2",
            SingletonClass::D3 => "D3",
            SingletonClass::D2SQ => "D2^2",
            SingletonClass::D4 => "D4",
            SingletonClass::HEX => "D2+D2^2+D2",
        })
    }
}

/// The isomorphism type of `⟨x⟩`; a miss is reported as [`SubalgError::UnexpectedType`].
pub fn singleton_class(a: &BZAlgebra, x: Elem) -> Result<SingletonClass, SubalgError> {
    if x >= a.n() {
        return Err(SubalgError::OutOfRange(x));
    }
    let sub = generated_subalgebra(a, &[x])?;
    for class in SingletonClass::ALL {
        let r = class.reference();
        if r.n() == sub.n() && isomorphic(&sub, r)? {
            return Ok(class);
        }
    }
    Err(SubalgError::UnexpectedType {
        element: a.label(x),
        size: sub.n(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::{horizontal_sum, product};

    #[test]
    fn empty_seed_generates_bounds() {
        let a = mo(2).unwrap();
        assert_eq!(generate(&a, &[]).elements, vec![a.bot(), a.top()]);
        assert_eq!(generate(&a, &[]).rounds, 0);
    }

    #[test]
    fn atom_of_mo2_generates_boolean_square() {
        let a = mo(2).unwrap();
        let x = a.index_of("a").unwrap();
        let s = generate(&a, &[x]);
        let mut want = vec![a.bot(), x, a.inv(x), a.top()];
        want.sort_unstable();
        assert_eq!(s.elements, want);
        assert_eq!(singleton_class(&a, x).unwrap(), SingletonClass::D2SQ);
    }

    #[test]
    fn incomparable_element_generates_hexagon() {
        let a = canonical_aol(chain(2).lat(), &mo(2).unwrap()).unwrap();
        assert_eq!(a.n(), 8);
        let x = (0..a.n()).find(|&x| !a.lat().comparable(x, a.inv(x))).unwrap();
        assert_eq!(generate(&a, &[x]).len(), 6);
        assert_eq!(singleton_class(&a, x).unwrap(), SingletonClass::HEX);
    }

    #[test]
    fn chain_classes() {
        let d4 = chain(4);
        assert_eq!(singleton_class(&d4, 1).unwrap(), SingletonClass::D4);
        assert_eq!(singleton_class(&d4, 0).unwrap(), SingletonClass::D2);
        assert_eq!(singleton_class(&chain(1), 0).unwrap(), SingletonClass::D1);
        assert_eq!(singleton_class(&chain(3), 1).unwrap(), SingletonClass::D3);
    }

    #[test]
    fn quotient_collapses_middle_of_five_chain() {
        let d5 = chain(5);
        let theta = Partition::from_blocks(5, &[vec![0], vec![1, 2], vec![3], vec![4]]);
        // {1,2} alone is not ′-compatible (1′ = 3); the compatible collapse also merges 2,3.
        assert!(matches!(quotient(&d5, &theta.unwrap()), Err(SubalgError::NotACongruence)));
        let theta = Partition::from_blocks(5, &[vec![0], vec![1, 2, 3], vec![4]]).unwrap();
        let q = quotient(&d5, &theta).unwrap();
        assert!(isomorphic(&q, &chain(3)).unwrap());
    }

    #[test]
    fn quotient_by_bounds() {
        let a = mo(2).unwrap();
        assert!(isomorphic(&quotient(&a, &Partition::discrete(a.n())).unwrap(), &a).unwrap());
        assert_eq!(quotient(&a, &Partition::total(a.n())).unwrap().n(), 1);
    }

    #[test]
    fn horizontal_sum_commutes_up_to_isomorphism() {
        let m2 = mo(2).unwrap();
        let d3 = chain(3);
        let (x, _) = horizontal_sum(&[&m2, &d3]).unwrap();
        let (y, _) = horizontal_sum(&[&d3, &m2]).unwrap();
        let w = isomorphism(&x, &y).unwrap().unwrap();
        for p in 0..x.n() {
            assert_eq!(w[x.inv(p)], y.inv(w[p]));
            for q in 0..x.n() {
                assert_eq!(w[x.meet(p, q)], y.meet(w[p], w[q]));
            }
        }
    }

    #[test]
    fn square_and_four_chain_differ() {
        let sq = product(&chain(2), &chain(2));
        assert!(!isomorphic(&sq, &chain(4)).unwrap());
        assert!(!lattices_isomorphic(sq.lat(), chain(4).lat()).unwrap());
        assert!(isomorphic(&chain(3), &chain(3)).unwrap());
    }
}
