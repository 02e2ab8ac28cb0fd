//! Partitions, congruence recognition and enumeration, the ordinal and
//! horizontal congruence sums, and simplicity / subdirect / direct
//! irreducibility.
//!
//! Congruences are enumerated as the join-closure of the principal
//! congruences; each principal congruence is the fixpoint of merging the
//! blocks forced by compatibility with the basic operations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::order::{Elem, FinLattice, OrderError};
use crate::signature::{Level, Signature};
use crate::structures::BZAlgebra;
use crate::sums::SumIndexMap;

/// Errors raised by congruence computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    /// The universe or the congruence lattice exceeds the configured limits.
    #[error("{what} {actual} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    /// A summand congruence is the total relation, for which the horizontal
    /// congruence sum is not defined.
    #[error("summand congruence {0} is the total relation")]
    ImproperInput(usize),
    /// A partition does not match the universe it is applied to.
    #[error("partition of {got} elements used on a universe of {expected}")]
    SizeMismatch { expected: usize, got: usize },
    /// Building the lattice of congruences failed.
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Bounds on congruence enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest universe accepted.
    pub max_universe: usize,
    /// Largest number of congruences accepted.
    pub max_congruences: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_universe: 24,
            max_congruences: 20_000,
        }
    }
}

/// An equivalence relation stored as one block id per element.
///
/// Block ids are dense and numbered by first occurrence, so equal
/// equivalences have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Partition {
    block: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Normalizes arbitrary block labels.
    pub fn from_block_ids(ids: &[usize]) -> Self {
        let mut rename: HashMap<usize, usize> = HashMap::new();
        let block = ids
            .iter()
            .map(|id| {
                let next = rename.len();
                *rename.entry(*id).or_insert(next)
            })
            .collect();
        Partition {
            block,
            count: rename.len(),
        }
    }

    /// Builds a partition from explicit blocks, which must cover `0..n` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<Elem>]) -> Option<Self> {
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n || ids[x] != usize::MAX {
                    return None;
                }
                ids[x] = b;
            }
        }
        if ids.contains(&usize::MAX) {
            return None;
        }
        Some(Self::from_block_ids(&ids))
    }

    /// The identity relation Δ.
    pub fn discrete(n: usize) -> Self {
        Partition {
            block: (0..n).collect(),
            count: n,
        }
    }

    /// The total relation ∇.
    pub fn total(n: usize) -> Self {
        Partition {
            block: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.block.len()
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.count
    }

    /// Block id of `x`.
    pub fn block_of(&self, x: Elem) -> usize {
        self.block[x]
    }

    /// The block ids, one per element.
    pub fn block_ids(&self) -> &[usize] {
        &self.block
    }

    /// Whether `x` and `y` are related.
    pub fn same(&self, x: Elem, y: Elem) -> bool {
        self.block[x] == self.block[y]
    }

    /// The class of `x`.
    pub fn class_of(&self, x: Elem) -> Vec<Elem> {
        (0..self.n()).filter(|&y| self.same(x, y)).collect()
    }

    /// All blocks, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Whether this is Δ.
    pub fn is_discrete(&self) -> bool {
        self.count == self.n()
    }

    /// Whether this is ∇.
    pub fn is_total(&self) -> bool {
        self.count <= 1
    }

    /// Refinement: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.count];
        self.block.iter().zip(&other.block).all(|(&b, &o)| {
            if image[b] == usize::MAX {
                image[b] = o;
            }
            image[b] == o
        })
    }

    /// Intersection of the two equivalences.
    pub fn meet(&self, other: &Partition) -> Partition {
        let ids: Vec<usize> = self
            .block
            .iter()
            .zip(&other.block)
            .map(|(&a, &b)| a * other.count + b)
            .collect();
        Self::from_block_ids(&ids)
    }

    /// Transitive closure of the union of the two equivalences.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.n();
        let mut uf = UnionFind::<usize>::new(n);
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.count];
            for x in 0..n {
                let b = p.block[x];
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        Self::from_block_ids(&uf.into_labeling())
    }

    /// Whether `self ∘ other = ∇`, i.e. every block of `self` meets every block of `other`.
    pub fn composes_to_total(&self, other: &Partition) -> bool {
        let pairs: HashSet<(usize, usize)> = self.block.iter().copied().zip(other.block.iter().copied()).collect();
        pairs.len() == self.count * other.count
    }

    /// Renders the blocks with element names.
    pub fn display_with(&self, name: impl Fn(Elem) -> String) -> String {
        self.blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|&x| name(x)).collect::<Vec<_>>().join(",")))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|x| x.to_string()))
    }
}

/// All congruences of an algebra at one signature level, ordered so that Δ
/// comes first and ∇ last.
#[derive(Debug, Clone)]
pub struct CongruenceLattice {
    pub level: Level,
    congruences: Vec<Partition>,
    index: HashMap<Partition, usize>,
    delta: usize,
    nabla: usize,
    con0: Vec<usize>,
    con01: Vec<usize>,
}

impl CongruenceLattice {
    fn new(level: Level, mut congruences: Vec<Partition>, bot: Elem, top: Elem) -> Self {
        congruences.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.block.cmp(&b.block)));
        let index = congruences.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let singleton = |p: &Partition, x: Elem| p.block.iter().filter(|&&b| b == p.block[x]).count() == 1;
        let con0 = (0..congruences.len())
            .filter(|&i| singleton(&congruences[i], bot))
            .collect();
        let con01 = (0..congruences.len())
            .filter(|&i| singleton(&congruences[i], bot) && singleton(&congruences[i], top))
            .collect();
        let nabla = congruences.len() - 1;
        CongruenceLattice {
            level,
            congruences,
            index,
            delta: 0,
            nabla,
            con0,
            con01,
        }
    }

    /// Number of congruences.
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    /// Never true: Δ is always a congruence.
    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// The congruences, Δ first and ∇ last.
    pub fn congruences(&self) -> &[Partition] {
        &self.congruences
    }

    /// Congruence number `i`.
    pub fn get(&self, i: usize) -> &Partition {
        &self.congruences[i]
    }

    /// Position of a congruence, if it is one.
    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of Δ.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Index of ∇.
    pub fn nabla(&self) -> usize {
        self.nabla
    }

    /// Congruences whose class of 0 is a singleton.
    pub fn con0(&self) -> &[usize] {
        &self.con0
    }

    /// Congruences whose classes of 0 and of 1 are singletons.
    pub fn con01(&self) -> &[usize] {
        &self.con01
    }

    /// Refinement order on indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.congruences[i].refines(&self.congruences[j])
    }

    /// Index of the meet of two congruences.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.congruences[i].meet(&self.congruences[j])]
    }

    /// Index of the join of two congruences.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.index[&self.congruences[i].join(&self.congruences[j])]
    }

    /// The atoms of the congruence lattice.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                i != self.delta
                    && (0..self.len()).all(|j| j == i || j == self.delta || !self.leq(j, i))
            })
            .collect()
    }

    /// The congruence lattice as a [`FinLattice`] (indices as here).
    pub fn lattice(&self) -> Result<FinLattice, CongruenceError> {
        self.sublattice(&(0..self.len()).collect::<Vec<_>>())
    }

    /// The sub-poset on `members` (in the given order) as a lattice.
    pub fn sublattice(&self, members: &[usize]) -> Result<FinLattice, CongruenceError> {
        const LIMIT: usize = 4096;
        if members.len() > LIMIT {
            return Err(CongruenceError::SizeLimit {
                what: "congruence lattice size",
                actual: members.len(),
                limit: LIMIT,
            });
        }
        Ok(FinLattice::from_order(members.len(), |i, j| self.leq(members[i], members[j]))?)
    }
}

/// Simplicity, subdirect and direct irreducibility of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IrreducibilityReport {
    pub simple: bool,
    pub subdirectly_irreducible: bool,
    pub monolith: Option<Partition>,
    pub directly_irreducible: bool,
    pub factor_pair: Option<(Partition, Partition)>,
}

impl<'a> Signature<'a> {
    /// Whether `p` is compatible with every operation of the signature.
    pub fn is_congruence(&self, p: &Partition) -> bool {
        let lat = self.lat();
        let n = self.n();
        if p.n() != n {
            return false;
        }
        // Compatibility with a binary operation follows from compatibility of
        // each translation; checking related pairs against all z suffices.
        for x in 0..n {
            for y in (x + 1)..n {
                if !p.same(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !p.same(lat.meet(x, z), lat.meet(y, z)) || !p.same(lat.join(x, z), lat.join(y, z)) {
                        return false;
                    }
                }
                if self.unary().iter().any(|op| !p.same(op[x], op[y])) {
                    return false;
                }
            }
        }
        true
    }

    /// The least congruence containing all `pairs`.
    pub fn congruence_generated(&self, pairs: &[(Elem, Elem)]) -> Partition {
        let lat = self.lat();
        let n = self.n();
        let mut uf = UnionFind::<usize>::new(n);
        let mut queue: Vec<(Elem, Elem)> = pairs.to_vec();
        while let Some((x, y)) = queue.pop() {
            if !uf.union(x, y) {
                continue;
            }
            for z in 0..n {
                queue.push((lat.meet(x, z), lat.meet(y, z)));
                queue.push((lat.join(x, z), lat.join(y, z)));
            }
            for op in self.unary() {
                queue.push((op[x], op[y]));
            }
        }
        Partition::from_block_ids(&uf.into_labeling())
    }

    /// `Cg(a, b)`.
    pub fn principal_congruence(&self, a: Elem, b: Elem) -> Partition {
        self.congruence_generated(&[(a, b)])
    }

    /// All congruences, as the join-closure of the principal ones.
    pub fn congruence_lattice(&self, level: Level, limits: &EnumerationLimits) -> Result<CongruenceLattice, CongruenceError> {
        let n = self.n();
        if n > limits.max_universe {
            return Err(CongruenceError::SizeLimit {
                what: "universe size",
                actual: n,
                limit: limits.max_universe,
            });
        }
        let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        let principal: HashSet<Partition> = pairs
            .par_iter()
            .map(|&(a, b)| self.principal_congruence(a, b))
            .collect();
        let mut generators: Vec<Partition> = principal.into_iter().collect();
        generators.sort();
        let delta = Partition::discrete(n);
        let mut seen: HashSet<Partition> = HashSet::from([delta.clone()]);
        let mut all = vec![delta];
        let mut i = 0;
        while i < all.len() {
            for g in &generators {
                let j = all[i].join(g);
                if !seen.contains(&j) {
                    seen.insert(j.clone());
                    all.push(j);
                    if all.len() > limits.max_congruences {
                        return Err(CongruenceError::SizeLimit {
                            what: "number of congruences",
                            actual: all.len(),
                            limit: limits.max_congruences,
                        });
                    }
                }
            }
            i += 1;
        }
        let lat = self.lat();
        Ok(CongruenceLattice::new(level, all, lat.bot(), lat.top()))
    }
}

/// Whether `p` is a congruence of `a` at `level`.
pub fn is_congruence(a: &BZAlgebra, p: &Partition, level: Level) -> bool {
    Signature::of(a, level).is_congruence(p)
}

/// The least congruence of `a` at `level` identifying `x` and `y`.
pub fn principal_congruence(a: &BZAlgebra, x: Elem, y: Elem, level: Level) -> Partition {
    Signature::of(a, level).principal_congruence(x, y)
}

/// All congruences of `a` at `level`, with the default limits.
pub fn congruence_lattice(a: &BZAlgebra, level: Level) -> Result<CongruenceLattice, CongruenceError> {
    congruence_lattice_with(a, level, &EnumerationLimits::default())
}

/// All congruences of `a` at `level`, with explicit limits.
pub fn congruence_lattice_with(a: &BZAlgebra, level: Level, limits: &EnumerationLimits) -> Result<CongruenceLattice, CongruenceError> {
    Signature::of(a, level).congruence_lattice(level, limits)
}

/// All lattice congruences of a bare lattice.
pub fn lattice_congruences(l: &FinLattice) -> Result<CongruenceLattice, CongruenceError> {
    Signature::lattice(l).congruence_lattice(Level::Lattice, &EnumerationLimits::default())
}

/// The congruence on a sum induced by congruences of its summands.
///
/// Every block of every summand congruence becomes a block of the sum,
/// except that blocks meeting at a glued element are merged. For an
/// ordinal sum `L ⊕ M` this is `α ⊕ β`: the classes of `L/α` other than
/// `1/α`, those of `M/β` other than `0/β`, and `1/α ∪ 0/β`.
pub fn sum_congruence(map: &SumIndexMap, parts: &[&Partition]) -> Result<Partition, CongruenceError> {
    for (s, p) in parts.iter().enumerate() {
        let expected = map.embedding[s].len();
        if p.n() != expected {
            return Err(CongruenceError::SizeMismatch { expected, got: p.n() });
        }
    }
    // Token of block b in summand s.
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.block_count();
            Some(o)
        })
        .collect();
    let tokens = offsets.last().map_or(0, |o| o + parts.last().map_or(0, |p| p.block_count()));
    let mut uf = UnionFind::<usize>::new(tokens);
    let token = |s: usize, x: Elem| offsets[s] + parts[s].block_of(x);
    for origin in &map.origins {
        for w in origin.windows(2) {
            uf.union(token(w[0].0, w[0].1), token(w[1].0, w[1].1));
        }
    }
    let ids: Vec<usize> = map
        .origins
        .iter()
        .map(|o| uf.find(token(o[0].0, o[0].1)))
        .collect();
    Ok(Partition::from_block_ids(&ids))
}

/// `α ⊕ β ⊕ …` on an ordinal sum.
pub fn sum_congruence_ordinal(map: &SumIndexMap, parts: &[&Partition]) -> Result<Partition, CongruenceError> {
    sum_congruence(map, parts)
}

/// `⊞ αᵢ` on a horizontal sum: the 0-classes glued, the 1-classes glued and
/// every other class kept. Each `αᵢ` must be proper.
pub fn sum_congruence_horizontal(map: &SumIndexMap, parts: &[&Partition]) -> Result<Partition, CongruenceError> {
    if let Some(i) = parts.iter().position(|p| p.is_total() && p.n() > 1) {
        return Err(CongruenceError::ImproperInput(i));
    }
    sum_congruence(map, parts)
}

impl CongruenceLattice {
    /// Simplicity, subdirect irreducibility and a direct-decomposition search.
    pub fn irreducibility(&self, n: usize) -> IrreducibilityReport {
        let nontrivial: Vec<usize> = (0..self.len()).filter(|&i| i != self.delta).collect();
        let simple = n <= 1 || self.len() == 2;
        let monolith = if n <= 1 {
            None
        } else {
            nontrivial
                .iter()
                .copied()
                .find(|&m| nontrivial.iter().all(|&j| self.leq(m, j)))
                .map(|m| self.congruences[m].clone())
        };
        let subdirectly_irreducible = n <= 1 || monolith.is_some();
        let proper: Vec<usize> = nontrivial.iter().copied().filter(|&i| i != self.nabla).collect();
        let mut factor_pair = None;
        'search: for (k, &i) in proper.iter().enumerate() {
            for &j in &proper[k + 1..] {
                let (t, z) = (&self.congruences[i], &self.congruences[j]);
                if t.meet(z).is_discrete() && t.join(z).is_total() && t.composes_to_total(z) {
                    factor_pair = Some((t.clone(), z.clone()));
                    break 'search;
                }
            }
        }
        IrreducibilityReport {
            simple,
            subdirectly_irreducible,
            monolith,
            directly_irreducible: factor_pair.is_none(),
            factor_pair,
        }
    }
}

/// Irreducibility report for `a` at `level`.
pub fn irreducibility(a: &BZAlgebra, level: Level) -> Result<IrreducibilityReport, CongruenceError> {
    Ok(congruence_lattice(a, level)?.irreducibility(a.n()))
}
