//! Finite bounded lattices.
//!
//! A [`FinLattice`] stores its order as dense bit rows (down-sets and
//! up-sets) and precomputes full meet/join tables, so every downstream sweep
//! is a table lookup. Lattices are immutable once built.

use fixedbitset::FixedBitSet;
use thiserror::Error;

/// Index of an element of a finite universe.
pub type Elem = usize;

/// Errors raised while building a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    /// The pair has no greatest lower bound or no least upper bound.
    #[error("elements {0} and {1} have no meet or no join")]
    NotALattice(Elem, Elem),
    /// The order lacks a unique minimum or a unique maximum, or the declared
    /// bounds are not the minimum/maximum.
    #[error("the order has no unique least and greatest element")]
    NoBounds,
    /// The cover relation is cyclic (so its closure is not antisymmetric).
    #[error("cover relation is cyclic through elements {0} and {1}")]
    Cyclic(Elem, Elem),
    /// An index refers outside the universe.
    #[error("element index {index} out of range for a universe of size {n}")]
    OutOfRange { index: Elem, n: usize },
    /// A universe must contain at least one element.
    #[error("empty universe")]
    Empty,
    /// The relation handed to [`FinLattice::from_order`] is not a partial order.
    #[error("relation is not a partial order (fails at {0} and {1})")]
    NotAnOrder(Elem, Elem),
    /// A label table of the wrong length or with duplicate names.
    #[error("invalid label table: {0}")]
    BadLabels(String),
}

/// A Hasse diagram given as a list of cover pairs.
///
/// `(a, b)` means "b covers a". Bounds may be declared; when `None` they are
/// inferred as the unique minimal / maximal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverList {
    pub n: usize,
    pub covers: Vec<(Elem, Elem)>,
    pub bot: Option<Elem>,
    pub top: Option<Elem>,
}

impl CoverList {
    /// A cover list with inferred bounds.
    pub fn new(n: usize, covers: Vec<(Elem, Elem)>) -> Self {
        CoverList {
            n,
            covers,
            bot: None,
            top: None,
        }
    }
}

/// Order-theoretic summary of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OrderProfile {
    pub atoms: Vec<Elem>,
    pub coatoms: Vec<Elem>,
    /// Elements other than 0 with exactly one lower cover.
    pub join_irreducible: Vec<Elem>,
    /// Elements other than 1 with exactly one upper cover.
    pub meet_irreducible: Vec<Elem>,
    pub is_chain: bool,
    /// Number of edges in a longest maximal chain.
    pub length: usize,
}

/// A finite bounded lattice with precomputed operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinLattice {
    n: usize,
    /// `down[b]` holds every `a` with `a ≤ b`.
    down: Vec<FixedBitSet>,
    /// `up[a]` holds every `b` with `a ≤ b`.
    up: Vec<FixedBitSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bot: Elem,
    top: Elem,
    labels: Option<Vec<String>>,
}

/// Index of the pair `(i, j)` in `L × M`, where `m_size = |M|`.
///
/// The product universe is laid out row-major: `(i, j) ↦ i·|M| + j`.
pub fn product_index(i: Elem, j: Elem, m_size: usize) -> Elem {
    i * m_size + j
}

/// Inverse of [`product_index`].
pub fn product_components(k: Elem, m_size: usize) -> (Elem, Elem) {
    (k / m_size, k % m_size)
}

/// Builds a lattice from a Hasse diagram.
pub fn lattice_from_covers(c: &CoverList) -> Result<FinLattice, OrderError> {
    let n = c.n;
    if n == 0 {
        return Err(OrderError::Empty);
    }
    for &(a, b) in &c.covers {
        for x in [a, b] {
            if x >= n {
                return Err(OrderError::OutOfRange { index: x, n });
            }
        }
        if a == b {
            return Err(OrderError::Cyclic(a, b));
        }
    }
    // Reflexive-transitive closure, row by row (Warshall on bit rows).
    let mut up: Vec<FixedBitSet> = (0..n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(a);
            row
        })
        .collect();
    for &(a, b) in &c.covers {
        up[a].insert(b);
    }
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    for a in 0..n {
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(OrderError::Cyclic(a, b));
            }
        }
    }
    let lat = FinLattice::from_up_sets(up, None)?;
    if c.bot.is_some_and(|b| b != lat.bot) || c.top.is_some_and(|t| t != lat.top) {
        return Err(OrderError::NoBounds);
    }
    Ok(lat)
}

/// The order dual of `l`: order reversed, meet and join swapped.
pub fn dual(l: &FinLattice) -> FinLattice {
    FinLattice {
        n: l.n,
        down: l.up.clone(),
        up: l.down.clone(),
        meet: l.join.clone(),
        join: l.meet.clone(),
        bot: l.top,
        top: l.bot,
        labels: l.labels.clone(),
    }
}

/// The direct product `L × M` with componentwise order; see [`product_index`].
pub fn direct_product(l: &FinLattice, m: &FinLattice) -> FinLattice {
    let (ln, mn) = (l.n, m.n);
    let n = ln * mn;
    let mut out = FinLattice::from_order(n, |x, y| {
        let (i, j) = product_components(x, mn);
        let (k, q) = product_components(y, mn);
        l.leq(i, k) && m.leq(j, q)
    })
    .expect("a product of lattices is a lattice");
    if l.labels.is_some() || m.labels.is_some() {
        let labels = (0..n)
            .map(|x| {
                let (i, j) = product_components(x, mn);
                format!("({},{})", l.label(i), m.label(j))
            })
            .collect();
        out.labels = Some(labels);
    }
    out
}

/// Atoms, coatoms, irreducibles, chain flag and length of `l`.
pub fn order_profile(l: &FinLattice) -> OrderProfile {
    let n = l.n;
    let lower: Vec<Vec<Elem>> = (0..n).map(|b| l.lower_covers(b)).collect();
    let upper: Vec<Vec<Elem>> = (0..n).map(|a| l.upper_covers(a)).collect();
    let atoms = upper[l.bot].clone();
    let coatoms = lower[l.top].clone();
    let join_irreducible = (0..n)
        .filter(|&x| x != l.bot && lower[x].len() == 1)
        .collect();
    let meet_irreducible = (0..n)
        .filter(|&x| x != l.top && upper[x].len() == 1)
        .collect();
    let is_chain = (0..n).all(|a| (0..n).all(|b| l.comparable(a, b)));
    // Longest chain: process elements by increasing down-set size.
    let mut order: Vec<Elem> = (0..n).collect();
    order.sort_by_key(|&x| l.down[x].count_ones(..));
    let mut height = vec![0usize; n];
    for &x in &order {
        height[x] = lower[x].iter().map(|&y| height[y] + 1).max().unwrap_or(0);
    }
    OrderProfile {
        atoms,
        coatoms,
        join_irreducible,
        meet_irreducible,
        is_chain,
        length: height[l.top],
    }
}

impl FinLattice {
    /// Builds a lattice from an arbitrary partial order given as a predicate.
    ///
    /// The relation is validated (reflexive, antisymmetric, transitive) and
    /// must have bounds and all pairwise meets and joins.
    pub fn from_order(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self, OrderError> {
        if n == 0 {
            return Err(OrderError::Empty);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    row.insert(b);
                }
            }
        }
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(OrderError::NotAnOrder(a, a));
            }
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(OrderError::NotAnOrder(a, b));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(OrderError::NotAnOrder(a, b));
                }
            }
        }
        Self::from_up_sets(up, None)
    }

    /// The `n`-element chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a chain needs at least one element");
        Self::from_order(n, |a, b| a <= b).expect("chains are lattices")
    }

    fn from_up_sets(up: Vec<FixedBitSet>, labels: Option<Vec<String>>) -> Result<Self, OrderError> {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let mins: Vec<Elem> = (0..n).filter(|&x| down[x].count_ones(..) == 1).collect();
        let maxs: Vec<Elem> = (0..n).filter(|&x| up[x].count_ones(..) == 1).collect();
        if mins.len() != 1 || maxs.len() != 1 {
            return Err(OrderError::NoBounds);
        }
        let (bot, top) = (mins[0], maxs[0]);
        let down_count: Vec<usize> = down.iter().map(|r| r.count_ones(..)).collect();
        let up_count: Vec<usize> = up.iter().map(|r| r.count_ones(..)).collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let mut lower = down[a].clone();
                lower.intersect_with(&down[b]);
                let size = lower.count_ones(..);
                let m = lower
                    .ones()
                    .find(|&c| down_count[c] == size)
                    .ok_or(OrderError::NotALattice(a, b))?;
                let mut upper = up[a].clone();
                upper.intersect_with(&up[b]);
                let size = upper.count_ones(..);
                let j = upper
                    .ones()
                    .find(|&c| up_count[c] == size)
                    .ok_or(OrderError::NotALattice(a, b))?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(FinLattice {
            n,
            down,
            up,
            meet,
            join,
            bot,
            top,
            labels,
        })
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Index of the least element.
    pub fn bot(&self) -> Elem {
        self.bot
    }

    /// Index of the greatest element.
    pub fn top(&self) -> Elem {
        self.top
    }

    /// `a ≤ b`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    /// `a < b`.
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    /// `a ≤ b` or `b ≤ a`.
    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `a ∧ b`.
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    /// `a ∨ b`.
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    /// The down-set `{x : x ≤ a}`.
    pub fn down_set(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    /// The up-set `{x : a ≤ x}`.
    pub fn up_set(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    /// Elements covered by `b`.
    pub fn lower_covers(&self, b: Elem) -> Vec<Elem> {
        self.down[b]
            .ones()
            .filter(|&a| a != b && self.is_cover(a, b))
            .collect()
    }

    /// Elements covering `a`.
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        self.up[a]
            .ones()
            .filter(|&b| b != a && self.is_cover(a, b))
            .collect()
    }

    /// Whether `b` covers `a`.
    pub fn is_cover(&self, a: Elem, b: Elem) -> bool {
        if !self.lt(a, b) {
            return false;
        }
        let mut between = self.up[a].clone();
        between.intersect_with(&self.down[b]);
        between.count_ones(..) == 2
    }

    /// All cover pairs `(a, b)` (b covers a), sorted.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out: Vec<(Elem, Elem)> = (0..self.n)
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The Hasse diagram of this lattice, with declared bounds.
    pub fn to_cover_list(&self) -> CoverList {
        CoverList {
            n: self.n,
            covers: self.covers(),
            bot: Some(self.bot),
            top: Some(self.top),
        }
    }

    /// The label table, if any.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Name of element `a`: its label, or its index when unlabeled.
    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element with the given label (or decimal index).
    pub fn index_of(&self, name: &str) -> Option<Elem> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|s| s == name) {
                return Some(i);
            }
        }
        name.parse::<Elem>().ok().filter(|&i| i < self.n)
    }

    /// Attaches a label table (one distinct name per element).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, OrderError> {
        if labels.len() != self.n {
            return Err(OrderError::BadLabels(format!(
                "{} labels for {} elements",
                labels.len(),
                self.n
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || !seen.insert(l.as_str()) {
                return Err(OrderError::BadLabels(format!("duplicate or empty label `{l}`")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Drops the label table.
    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Brute-force distributivity check.
    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c)))
            })
        })
    }

    /// Brute-force modularity check: `a ≤ c` implies `a ∨ (b ∧ c) = (a ∨ b) ∧ c`.
    pub fn is_modular(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    !self.leq(a, c) || self.join(a, self.meet(b, c)) == self.meet(self.join(a, b), c)
                })
            })
        })
    }

    /// The sublattice induced on `elems` (which must be closed under ∧, ∨
    /// and contain the bounds used by the caller), re-indexed in the given order.
    pub fn induced(&self, elems: &[Elem]) -> Result<FinLattice, OrderError> {
        let mut out = FinLattice::from_order(elems.len(), |i, j| self.leq(elems[i], elems[j]))?;
        if let Some(l) = &self.labels {
            out.labels = Some(elems.iter().map(|&e| l[e].clone()).collect());
        }
        Ok(out)
    }
}
