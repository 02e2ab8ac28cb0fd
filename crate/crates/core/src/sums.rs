//! Sum constructions: ordinal sums, the canonical antiortholattice
//! `M ⊕ K ⊕ Mᵈ`, horizontal sums, `MO_k`, chains and direct products.
//!
//! Sums are laid out summand by summand. For horizontal sums the glued
//! bottom sits at index 0 and the glued top at the last index. For ordinal
//! sums each summand keeps its relative order, with the glued element between
//! consecutive summands. A [`SumIndexMap`] records where every element came from.

use std::collections::HashSet;

use thiserror::Error;

use crate::order::{dual, direct_product, product_components, Elem, FinLattice};
use crate::structures::{axiom_report, trivial_brouwer, BZAlgebra, StructureError};

/// Largest `k` accepted by [`mo`].
pub const MO_LIMIT: usize = 256;

/// Errors raised by the sum constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    /// A summand has fewer than two elements.
    #[error("summand {0} is trivial")]
    TrivialSummand(usize),
    /// The middle summand of a canonical antiortholattice is not pseudo-Kleene.
    #[error("the middle summand is not pseudo-Kleene: {0}")]
    NotPseudoKleene(String),
    /// The requested algebra is larger than the configured limit.
    #[error("requested size {requested} exceeds the limit {limit}")]
    SizeLimit { requested: usize, limit: usize },
    /// Summands disagree on the unary operations at the glued bounds.
    #[error("summands disagree on {0} at the shared bounds")]
    InconsistentBounds(&'static str),
    /// The glued algebra violates an algebra invariant.
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// How a sum glued its summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SumKind {
    Ordinal,
    Horizontal,
}

/// Provenance of the elements of a sum.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SumIndexMap {
    pub kind: SumKind,
    /// `embedding[i][x]` is the index in the sum of element `x` of summand `i`.
    pub embedding: Vec<Vec<Elem>>,
    /// `origins[e]` lists every `(summand, index)` that lands on `e`;
    /// glued elements have more than one origin.
    pub origins: Vec<Vec<(usize, Elem)>>,
}

impl SumIndexMap {
    /// Number of summands.
    pub fn summands(&self) -> usize {
        self.embedding.len()
    }

    /// The elements of the sum that identify several summand elements.
    pub fn glue_classes(&self) -> Vec<(Elem, Vec<(usize, Elem)>)> {
        self.origins
            .iter()
            .enumerate()
            .filter(|(_, o)| o.len() > 1)
            .map(|(e, o)| (e, o.clone()))
            .collect()
    }

    /// The first recorded origin of `e`.
    pub fn provenance(&self, e: Elem) -> (usize, Elem) {
        self.origins[e][0]
    }

    /// A human-readable origin such as `A.3` or `A.1=B.0`.
    pub fn describe(&self, e: Elem) -> String {
        self.origins[e]
            .iter()
            .map(|&(s, x)| format!("{}.{}", summand_letter(s), x))
            .collect::<Vec<_>>()
            .join("=")
    }

    /// Composes a map of an inner sum (which became summand `slot` of `self`)
    /// into a flat map over all summands.
    fn flatten(&self, slot: usize, inner: &SumIndexMap) -> SumIndexMap {
        let mut embedding = Vec::new();
        for (i, emb) in self.embedding.iter().enumerate() {
            if i == slot {
                for inner_emb in &inner.embedding {
                    embedding.push(inner_emb.iter().map(|&x| emb[x]).collect::<Vec<_>>());
                }
            } else {
                embedding.push(emb.clone());
            }
        }
        SumIndexMap::from_embedding(self.kind, self.origins.len(), embedding)
    }

    fn from_embedding(kind: SumKind, n: usize, embedding: Vec<Vec<Elem>>) -> SumIndexMap {
        let mut origins = vec![Vec::new(); n];
        for (s, emb) in embedding.iter().enumerate() {
            for (x, &e) in emb.iter().enumerate() {
                origins[e].push((s, x));
            }
        }
        SumIndexMap {
            kind,
            embedding,
            origins,
        }
    }
}

fn summand_letter(s: usize) -> String {
    if s < 26 {
        ((b'A' + s as u8) as char).to_string()
    } else {
        format!("P{s}")
    }
}

/// Labels for a sum: the summands' own labels when they are unambiguous,
/// otherwise prefixed by the summand letter. `None` when no summand is labeled.
fn sum_labels(parts: &[&FinLattice], map: &SumIndexMap, glue_name: impl Fn(Elem) -> String) -> Option<Vec<String>> {
    if parts.iter().all(|p| p.labels().is_none()) {
        return None;
    }
    let n = map.origins.len();
    let plain: Vec<String> = (0..n)
        .map(|e| {
            let o = &map.origins[e];
            if o.len() > 1 {
                glue_name(e)
            } else {
                parts[o[0].0].label(o[0].1)
            }
        })
        .collect();
    let distinct: HashSet<&String> = plain.iter().collect();
    if distinct.len() == n {
        return Some(plain);
    }
    let prefixed = |e: Elem| {
        let (s, x) = map.origins[e][0];
        format!("{}.{}", summand_letter(s), parts[s].label(x))
    };
    let named: Vec<String> = (0..n)
        .map(|e| if map.origins[e].len() > 1 { glue_name(e) } else { prefixed(e) })
        .collect();
    if named.iter().collect::<HashSet<_>>().len() == n {
        return Some(named);
    }
    // Every element has a distinct first origin, so this naming is injective.
    Some((0..n).map(prefixed).collect())
}

/// The ordinal sum `L ⊕ M`: every element of `L` lies below every element of
/// `M`, with the top of `L` identified with the bottom of `M`.
pub fn ordinal_sum(l: &FinLattice, m: &FinLattice) -> (FinLattice, SumIndexMap) {
    let n = l.n() + m.n() - 1;
    let mut emb_l = vec![0; l.n()];
    let mut emb_m = vec![0; m.n()];
    let mut next = 0;
    for (x, slot) in emb_l.iter_mut().enumerate() {
        if x != l.top() {
            *slot = next;
            next += 1;
        }
    }
    let glue = next;
    emb_l[l.top()] = glue;
    emb_m[m.bot()] = glue;
    next += 1;
    for (y, slot) in emb_m.iter_mut().enumerate() {
        if y != m.bot() {
            *slot = next;
            next += 1;
        }
    }
    let map = SumIndexMap::from_embedding(SumKind::Ordinal, n, vec![emb_l, emb_m]);
    let side = |e: Elem, s: usize| map.origins[e].iter().find(|o| o.0 == s).map(|o| o.1);
    let lat = FinLattice::from_order(n, |x, y| match (side(x, 0), side(y, 1)) {
        (Some(_), Some(_)) => true,
        _ => match (side(x, 0), side(y, 0), side(x, 1), side(y, 1)) {
            (Some(a), Some(b), _, _) => l.leq(a, b),
            (_, _, Some(a), Some(b)) => m.leq(a, b),
            _ => false,
        },
    })
    .expect("an ordinal sum of lattices is a lattice");
    let parts = [l, m];
    let labels = sum_labels(&parts, &map, |_| l.label(l.top()));
    let lat = match labels {
        Some(ls) => lat.with_labels(ls).unwrap_or_else(|e| panic!("sum labels: {e}")),
        None => lat,
    };
    (lat, map)
}

/// The canonical antiortholattice on `M ⊕ K ⊕ Mᵈ`.
///
/// The complement maps `x ∈ M` to its mirror copy in `Mᵈ` (and back), acts as
/// `K`'s own complement on `K`, and the Brouwer complement is trivial.
pub fn canonical_aol(m: &FinLattice, k: &BZAlgebra) -> Result<BZAlgebra, SumError> {
    canonical_aol_with_map(m, k).map(|(a, _)| a)
}

/// [`canonical_aol`] together with the embeddings of `M`, `K` and `Mᵈ`
/// (summands 0, 1 and 2 of the returned map).
pub fn canonical_aol_with_map(m: &FinLattice, k: &BZAlgebra) -> Result<(BZAlgebra, SumIndexMap), SumError> {
    if m.n() < 2 {
        return Err(SumError::TrivialSummand(0));
    }
    if let Some(c) = axiom_report(k).into_iter().find(|c| c.name == "pseudo-kleene" && !c.holds) {
        let w: Vec<String> = c.witness.unwrap_or_default().iter().map(|&x| k.label(x)).collect();
        return Err(SumError::NotPseudoKleene(format!("`{}` fails at ({})", c.statement, w.join(", "))));
    }
    let md = dual(m);
    let (inner, inner_map) = ordinal_sum(m, k.lat());
    let (lat, outer_map) = ordinal_sum(&inner, &md);
    let map = outer_map.flatten(0, &inner_map);
    let n = lat.n();
    let mut inv = vec![usize::MAX; n];
    for x in 0..m.n() {
        inv[map.embedding[0][x]] = map.embedding[2][x];
        inv[map.embedding[2][x]] = map.embedding[0][x];
    }
    for x in 0..k.n() {
        inv[map.embedding[1][x]] = map.embedding[1][k.inv(x)];
    }
    let parts = [m, k.lat(), &md];
    let lat = match sum_labels(&parts, &map, |e| {
        let (s, x) = map.origins[e][0];
        format!("{}.{}", summand_letter(s), parts[s].label(x))
    }) {
        Some(ls) => lat.without_labels().with_labels(ls).unwrap_or_else(|e| panic!("sum labels: {e}")),
        None => lat.without_labels(),
    };
    Ok((BZAlgebra::with_trivial_brouwer(lat, inv)?, map))
}

/// The horizontal sum of bounded lattices: all bottoms glued, all tops glued,
/// and elements of distinct summands otherwise incomparable.
pub fn horizontal_sum_lattices(parts: &[&FinLattice]) -> Result<(FinLattice, SumIndexMap), SumError> {
    if let Some(i) = parts.iter().position(|p| p.n() < 2) {
        return Err(SumError::TrivialSummand(i));
    }
    if parts.is_empty() {
        return Err(SumError::TrivialSummand(0));
    }
    let n = 2 + parts.iter().map(|p| p.n() - 2).sum::<usize>();
    let top = n - 1;
    let mut embedding = Vec::new();
    let mut next = 1;
    for p in parts {
        let mut emb = vec![0; p.n()];
        for (x, slot) in emb.iter_mut().enumerate() {
            *slot = if x == p.bot() {
                0
            } else if x == p.top() {
                top
            } else {
                next += 1;
                next - 1
            };
        }
        embedding.push(emb);
    }
    let map = SumIndexMap::from_embedding(SumKind::Horizontal, n, embedding);
    let lat = FinLattice::from_order(n, |x, y| {
        if x == 0 || y == top {
            return true;
        }
        if x == top || y == 0 {
            return x == y;
        }
        let (sx, ix) = map.origins[x][0];
        let (sy, iy) = map.origins[y][0];
        sx == sy && parts[sx].leq(ix, iy)
    })
    .expect("a horizontal sum of bounded lattices is a lattice");
    let lat = match sum_labels(parts, &map, |e| if e == 0 { "0".into() } else { "1".into() }) {
        Some(ls) => lat.with_labels(ls).unwrap_or_else(|e| panic!("sum labels: {e}")),
        None => lat,
    };
    Ok((lat, map))
}

/// The horizontal sum of algebras, each part becoming a subalgebra.
///
/// The result is not required to be a BZ-lattice; use
/// [`classify`](crate::structures::classify) to find out what it is.
pub fn horizontal_sum(parts: &[&BZAlgebra]) -> Result<(BZAlgebra, SumIndexMap), SumError> {
    let lats: Vec<&FinLattice> = parts.iter().map(|p| p.lat()).collect();
    let (lat, map) = horizontal_sum_lattices(&lats)?;
    let n = lat.n();
    let glue_op = |op: &dyn Fn(&BZAlgebra, Elem) -> Elem, at: fn(&BZAlgebra) -> Elem, name| {
        let vals: HashSet<Elem> = parts
            .iter()
            .enumerate()
            .map(|(s, p)| map.embedding[s][op(p, at(p))])
            .collect();
        if vals.len() == 1 {
            Ok(vals.into_iter().next().expect("one value"))
        } else {
            Err(SumError::InconsistentBounds(name))
        }
    };
    let mut inv = vec![0; n];
    let mut brouwer = vec![0; n];
    for e in 0..n {
        let (s, x) = map.origins[e][0];
        if map.origins[e].len() > 1 {
            let at: fn(&BZAlgebra) -> Elem = if e == 0 { BZAlgebra::bot } else { BZAlgebra::top };
            inv[e] = glue_op(&|p, y| p.inv(y), at, "the complement")?;
            brouwer[e] = glue_op(&|p, y| p.brouwer(y), at, "the Brouwer complement")?;
        } else {
            inv[e] = map.embedding[s][parts[s].inv(x)];
            brouwer[e] = map.embedding[s][parts[s].brouwer(x)];
        }
    }
    Ok((BZAlgebra::new(lat, inv, brouwer)?, map))
}

/// `MO_k`: the horizontal sum of `k` four-element Boolean algebras, with
/// `′ = ~`. `MO_0` is the two-element chain.
pub fn mo(k: usize) -> Result<BZAlgebra, SumError> {
    if k > MO_LIMIT {
        return Err(SumError::SizeLimit {
            requested: k,
            limit: MO_LIMIT,
        });
    }
    let n = 2 * k + 2;
    let top = n - 1;
    let lat = FinLattice::from_order(n, |x, y| x == y || x == 0 || y == top).expect("MO_k is a lattice");
    let mut labels = vec!["0".to_string()];
    for i in 0..k {
        let base = if k <= 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("a{}", i + 1)
        };
        labels.push(base.clone());
        labels.push(format!("{base}'"));
    }
    labels.push("1".to_string());
    let lat = lat.with_labels(labels).expect("distinct labels");
    let inv: Vec<Elem> = (0..n)
        .map(|x| match x {
            0 => top,
            x if x == top => 0,
            x if x % 2 == 1 => x + 1,
            x => x - 1,
        })
        .collect();
    Ok(BZAlgebra::orthocomplemented(lat, inv)?)
}

/// The chain `D_n` with its unique order-reversing involution and the trivial
/// Brouwer complement.
///
/// # Panics
/// Panics if `n == 0`.
pub fn chain(n: usize) -> BZAlgebra {
    let lat = FinLattice::chain(n);
    let inv = (0..n).rev().collect();
    BZAlgebra::with_trivial_brouwer(lat, inv).expect("chains carry an involution")
}

/// The direct product `A × B` with componentwise operations.
pub fn product(a: &BZAlgebra, b: &BZAlgebra) -> BZAlgebra {
    let lat = direct_product(a.lat(), b.lat());
    let m = b.n();
    let lift = |f: &dyn Fn(Elem, Elem) -> (Elem, Elem)| -> Vec<Elem> {
        (0..lat.n())
            .map(|x| {
                let (i, j) = product_components(x, m);
                let (p, q) = f(i, j);
                p * m + q
            })
            .collect()
    };
    let inv = lift(&|i, j| (a.inv(i), b.inv(j)));
    let brouwer = lift(&|i, j| (a.brouwer(i), b.brouwer(j)));
    BZAlgebra::new(lat, inv, brouwer).expect("componentwise involution")
}

/// Whether the Brouwer map of `a` is trivial on its lattice.
pub fn is_trivially_brouwer(a: &BZAlgebra) -> bool {
    a.brouwer_map() == trivial_brouwer(a.lat()).as_slice()
}
