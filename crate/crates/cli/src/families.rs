//! Families of algebras for `verify` and `search`, held in a registry of
//! trait objects selected by name at runtime.
//!
//! Every family is enumerated deterministically: the catalog family in
//! catalog order, generated families by size and then generation order, with
//! isomorphic duplicates removed (the first representative is kept).

use std::sync::Arc;

use pbz_core::catalog::catalog;
use pbz_core::structures::{classify, BZAlgebra, Flag};
use pbz_core::sums::{canonical_aol, horizontal_sum, product};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::enumerate::{antiortholattices, dedup_isomorphic, LATTICE_ENUMERATION_LIMIT};

/// A named member of a family.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub name: String,
    pub algebra: BZAlgebra,
    /// The family that produced the candidate.
    pub family: &'static str,
}

/// Parameters shared by all families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    /// Largest universe to produce.
    pub max_size: usize,
    /// Seed for randomized families.
    pub seed: u64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams { max_size: 12, seed: 0 }
    }
}

/// A source of candidate algebras.
pub trait Family: Send + Sync {
    /// Registry name.
    fn name(&self) -> &'static str;
    /// One-line description.
    fn description(&self) -> &'static str;
    /// The members within `params`, in deterministic order.
    fn generate(&self, params: &FamilyParams) -> Vec<Candidate>;
}

/// Name-indexed collection of families.
#[derive(Clone, Default)]
pub struct FamilyRegistry {
    families: Vec<Arc<dyn Family>>,
}

impl FamilyRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        FamilyRegistry::default()
    }

    /// The built-in families: catalog, hsum, ordinal, product, random, aol, all.
    pub fn standard() -> Self {
        let mut r = FamilyRegistry::new();
        r.register(Arc::new(CatalogFamily));
        r.register(Arc::new(HorizontalFamily));
        r.register(Arc::new(OrdinalFamily));
        r.register(Arc::new(ProductFamily));
        r.register(Arc::new(RandomFamily { steps: 48 }));
        r.register(Arc::new(SmallAolFamily));
        let parts: Vec<Arc<dyn Family>> = r.families.clone();
        r.register(Arc::new(AllFamily { parts }));
        r
    }

    /// Adds a family; a later registration with the same name replaces the earlier one.
    pub fn register(&mut self, f: Arc<dyn Family>) {
        self.families.retain(|g| g.name() != f.name());
        self.families.push(f);
    }

    /// Looks up a family by name (case-insensitive).
    pub fn get(&self, name: &str) -> Option<Arc<dyn Family>> {
        self.families.iter().find(|f| f.name().eq_ignore_ascii_case(name)).cloned()
    }

    /// Registered names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    /// Iterates over the families.
    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Family>> {
        self.families.iter()
    }
}

fn catalog_members(pred: impl Fn(&BZAlgebra) -> bool) -> Vec<(&'static str, &'static BZAlgebra)> {
    catalog()
        .iter()
        .filter(|e| pred(&e.algebra))
        .map(|e| (e.name.as_str(), &e.algebra))
        .collect()
}

fn has(a: &BZAlgebra, flag: Flag) -> bool {
    classify(a).is_ok_and(|c| c.has(flag))
}

/// Sorts by size (stably) and removes isomorphic duplicates.
fn finish(mut v: Vec<Candidate>) -> Vec<Candidate> {
    v.sort_by_key(|c| c.algebra.n());
    dedup_isomorphic(v, |c| &c.algebra)
}

/// Catalog entries within the size bound, in catalog order.
pub struct CatalogFamily;

impl Family for CatalogFamily {
    fn name(&self) -> &'static str {
        "catalog"
    }
    fn description(&self) -> &'static str {
        "built-in catalog entries, in catalog order"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        catalog()
            .iter()
            .filter(|e| e.algebra.n() <= p.max_size)
            .map(|e| Candidate {
                name: e.name.clone(),
                algebra: e.algebra.clone(),
                family: "catalog",
            })
            .collect()
    }
}

/// Horizontal sums `A ⊞ B` of a catalog orthomodular lattice `A` (at least
/// four elements) with a catalog PBZ*-lattice `B` (at least three elements),
/// or with a direct product `B = C × D` of two nontrivial catalog
/// PBZ*-lattices. Sums over single catalog entries come first within each size.
pub struct HorizontalFamily;

impl Family for HorizontalFamily {
    fn name(&self) -> &'static str {
        "hsum"
    }
    fn description(&self) -> &'static str {
        "horizontal sums of catalog orthomodular lattices with catalog PBZ*-lattices and their binary products"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let omls = catalog_members(|a| a.n() >= 4 && has(a, Flag::Orthomodular));
        let pbz = catalog_members(|a| a.n() >= 3 && has(a, Flag::PBZStar));
        let factors = catalog_members(|a| a.n() >= 2 && has(a, Flag::PBZStar));
        let largest = p.max_size.saturating_sub(2);
        let mut right: Vec<(String, BZAlgebra)> = pbz.iter().map(|(n, b)| (n.to_string(), (*b).clone())).collect();
        for (i, (nc, c)) in factors.iter().enumerate() {
            for (nd, d) in factors.iter().skip(i) {
                if c.n() * d.n() <= largest {
                    right.push((format!("({nc} × {nd})"), product(c, d)));
                }
            }
        }
        let mut out = Vec::new();
        for (na, a) in &omls {
            for (nb, b) in &right {
                if a.n() + b.n() - 2 > p.max_size {
                    continue;
                }
                if let Ok((s, _)) = horizontal_sum(&[*a, b]) {
                    out.push(Candidate {
                        name: format!("{na} ⊞ {nb}"),
                        algebra: s,
                        family: "hsum",
                    });
                }
            }
        }
        finish(out)
    }
}

/// Canonical antiortholattices `M ⊕ K ⊕ Mᵈ` with `M` a catalog lattice reduct
/// and `K` a catalog pseudo-Kleene algebra.
pub struct OrdinalFamily;

impl Family for OrdinalFamily {
    fn name(&self) -> &'static str {
        "ordinal"
    }
    fn description(&self) -> &'static str {
        "canonical antiortholattices M (+) K (+) M^d over catalog parts"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let ms = catalog_members(|a| a.n() >= 2);
        let ks = catalog_members(|a| has(a, Flag::PseudoKleene));
        let mut out = Vec::new();
        for (nm, m) in &ms {
            for (nk, k) in &ks {
                if 2 * m.n() + k.n() > p.max_size + 2 {
                    continue;
                }
                if let Ok(a) = canonical_aol(m.lat(), k) {
                    out.push(Candidate {
                        name: format!("{nm} ⊕ {nk} ⊕ {nm}ᵈ"),
                        algebra: a,
                        family: "ordinal",
                    });
                }
            }
        }
        finish(out)
    }
}

/// Direct products of two catalog PBZ*-lattices with at least two elements.
pub struct ProductFamily;

impl Family for ProductFamily {
    fn name(&self) -> &'static str {
        "product"
    }
    fn description(&self) -> &'static str {
        "direct products of two nontrivial catalog PBZ*-lattices"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let parts = catalog_members(|a| a.n() >= 2 && has(a, Flag::PBZStar));
        let mut out = Vec::new();
        for (i, (na, a)) in parts.iter().enumerate() {
            for (nb, b) in parts.iter().skip(i) {
                if a.n() * b.n() <= p.max_size {
                    out.push(Candidate {
                        name: format!("{na} × {nb}"),
                        algebra: product(a, b),
                        family: "product",
                    });
                }
            }
        }
        finish(out)
    }
}

/// Seeded random compositions of catalog PBZ*-lattices: each step applies a
/// horizontal sum with an orthomodular lattice, a direct product, or the
/// canonical antiortholattice construction to members of the growing pool.
pub struct RandomFamily {
    /// Number of composition attempts.
    pub steps: usize,
}

impl Family for RandomFamily {
    fn name(&self) -> &'static str {
        "random"
    }
    fn description(&self) -> &'static str {
        "seeded random compositions (horizontal sums, products, canonical antiortholattices)"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let mut pool: Vec<(String, BZAlgebra)> = catalog_members(|a| a.n() >= 2 && a.n() <= 6 && has(a, Flag::PBZStar))
            .into_iter()
            .map(|(n, a)| (n.to_string(), a.clone()))
            .collect();
        let omls: Vec<(String, BZAlgebra)> = pool.iter().filter(|(_, a)| a.n() >= 4 && has(a, Flag::Orthomodular)).cloned().collect();
        let mut out = Vec::new();
        for _ in 0..self.steps {
            let (nx, x) = pool.choose(&mut rng).expect("nonempty pool").clone();
            let (ny, y) = pool.choose(&mut rng).expect("nonempty pool").clone();
            let made = match rng.gen_range(0..3) {
                0 => {
                    let (no, o) = omls.choose(&mut rng).expect("catalog has orthomodular lattices");
                    (x.n() >= 3 && o.n() + x.n() - 2 <= p.max_size)
                        .then(|| horizontal_sum(&[o, &x]).ok().map(|(s, _)| (format!("({no} ⊞ {nx})"), s)))
                        .flatten()
                }
                1 => (x.n() * y.n() <= p.max_size).then(|| (format!("({nx} × {ny})"), product(&x, &y))),
                _ => (2 * x.n() + y.n() <= p.max_size + 2)
                    .then(|| canonical_aol(x.lat(), &y).ok().map(|a| (format!("({nx} ⊕ {ny} ⊕ {nx}ᵈ)"), a)))
                    .flatten(),
            };
            if let Some((name, a)) = made {
                if has(&a, Flag::PBZStar) {
                    pool.push((name.clone(), a.clone()));
                }
                out.push(Candidate {
                    name,
                    algebra: a,
                    family: "random",
                });
            }
        }
        finish(out)
    }
}

/// Every antiortholattice with at most `max_size` elements (capped at the
/// lattice enumeration limit), up to isomorphism.
pub struct SmallAolFamily;

impl Family for SmallAolFamily {
    fn name(&self) -> &'static str {
        "aol"
    }
    fn description(&self) -> &'static str {
        "all antiortholattices on small universes, by exhaustive lattice enumeration (at most 8 elements)"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let top = p.max_size.min(LATTICE_ENUMERATION_LIMIT - 1);
        (1..=top)
            .into_par_iter()
            .map(|n| {
                antiortholattices(n)
                    .into_iter()
                    .enumerate()
                    .map(|(i, a)| Candidate {
                        name: format!("AOL{n}.{}", i + 1),
                        algebra: a,
                        family: "aol",
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
}

/// The union of the other families: catalog first, then everything else by
/// size, with isomorphic duplicates removed.
pub struct AllFamily {
    parts: Vec<Arc<dyn Family>>,
}

impl Family for AllFamily {
    fn name(&self) -> &'static str {
        "all"
    }
    fn description(&self) -> &'static str {
        "catalog, then every generated family by size, without isomorphic duplicates"
    }
    fn generate(&self, p: &FamilyParams) -> Vec<Candidate> {
        let mut head = Vec::new();
        let mut rest = Vec::new();
        for f in &self.parts {
            let members = f.generate(p);
            if f.name() == "catalog" {
                head.extend(members);
            } else {
                rest.extend(members);
            }
        }
        rest.sort_by_key(|c| c.algebra.n());
        head.extend(rest);
        dedup_isomorphic(head, |c| &c.algebra)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = FamilyRegistry::standard();
        assert_eq!(r.names(), vec!["catalog", "hsum", "ordinal", "product", "random", "aol", "all"]);
        assert!(r.get("HSUM").is_some());
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn families_respect_the_size_bound_and_are_deterministic() {
        let r = FamilyRegistry::standard();
        let p = FamilyParams { max_size: 10, seed: 7 };
        for f in r.iter() {
            let a = f.generate(&p);
            assert!(a.iter().all(|c| c.algebra.n() <= 10), "{}", f.name());
            let b = f.generate(&p);
            let names = |v: &[Candidate]| v.iter().map(|c| c.name.clone()).collect::<Vec<_>>();
            assert_eq!(names(&a), names(&b), "{}", f.name());
        }
    }

    #[test]
    fn hsum_contains_k() {
        let r = FamilyRegistry::standard();
        let members = r.get("hsum").unwrap().generate(&FamilyParams { max_size: 8, seed: 0 });
        assert!(members.iter().any(|c| c.name == "MO1 ⊞ D3"));
    }
}
