//! Helpers shared by the integration tests: conversion of engine algebras
//! into the raw tables understood by the brute-force oracle, and a pool of
//! small algebras to sweep over.

#![allow(dead_code)]

use pbz_core::catalog::catalog;
use pbz_core::congruence::Partition;
use pbz_core::signature::Level;
use pbz_core::structures::BZAlgebra;
use pbz_core::sums::{chain, horizontal_sum, mo, product};
use pbz_oracle::Tables;

/// The raw tables of `a` with the unary operations visible at `level`.
pub fn tables(a: &BZAlgebra, level: Level) -> Tables {
    let n = a.n();
    let leq = (0..n).map(|x| (0..n).map(|y| a.leq(x, y)).collect()).collect();
    let unary = match level {
        Level::Lattice => vec![],
        Level::Bi => vec![a.inv_map().to_vec()],
        Level::Bz => vec![a.inv_map().to_vec(), a.brouwer_map().to_vec()],
    };
    Tables::from_leq(leq, unary).expect("engine lattices are lattices")
}

/// A partition as a restricted-growth block vector (the oracle's normal form).
pub fn rgs(p: &Partition) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    p.block_ids()
        .iter()
        .map(|&b| match seen.iter().position(|&s| s == b) {
            Some(i) => i,
            None => {
                seen.push(b);
                seen.len() - 1
            }
        })
        .collect()
}

/// Catalog entries with at most `max` elements, by name.
pub fn small_catalog(max: usize) -> Vec<(String, BZAlgebra)> {
    catalog()
        .iter()
        .filter(|e| e.algebra.n() <= max)
        .map(|e| (e.name.clone(), e.algebra.clone()))
        .collect()
}

/// A varied pool of small algebras: catalog entries, products and
/// horizontal sums, all with at most `max` elements.
pub fn pool(max: usize) -> Vec<(String, BZAlgebra)> {
    let mut out = small_catalog(max);
    let bases = [("D2", chain(2)), ("D3", chain(3)), ("D4", chain(4)), ("MO1", mo(1).unwrap()), ("MO2", mo(2).unwrap())];
    for (na, a) in &bases {
        for (nb, b) in &bases {
            let p = product(a, b);
            if p.n() <= max {
                out.push((format!("{na}x{nb}"), p));
            }
            if a.n() > 2 && b.n() > 2 {
                let (h, _) = horizontal_sum(&[a, b]).unwrap();
                if h.n() <= max {
                    out.push((format!("{na}+{nb}"), h));
                }
            }
        }
    }
    out
}

/// PBZ*-lattices with at most `max` elements: catalog members, horizontal
/// sums of MO1/MO2 with them, canonical antiortholattices and products.
pub fn pbz_pool(max: usize) -> Vec<(String, BZAlgebra)> {
    use pbz_core::structures::{classify, Flag};
    use pbz_core::sums::canonical_aol;
    let is_pbz = |a: &BZAlgebra| classify(a).map(|c| c.has(Flag::PBZStar)).unwrap_or(false);
    let cat: Vec<(String, BZAlgebra)> = small_catalog(max).into_iter().filter(|(_, a)| is_pbz(a)).collect();
    let mut out = cat.clone();
    for k in 1..=2 {
        let m = mo(k).unwrap();
        for (nb, b) in &cat {
            if b.n() > 2 && m.n() + b.n() - 2 <= max {
                out.push((format!("MO{k}+{nb}"), horizontal_sum(&[&m, b]).unwrap().0));
            }
        }
    }
    let ms = [("D2", chain(2)), ("D3", chain(3)), ("D2^2", mo(1).unwrap())];
    let ks = [("D1", chain(1)), ("D2", chain(2)), ("D3", chain(3)), ("MO1", mo(1).unwrap()), ("MO2", mo(2).unwrap())];
    for (nm, m) in &ms {
        for (nk, k) in &ks {
            let a = canonical_aol(m.lat(), k).unwrap();
            if a.n() <= max {
                out.push((format!("{nm}(+){nk}(+){nm}^d"), a));
            }
        }
    }
    let small: Vec<&(String, BZAlgebra)> = cat.iter().filter(|(_, a)| (2..=4).contains(&a.n())).collect();
    for (na, a) in &small {
        for (nb, b) in &small {
            let p = product(a, b);
            if p.n() <= max && is_pbz(&p) {
                out.push((format!("{na}x{nb}"), p));
            }
        }
    }
    out
}

/// The Boolean lattice `D2^k` (`D1` for `k = 0`).
pub fn boolean(k: usize) -> pbz_core::order::FinLattice {
    use pbz_core::order::{direct_product, FinLattice};
    (0..k).fold(FinLattice::chain(1), |acc, _| direct_product(&acc, &FinLattice::chain(2)))
}

/// `L ⊕ D2`: a new top added above `L`.
pub fn plus_top(l: &pbz_core::order::FinLattice) -> pbz_core::order::FinLattice {
    pbz_core::sums::ordinal_sum(l, &pbz_core::order::FinLattice::chain(2)).0
}

/// `α × β` on a product indexed `i · |B| + j`.
pub fn product_partition(alpha: &Partition, beta: &Partition) -> Partition {
    let m = beta.n();
    let ids: Vec<usize> = (0..alpha.n() * m)
        .map(|k| alpha.block_of(k / m) * beta.block_count() + beta.block_of(k % m))
        .collect();
    Partition::from_block_ids(&ids)
}
