//! Exhaustive enumeration of small structures: lattices up to isomorphism,
//! antitone involutions, antiortholattices, and isomorphism deduplication.

use std::collections::BTreeMap;

use pbz_core::order::{Elem, FinLattice};
use pbz_core::structures::{classify, BZAlgebra, Flag};
use pbz_core::subalg::{isomorphic, lattices_isomorphic};

/// Largest universe accepted by [`lattices`]; beyond it the candidate count explodes.
pub const LATTICE_ENUMERATION_LIMIT: usize = 9;

/// Isomorphism-invariant fingerprint of a lattice: the sorted multiset of
/// (down-set size, up-set size, lower covers, upper covers).
pub fn lattice_key(l: &FinLattice) -> Vec<[usize; 4]> {
    let mut key: Vec<[usize; 4]> = (0..l.n())
        .map(|x| {
            [
                l.down_set(x).count_ones(..),
                l.up_set(x).count_ones(..),
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
            ]
        })
        .collect();
    key.sort_unstable();
    key
}

/// Fingerprint of an algebra: the lattice fingerprint extended with fixpoint
/// counts and the down-set sizes of the images of each unary operation.
pub fn algebra_key(a: &BZAlgebra) -> Vec<[usize; 8]> {
    let l = a.lat();
    let d = |x: Elem| l.down_set(x).count_ones(..);
    let mut key: Vec<[usize; 8]> = (0..a.n())
        .map(|x| {
            [
                d(x),
                l.up_set(x).count_ones(..),
                l.lower_covers(x).len(),
                l.upper_covers(x).len(),
                d(a.inv(x)),
                d(a.brouwer(x)),
                usize::from(a.inv(x) == x),
                usize::from(a.brouwer(x) == x),
            ]
        })
        .collect();
    key.sort_unstable();
    key
}

/// All lattices with `n` elements, one per isomorphism class.
///
/// Element 0 is the bottom and `n - 1` the top. Every finite poset has a
/// linear extension, so it suffices to enumerate transitive relations on the
/// inner elements that are contained in index order.
///
/// # Panics
/// Panics if `n` is 0 or exceeds [`LATTICE_ENUMERATION_LIMIT`].
pub fn lattices(n: usize) -> Vec<FinLattice> {
    assert!((1..=LATTICE_ENUMERATION_LIMIT).contains(&n), "lattice enumeration supports 1..=9 elements");
    if n <= 2 {
        return vec![FinLattice::chain(n)];
    }
    let k = n - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut classes: BTreeMap<Vec<[usize; 4]>, Vec<FinLattice>> = BTreeMap::new();
    let mut order: Vec<Vec<[usize; 4]>> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..k).all(|i| (i + 1..k).all(|j| !rel[i][j] || (j + 1..k).all(|m| !rel[j][m] || rel[i][m])));
        if !transitive {
            continue;
        }
        let leq = |x: Elem, y: Elem| -> bool {
            x == y || x == 0 || y == n - 1 || (x > 0 && x < n - 1 && y > 0 && y < n - 1 && rel[x - 1][y - 1])
        };
        let Ok(l) = FinLattice::from_order(n, leq) else {
            continue;
        };
        let key = lattice_key(&l);
        let bucket = classes.entry(key.clone()).or_default();
        if bucket.is_empty() {
            order.push(key);
        }
        if !bucket.iter().any(|m| lattices_isomorphic(m, &l).unwrap_or(false)) {
            bucket.push(l);
        }
    }
    let mut out = Vec::new();
    for key in order {
        out.extend(classes.remove(&key).unwrap_or_default());
    }
    out
}

/// Every order-reversing involution of `l`, in lexicographic order of the map.
pub fn antitone_involutions(l: &FinLattice) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    involution_search(l, &mut vec![usize::MAX; l.n()], 0, &mut |f| {
        out.push(f.to_vec());
        true
    });
    out
}

/// The lexicographically least order-reversing involution of `l`, if any.
pub fn least_antitone_involution(l: &FinLattice) -> Option<Vec<Elem>> {
    let mut found = None;
    involution_search(l, &mut vec![usize::MAX; l.n()], 0, &mut |f| {
        found = Some(f.to_vec());
        false
    });
    found
}

/// Backtracking over partial involutions; `visit` returns whether to continue.
fn involution_search(l: &FinLattice, f: &mut Vec<Elem>, x: Elem, visit: &mut dyn FnMut(&[Elem]) -> bool) -> bool {
    let n = l.n();
    if x == n {
        return visit(f);
    }
    if f[x] != usize::MAX {
        return involution_search(l, f, x + 1, visit);
    }
    for y in x..n {
        if f[y] != usize::MAX {
            continue;
        }
        f[x] = y;
        f[y] = x;
        let consistent = (0..n).filter(|&z| f[z] != usize::MAX).all(|z| {
            [x, y].iter().all(|&w| {
                (!l.leq(w, z) || l.leq(f[z], f[w])) && (!l.leq(z, w) || l.leq(f[w], f[z]))
            })
        });
        if consistent && !involution_search(l, f, x + 1, visit) {
            f[x] = usize::MAX;
            f[y] = usize::MAX;
            return false;
        }
        f[x] = usize::MAX;
        f[y] = usize::MAX;
    }
    true
}

/// All antiortholattices with `n` elements, one per isomorphism class: every
/// lattice, every antitone involution whose only sharp elements are the
/// bounds, with the trivial Brouwer complement, kept when the result
/// classifies as an antiortholattice.
pub fn antiortholattices(n: usize) -> Vec<BZAlgebra> {
    let mut found: Vec<BZAlgebra> = Vec::new();
    for l in lattices(n) {
        for inv in antitone_involutions(&l) {
            let sharp_only_bounds =
                (0..n).all(|x| x == l.bot() || x == l.top() || l.meet(x, inv[x]) != l.bot());
            if !sharp_only_bounds {
                continue;
            }
            let Ok(a) = BZAlgebra::with_trivial_brouwer(l.clone(), inv) else {
                continue;
            };
            if !classify(&a).is_ok_and(|c| c.has(Flag::Antiortholattice)) {
                continue;
            }
            if !found.iter().any(|b| isomorphic(b, &a).unwrap_or(false)) {
                found.push(a);
            }
        }
    }
    found
}

/// Keeps the first member of each isomorphism class, preserving order.
pub fn dedup_isomorphic<T>(items: Vec<T>, algebra: impl Fn(&T) -> &BZAlgebra) -> Vec<T> {
    let mut seen: BTreeMap<Vec<[usize; 8]>, Vec<usize>> = BTreeMap::new();
    let mut out: Vec<T> = Vec::new();
    for item in items {
        let a = algebra(&item);
        let key = algebra_key(a);
        let bucket = seen.entry(key).or_default();
        if bucket.iter().any(|&i| isomorphic(algebra(&out[i]), a).unwrap_or(false)) {
            continue;
        }
        bucket.push(out.len());
        out.push(item);
    }
    out
}
