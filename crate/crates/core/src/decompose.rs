//! Horizontal decompositions and the nine equivalent conditions for a
//! PBZ*-lattice to be a horizontal sum of an orthomodular lattice and an
//! antiortholattice.

use serde::Serialize;

use crate::order::Elem;
use crate::structures::{classify, element_sets, BZAlgebra, Flag};
use crate::subalg::induced_subalgebra;

/// Names of the nine conditions, in evaluation order.
pub const CONDITION_NAMES: [&str; 9] = [
    "L in OML (+) AOL",
    "T subuniverse and L = S (+) T",
    "L = S u T",
    "T subuniverse",
    "T closed under '",
    "T' closed under '",
    "T = T'",
    "T' closed under ~",
    "T u T' closed under ~",
];

/// The finest horizontal decomposition: the universes (without bounds) of
/// the summands, each sorted, ordered by least element.
///
/// Two non-bound elements share a summand when their meet is not 0 or their
/// join is not 1, or when one is the complement or non-bound Brouwer
/// complement of the other.
pub fn horizontal_components(a: &BZAlgebra) -> Vec<Vec<Elem>> {
    let n = a.n();
    let (bot, top) = (a.bot(), a.top());
    let inner: Vec<Elem> = (0..n).filter(|&x| x != bot && x != top).collect();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for &start in &inner {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            let mut link = |y: Elem, members: &mut Vec<Elem>| {
                if y != bot && y != top && comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            };
            link(a.inv(x), &mut members);
            link(a.brouwer(x), &mut members);
            for &y in &inner {
                if a.meet(x, y) != bot || a.join(x, y) != top {
                    link(y, &mut members);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// A split `L = A ⊞ B` with `A` orthomodular and `B` an antiortholattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthoAolSplit {
    /// Universe of the orthomodular summand, bounds included.
    pub ortho: Vec<Elem>,
    /// Universe of the antiortholattice summand, bounds included.
    pub aol: Vec<Elem>,
}

/// Decides membership in the class of horizontal sums of an orthomodular
/// lattice with an antiortholattice, returning the split when it exists.
///
/// Orthomodular components of the finest decomposition go to the first
/// summand; the remaining components together must form an antiortholattice.
pub fn ortho_aol_split(a: &BZAlgebra) -> Option<OrthoAolSplit> {
    let bounds = [a.bot(), a.top()];
    let with_bounds = |parts: &[&Vec<Elem>]| -> Vec<Elem> {
        let mut v: Vec<Elem> = parts.iter().flat_map(|p| p.iter().copied()).chain(bounds).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let is = |elems: &[Elem], flag: Flag| -> bool {
        induced_subalgebra(a, elems)
            .ok()
            .and_then(|sub| classify(&sub).ok())
            .is_some_and(|c| c.has(flag))
    };
    let comps = horizontal_components(a);
    let (ortho, rest): (Vec<&Vec<Elem>>, Vec<&Vec<Elem>>) =
        comps.iter().partition(|c| is(&with_bounds(&[c]), Flag::Orthomodular));
    let ortho = with_bounds(&ortho);
    let aol = with_bounds(&rest);
    (is(&aol, Flag::Antiortholattice) && is(&ortho, Flag::Orthomodular)).then_some(OrthoAolSplit { ortho, aol })
}

/// Whether `a` is a horizontal sum of an orthomodular lattice and an antiortholattice.
pub fn is_ortho_plus_aol(a: &BZAlgebra) -> bool {
    ortho_aol_split(a).is_some()
}

/// Truth values of the nine conditions, in the order of [`CONDITION_NAMES`].
/// On nontrivial PBZ*-lattices they all coincide.
pub fn membership_conditions(a: &BZAlgebra) -> [bool; 9] {
    let n = a.n();
    let sets = element_sets(a);
    let mut in_s = vec![false; n];
    let mut in_t = vec![false; n];
    let mut in_tp = vec![false; n];
    for &x in &sets.sharp {
        in_s[x] = true;
    }
    for &x in &sets.t_set {
        in_t[x] = true;
        in_tp[a.inv(x)] = true;
    }
    let all = |f: &dyn Fn(Elem) -> bool| (0..n).all(f);
    let closed_unary = |set: &[bool], f: &dyn Fn(Elem) -> Elem| all(&|x| !set[x] || set[f(x)]);
    let t_inv = closed_unary(&in_t, &|x| a.inv(x));
    let t_sub = t_inv
        && closed_unary(&in_t, &|x| a.brouwer(x))
        && all(&|x| !in_t[x] || all(&|y| !in_t[y] || (in_t[a.meet(x, y)] && in_t[a.join(x, y)])));
    let s_cup_t = all(&|x| in_s[x] || in_t[x]);
    let bound = |x: Elem| x == a.bot() || x == a.top();
    let s_plus_t = s_cup_t
        && all(&|x| !(in_s[x] && in_t[x]) || bound(x))
        && all(&|x| {
            bound(x)
                || !in_s[x]
                || all(&|y| bound(y) || !in_t[y] || (a.meet(x, y) == a.bot() && a.join(x, y) == a.top()))
        });
    let union: Vec<bool> = (0..n).map(|x| in_t[x] || in_tp[x]).collect();
    [
        is_ortho_plus_aol(a),
        t_sub && s_plus_t,
        s_cup_t,
        t_sub,
        t_inv,
        closed_unary(&in_tp, &|x| a.inv(x)),
        in_t == in_tp,
        closed_unary(&in_tp, &|x| a.brouwer(x)),
        closed_unary(&union, &|x| a.brouwer(x)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::{chain, horizontal_sum, mo, product};

    #[test]
    fn chain_and_mo_are_members() {
        assert!(membership_conditions(&chain(4)).iter().all(|&b| b));
        assert!(membership_conditions(&mo(3).unwrap()).iter().all(|&b| b));
    }

    #[test]
    fn components_of_a_horizontal_sum() {
        let (a, _) = horizontal_sum(&[&mo(2).unwrap(), &chain(4)]).unwrap();
        let comps = horizontal_components(&a);
        assert_eq!(comps.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 2, 2]);
        let split = ortho_aol_split(&a).unwrap();
        assert_eq!((split.ortho.len(), split.aol.len()), (6, 4));
    }

    #[test]
    fn product_with_sharp_and_dense_parts_is_not_a_member() {
        let a = product(&chain(2), &chain(3));
        let c = membership_conditions(&a);
        assert!(c.iter().all(|&b| !b), "{c:?}");
    }
}
