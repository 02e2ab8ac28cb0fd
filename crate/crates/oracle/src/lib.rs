//! Brute-force reference implementations used as test oracles.
//!
//! Everything here works on raw tables (order matrix, meet/join tables,
//! unary maps) and deliberately shares no code with the engine: the
//! algorithms are the naive textbook ones (restricted growth strings for
//! partitions, all permutations for isomorphism, full quantifier sweeps for
//! axioms).

/// A finite algebra given by raw tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub n: usize,
    /// `leq[x][y]` iff `x ≤ y`.
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
    /// Unary operations (e.g. `[′]` or `[′, ~]`).
    pub unary: Vec<Vec<usize>>,
}

impl Tables {
    /// Builds tables from an order matrix; `None` if it is not a bounded lattice.
    pub fn from_leq(leq: Vec<Vec<bool>>, unary: Vec<Vec<usize>>) -> Option<Tables> {
        let n = leq.len();
        let bound = |x: usize, y: usize, lower: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&z| if lower { leq[z][x] && leq[z][y] } else { leq[x][z] && leq[y][z] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&z| cands.iter().all(|&w| if lower { leq[w][z] } else { leq[z][w] }))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                meet[x][y] = bound(x, y, true)?;
                join[x][y] = bound(x, y, false)?;
            }
        }
        let bot = (0..n).find(|&b| (0..n).all(|x| leq[b][x]))?;
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x][t]))?;
        Some(Tables {
            n,
            leq,
            meet,
            join,
            bot,
            top,
            unary,
        })
    }

    /// The same algebra with other unary operations.
    pub fn with_unary(&self, unary: Vec<Vec<usize>>) -> Tables {
        Tables { unary, ..self.clone() }
    }
}

/// All set partitions of `{0..n}` as block-id vectors in restricted growth form.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            if i == 0 && b > 0 {
                break;
            }
            cur.push(b);
            rec(i + 1, n, if i == 0 { 0 } else { max.max(b) }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    rec(0, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Bell numbers, for sanity checks.
pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Whether the block-id vector `p` is compatible with every operation.
pub fn is_congruence(t: &Tables, p: &[usize]) -> bool {
    let n = t.n;
    for x in 0..n {
        for y in 0..n {
            if p[x] != p[y] {
                continue;
            }
            for f in &t.unary {
                if p[f[x]] != p[f[y]] {
                    return false;
                }
            }
            for z in 0..n {
                for w in 0..n {
                    if p[z] == p[w] && (p[t.meet[x][z]] != p[t.meet[y][w]] || p[t.join[x][z]] != p[t.join[y][w]]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All congruences, by filtering every partition (restricted growth form).
pub fn congruences(t: &Tables) -> Vec<Vec<usize>> {
    partitions(t.n).into_iter().filter(|p| is_congruence(t, p)).collect()
}

/// Whether `p` refines `q`.
pub fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..p.len()).all(|y| p[x] != p[y] || q[x] == q[y]))
}

/// Whether the algebra is directly irreducible: nontrivial and without a pair
/// of nontrivial congruences that meet in Δ and compose to ∇.
pub fn directly_irreducible(t: &Tables) -> bool {
    if t.n < 2 {
        return false;
    }
    let cons = congruences(t);
    let n = t.n;
    let nontrivial: Vec<&Vec<usize>> = cons
        .iter()
        .filter(|p| p.iter().any(|&b| b != 0) && (0..n).any(|x| (0..n).any(|y| x != y && p[x] == p[y])))
        .collect();
    for a in &nontrivial {
        for b in &nontrivial {
            let meet_delta = (0..n).all(|x| (0..n).all(|y| x == y || a[x] != a[y] || b[x] != b[y]));
            let compose_total = (0..n).all(|x| (0..n).all(|y| (0..n).any(|z| a[x] == a[z] && b[z] == b[y])));
            if meet_delta && compose_total {
                return false;
            }
        }
    }
    true
}

/// Whether the algebra is subdirectly irreducible: nontrivial with a least nontrivial congruence.
pub fn subdirectly_irreducible(t: &Tables) -> bool {
    if t.n < 2 {
        return false;
    }
    let n = t.n;
    let cons = congruences(t);
    let nontrivial: Vec<&Vec<usize>> = cons
        .iter()
        .filter(|p| (0..n).any(|x| (0..n).any(|y| x != y && p[x] == p[y])))
        .collect();
    nontrivial.iter().any(|m| nontrivial.iter().all(|p| refines(m, p)))
}

/// Whether the algebra is simple: exactly two congruences.
pub fn simple(t: &Tables) -> bool {
    t.n >= 2 && congruences(t).len() == 2
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isomorphism by trying every permutation (only for tiny universes).
pub fn isomorphic(a: &Tables, b: &Tables) -> bool {
    if a.n != b.n || a.unary.len() != b.unary.len() {
        return false;
    }
    permutations(a.n).into_iter().any(|f| {
        (0..a.n).all(|x| {
            a.unary.iter().zip(&b.unary).all(|(ua, ub)| f[ua[x]] == ub[f[x]]) && (0..a.n).all(|y| a.leq[x][y] == b.leq[f[x]][f[y]])
        })
    })
}

/// All bounded lattices with `n` elements up to isomorphism, as order matrices
/// with 0 as bottom and `n − 1` as top.
pub fn lattices(n: usize) -> Vec<Vec<Vec<bool>>> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![vec![true]]];
    }
    let k = n - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut found: Vec<Tables> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        // Transitive relations only.
        let transitive = (0..k).all(|i| (0..k).all(|j| (0..k).all(|l| !(rel[i][j] && rel[j][l]) || rel[i][l])));
        if !transitive {
            continue;
        }
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            leq[0][x] = true;
            leq[x][n - 1] = true;
            leq[x][x] = true;
        }
        for i in 0..k {
            for j in 0..k {
                if rel[i][j] {
                    leq[i + 1][j + 1] = true;
                }
            }
        }
        let Some(t) = Tables::from_leq(leq, Vec::new()) else {
            continue;
        };
        if !found.iter().any(|f| isomorphic(f, &t)) {
            found.push(t);
        }
    }
    found.into_iter().map(|t| t.leq).collect()
}

/// All order-reversing involutions of a lattice, by trying every permutation.
pub fn antitone_involutions(leq: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = leq.len();
    permutations(n)
        .into_iter()
        .filter(|f| (0..n).all(|x| f[f[x]] == x && (0..n).all(|y| !leq[x][y] || leq[f[y]][f[x]])))
        .collect()
}

/// The trivial Brouwer map: `0 ↦ 1`, everything else `↦ 0`.
pub fn trivial_brouwer(t: &Tables) -> Vec<usize> {
    (0..t.n).map(|x| if x == t.bot { t.top } else { t.bot }).collect()
}

/// Whether `(lattice, inv, brouwer)` (in `t.unary[0]`, `t.unary[1]`) is an
/// antiortholattice, checked from the definitions: pseudo-Kleene, BZ axioms,
/// condition (*), paraorthomodular, and only the bounds are sharp.
pub fn is_antiortholattice(t: &Tables) -> bool {
    let (inv, br) = (&t.unary[0], &t.unary[1]);
    let n = t.n;
    let r = 0..n;
    let pk = r.clone().all(|a| r.clone().all(|b| t.leq[t.meet[a][inv[a]]][t.join[b][inv[b]]]));
    let bz = r.clone().all(|a| {
        t.meet[a][br[a]] == t.bot
            && t.leq[a][br[br[a]]]
            && inv[br[a]] == br[br[a]]
            && r.clone().all(|b| !t.leq[a][b] || t.leq[br[b]][br[a]])
    });
    let star = r.clone().all(|a| t.leq[br[t.meet[a][inv[a]]]][t.join[br[a]][br[inv[a]]]]);
    let para = r
        .clone()
        .all(|a| r.clone().all(|b| !(t.leq[a][b] && t.meet[inv[a]][b] == t.bot) || a == b));
    let sharp_bounds = r.clone().all(|a| t.meet[a][inv[a]] != t.bot || a == t.bot || a == t.top);
    pk && bz && star && para && sharp_bounds
}

/// Whether the Strong de Morgan law `(x ∧ y)~ = x~ ∨ y~` holds.
pub fn sdm(t: &Tables) -> bool {
    let br = &t.unary[1];
    (0..t.n).all(|x| (0..t.n).all(|y| br[t.meet[x][y]] == t.join[br[x]][br[y]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        for n in 0..=7 {
            assert_eq!(partitions(n).len(), bell(n));
        }
        assert_eq!(bell(5), 52);
    }

    #[test]
    fn lattice_counts_match_known_sequence() {
        // Unlabelled lattices: 1, 1, 1, 2, 5, 15 on 1..6 elements.
        let counts: Vec<usize> = (1..=6).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn three_chain_is_simple_antiortholattice() {
        let leq = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
        let t = Tables::from_leq(leq, Vec::new()).unwrap();
        let invs = antitone_involutions(&t.leq);
        assert_eq!(invs, vec![vec![2, 1, 0]]);
        let bz = t.with_unary(vec![invs[0].clone(), trivial_brouwer(&t)]);
        assert!(is_antiortholattice(&bz));
        assert!(simple(&bz));
        assert!(sdm(&bz));
    }
}
