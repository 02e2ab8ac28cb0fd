//! Generated subalgebras, quotients, isomorphism and singleton-generated
//! subalgebras, with the isomorphism checker compared against a permutation
//! search.

mod common;

use common::{pbz_pool, pool, small_catalog, tables};
use pbz_core::catalog::catalog;
use pbz_core::congruence::{congruence_lattice, Partition};
use pbz_core::decompose::is_ortho_plus_aol;
use pbz_core::order::{direct_product, lattice_from_covers, CoverList, FinLattice};
use pbz_core::signature::Level;
use pbz_core::structures::{classify, element_sets, BZAlgebra, Flag};
use pbz_core::subalg::{
    generate, generate_at, generate_in_lattice, induced_subalgebra, isomorphic, isomorphism, lattices_isomorphic,
    quotient, singleton_class, SingletonClass, SubalgError,
};
use pbz_core::sums::{canonical_aol, chain, horizontal_sum, mo, product};
use pbz_oracle as oracle;

fn el(a: &BZAlgebra, label: &str) -> usize {
    a.index_of(label).unwrap()
}

fn is_hom(a: &BZAlgebra, b: &BZAlgebra, f: &[usize]) -> bool {
    (0..a.n()).all(|x| {
        f[a.inv(x)] == b.inv(f[x])
            && f[a.brouwer(x)] == b.brouwer(f[x])
            && (0..a.n()).all(|y| f[a.meet(x, y)] == b.meet(f[x], f[y]) && f[a.join(x, y)] == b.join(f[x], f[y]))
    })
}

#[test]
fn generation_examples() {
    let m = mo(2).unwrap();
    assert_eq!(generate(&m, &[]).elements, vec![m.bot(), m.top()]);
    let a = el(&m, "a");
    let mut want = vec![m.bot(), a, m.inv(a), m.top()];
    want.sort_unstable();
    assert_eq!(generate(&m, &[a]).elements, want);

    let hex8 = canonical_aol(chain(2).lat(), &mo(2).unwrap()).unwrap();
    let x = (0..hex8.n())
        .find(|&x| !hex8.lat().comparable(x, hex8.inv(x)))
        .unwrap();
    let s = generate(&hex8, &[x]);
    assert_eq!(s.len(), 6);
    let mut want = vec![
        hex8.bot(),
        hex8.meet(x, hex8.inv(x)),
        x,
        hex8.inv(x),
        hex8.join(x, hex8.inv(x)),
        hex8.top(),
    ];
    want.sort_unstable();
    assert_eq!(s.elements, want);
    assert_eq!(singleton_class(&hex8, x).unwrap(), SingletonClass::HEX);
}

#[test]
fn generated_subuniverses_are_closed_and_least() {
    for (name, a) in pool(8) {
        for x in 0..a.n() {
            for y in x..a.n() {
                let s = generate(&a, &[x, y]);
                let inside = |z: usize| s.contains(z);
                assert!(inside(a.bot()) && inside(a.top()) && inside(x) && inside(y));
                for &p in &s.elements {
                    assert!(inside(a.inv(p)) && inside(a.brouwer(p)), "{name}");
                    for &q in &s.elements {
                        assert!(inside(a.meet(p, q)) && inside(a.join(p, q)), "{name}");
                    }
                }
                // Least: every element of ⟨x, y⟩ lies in every closed superset of the seeds,
                // in particular in the closure built one operation at a time from the seeds.
                let mut acc = vec![a.bot(), a.top(), x, y];
                loop {
                    let mut next = acc.clone();
                    for &p in &acc {
                        next.push(a.inv(p));
                        next.push(a.brouwer(p));
                        for &q in &acc {
                            next.push(a.meet(p, q));
                            next.push(a.join(p, q));
                        }
                    }
                    next.sort_unstable();
                    next.dedup();
                    if next == acc {
                        break;
                    }
                    acc = next;
                }
                assert_eq!(s.elements, acc, "{name}");
            }
        }
    }
}

#[test]
fn quotient_examples() {
    for (name, a) in small_catalog(9) {
        let delta = Partition::discrete(a.n());
        assert!(isomorphic(&quotient(&a, &delta).unwrap(), &a).unwrap(), "{name}");
        let nabla = Partition::total(a.n());
        assert_eq!(quotient(&a, &nabla).unwrap().n(), 1, "{name}");
    }
    let d5 = chain(5);
    // Collapsing only {1, 2} is not compatible with the involution 1 ↔ 3.
    let p = Partition::from_block_ids(&[0, 1, 1, 2, 3]);
    assert!(matches!(quotient(&d5, &p), Err(SubalgError::NotACongruence)));
    let p = Partition::from_block_ids(&[0, 1, 1, 1, 2]);
    assert!(isomorphic(&quotient(&d5, &p).unwrap(), &chain(3)).unwrap());
    let d6 = chain(6);
    let p = Partition::from_block_ids(&[0, 1, 2, 2, 3, 4]);
    assert!(isomorphic(&quotient(&d6, &p).unwrap(), &chain(5)).unwrap());
    let d4 = chain(4);
    let p = Partition::from_block_ids(&[0, 1, 1, 2]);
    assert!(isomorphic(&quotient(&d4, &p).unwrap(), &chain(3)).unwrap());
}

#[test]
fn quotient_map_is_a_homomorphism() {
    for (name, a) in pool(7) {
        let con = congruence_lattice(&a, Level::Bz).unwrap();
        for theta in con.congruences() {
            let q = quotient(&a, theta).unwrap();
            let f: Vec<usize> = (0..a.n()).map(|x| theta.block_of(x)).collect();
            assert!(is_hom(&a, &q, &f), "{name}");
        }
    }
}

#[test]
fn isomorphism_examples() {
    let d3 = chain(3);
    assert_eq!(isomorphism(&d3, &d3).unwrap(), Some(vec![0, 1, 2]));
    let sq = product(&chain(2), &chain(2));
    assert!(!isomorphic(&sq, &chain(4)).unwrap());
    let m2 = mo(2).unwrap();
    let (x, _) = horizontal_sum(&[&m2, &d3]).unwrap();
    let (y, _) = horizontal_sum(&[&d3, &m2]).unwrap();
    let w = isomorphism(&x, &y).unwrap().unwrap();
    assert!(is_hom(&x, &y, &w));
    let m3 = &catalog().get("M3").unwrap().algebra;
    let (z, _) = horizontal_sum(&[&mo(1).unwrap(), &d3]).unwrap();
    assert!(isomorphic(&z, m3).unwrap());
}

#[test]
fn isomorphism_matches_permutation_search() {
    let algebras: Vec<(String, BZAlgebra)> = pool(6);
    for (i, (na, a)) in algebras.iter().enumerate() {
        for (nb, b) in algebras.iter().skip(i) {
            if a.n() != b.n() {
                continue;
            }
            let got = isomorphism(a, b).unwrap();
            let want = oracle::isomorphic(&tables(a, Level::Bz), &tables(b, Level::Bz));
            assert_eq!(got.is_some(), want, "{na} vs {nb}");
            if let Some(w) = got {
                assert!(is_hom(a, b, &w), "{na} vs {nb}");
            }
        }
    }
    // Lattice level: all lattices on up to 6 elements, pairwise.
    for n in 1..=6 {
        let ls: Vec<_> = oracle::lattices(n);
        let fins: Vec<FinLattice> = ls
            .iter()
            .map(|leq| FinLattice::from_order(leq.len(), |i, j| leq[i][j]).unwrap())
            .collect();
        for i in 0..fins.len() {
            for j in 0..fins.len() {
                assert_eq!(lattices_isomorphic(&fins[i], &fins[j]).unwrap(), i == j, "n={n} {i} {j}");
            }
        }
    }
}

#[test]
fn singleton_examples() {
    let a = chain(3);
    assert_eq!(singleton_class(&a, a.bot()).unwrap(), SingletonClass::D2);
    assert_eq!(singleton_class(&a, 1).unwrap(), SingletonClass::D3);
    assert_eq!(singleton_class(&chain(1), 0).unwrap(), SingletonClass::D1);
    let d4 = chain(4);
    assert_eq!(singleton_class(&d4, 1).unwrap(), SingletonClass::D4);
    let (s, map) = horizontal_sum(&[&mo(3).unwrap(), &d4]).unwrap();
    let atom = map.embedding[0][1];
    assert_eq!(s.meet(atom, s.inv(atom)), s.bot());
    assert_eq!(singleton_class(&s, atom).unwrap(), SingletonClass::D2SQ);
    assert_eq!(singleton_class(&s, map.embedding[1][2]).unwrap(), SingletonClass::D4);
    assert!(matches!(singleton_class(&s, 99), Err(SubalgError::OutOfRange(99))));
}

#[test]
fn singletons_in_members_have_the_listed_types() {
    let mut counts = [0usize; 6];
    for (name, a) in pbz_pool(14) {
        if !is_ortho_plus_aol(&a) {
            continue;
        }
        for x in 0..a.n() {
            match singleton_class(&a, x) {
                Ok(c) => counts[c as usize] += 1,
                Err(e) => panic!("{name} at {}: {e}", a.label(x)),
            }
        }
    }
    assert!(counts.iter().skip(1).all(|&c| c > 0), "{counts:?}");
}

/// Generation over a product of seed sets: always contained in the product
/// of the generated subuniverses, and equal to it once every seed set
/// contains the bounds. Without the bounds the diagonal is a proper subset.
#[test]
fn generation_in_products() {
    let d3 = chain(3);
    let sq = product(&d3, &d3);
    assert_eq!(generate(&sq, &[4]).elements, vec![0, 4, 8]);
    assert_eq!(generate(&d3, &[1]).len() * generate(&d3, &[1]).len(), 9);

    let parts: Vec<(String, BZAlgebra)> = small_catalog(8);
    for (na, a) in &parts {
        for (nb, b) in &parts {
            if a.n() * b.n() > 64 {
                continue;
            }
            let p = product(a, b);
            let m = b.n();
            for x in 0..a.n() {
                for y in 0..m {
                    for with_bounds in [false, true] {
                        let mut seeds1 = vec![x];
                        let mut seeds2 = vec![y, b.inv(y)];
                        if with_bounds {
                            seeds1.extend([a.bot(), a.top()]);
                            seeds2.extend([b.bot(), b.top()]);
                        }
                        let g1 = generate(a, &seeds1);
                        let g2 = generate(b, &seeds2);
                        let seeds: Vec<usize> =
                            seeds1.iter().flat_map(|&i| seeds2.iter().map(move |&j| i * m + j)).collect();
                        let got = generate(&p, &seeds);
                        let mut want: Vec<usize> =
                            g1.elements.iter().flat_map(|&i| g2.elements.iter().map(move |&j| i * m + j)).collect();
                        want.sort_unstable();
                        assert!(got.elements.iter().all(|e| want.binary_search(e).is_ok()), "{na} x {nb}");
                        if with_bounds {
                            assert_eq!(got.elements, want, "{na} x {nb} at ({x}, {y})");
                        }
                    }
                }
            }
        }
    }
}

/// The image of a generated subuniverse in a quotient is generated by the image of the seeds.
#[test]
fn generation_in_quotients() {
    for (name, a) in pool(8) {
        let con = congruence_lattice(&a, Level::Bz).unwrap();
        for theta in con.congruences() {
            let q = quotient(&a, theta).unwrap();
            for x in 0..a.n() {
                let mut image: Vec<usize> = generate(&a, &[x]).elements.iter().map(|&e| theta.block_of(e)).collect();
                image.sort_unstable();
                image.dedup();
                assert_eq!(generate(&q, &[theta.block_of(x)]).elements, image, "{name}");
            }
        }
    }
}

/// Intersecting with a subalgebra: ⟨S ∩ B⟩_B is always contained in ⟨S⟩ ∩ B,
/// and the inclusion can be strict.
#[test]
fn generation_and_intersections() {
    // The three-atom diamond with B = {0, a, b, 1} and S = {b, c}: both sides are {0, b, 1}.
    let m3 = lattice_from_covers(&CoverList::new(5, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])).unwrap();
    let (a, b, c) = (1, 2, 3);
    let bsub = [0, a, b, 4];
    let inner = generate_in_lattice(&m3, &[b]).elements;
    let outer: Vec<usize> = generate_in_lattice(&m3, &[b, c]).elements.into_iter().filter(|x| bsub.contains(x)).collect();
    assert_eq!(inner, vec![0, b, 4]);
    assert_eq!(outer, vec![0, b, 4]);

    // A strict instance in the eight-element Boolean lattice: with atoms p, q, r,
    // S = {p ∨ q, p ∨ r} misses B = {0, p, 1}, yet (p ∨ q) ∧ (p ∨ r) = p.
    let d2 = chain(2);
    let cube = direct_product(&direct_product(d2.lat(), d2.lat()), d2.lat());
    let atoms: Vec<usize> = (0..cube.n()).filter(|&x| cube.lower_covers(x) == vec![cube.bot()]).collect();
    let (p, q, r) = (atoms[0], atoms[1], atoms[2]);
    let s = [cube.join(p, q), cube.join(p, r)];
    let bsub = [cube.bot(), p, cube.top()];
    let seeds_in_b: Vec<usize> = s.iter().copied().filter(|x| bsub.contains(x)).collect();
    let inner = generate_in_lattice(&cube, &seeds_in_b).elements;
    let outer: Vec<usize> = generate_in_lattice(&cube, &s).elements.into_iter().filter(|x| bsub.contains(x)).collect();
    assert_eq!(inner, vec![cube.bot(), cube.top()]);
    assert_eq!(outer.len(), 3);
    assert!(inner.iter().all(|x| outer.contains(x)));

    // The inclusion itself, over subalgebras generated by pairs.
    for (name, a) in pool(7) {
        for u in 0..a.n() {
            let bset = generate(&a, &[u]).elements;
            let bsub = induced_subalgebra(&a, &bset).unwrap();
            for x in 0..a.n() {
                for y in x..a.n() {
                    let seeds_in_b: Vec<usize> =
                        [x, y].iter().filter_map(|e| bset.iter().position(|b| b == e)).collect();
                    let inner: Vec<usize> = generate(&bsub, &seeds_in_b).elements.iter().map(|&i| bset[i]).collect();
                    let outer = generate(&a, &[x, y]);
                    assert!(inner.iter().all(|&e| outer.contains(e)), "{name}");
                }
            }
        }
    }
}

#[test]
fn t_sets_of_subalgebras_quotients_and_sums() {
    for (name, a) in pbz_pool(12) {
        let t = element_sets(&a).t_set;
        // Subalgebras generated by one or two elements.
        for x in 0..a.n() {
            for y in x..a.n() {
                let m = generate(&a, &[x, y]).elements;
                let sub = induced_subalgebra(&a, &m).unwrap();
                let mut got: Vec<usize> = element_sets(&sub).t_set.iter().map(|&i| m[i]).collect();
                got.sort_unstable();
                let want: Vec<usize> = m.iter().copied().filter(|e| t.contains(e)).collect();
                assert_eq!(got, want, "{name}");
            }
        }
        // Quotients by congruences that keep 0 and 1 isolated.
        let con = congruence_lattice(&a, Level::Bz).unwrap();
        for &i in con.con01() {
            let theta = con.get(i);
            let q = quotient(&a, theta).unwrap();
            let mut want: Vec<usize> = t.iter().map(|&e| theta.block_of(e)).collect();
            want.sort_unstable();
            want.dedup();
            let mut got = element_sets(&q).t_set;
            got.sort_unstable();
            assert_eq!(got, want, "{name}");
        }
    }
    for k in 1..=3 {
        for e in catalog().iter().filter(|e| e.algebra.n() > 1 && classify(&e.algebra).unwrap().has(Flag::PBZStar)) {
            let (s, map) = horizontal_sum(&[&mo(k).unwrap(), &e.algebra]).unwrap();
            let mut want: Vec<usize> = element_sets(&e.algebra).t_set.iter().map(|&x| map.embedding[1][x]).collect();
            want.sort_unstable();
            let mut got = element_sets(&s).t_set;
            got.sort_unstable();
            assert_eq!(got, want, "MO{k} + {}", e.name);
        }
    }
}

/// Among algebras satisfying J0, every antiortholattice has a complement-closed
/// T set that generates it, and for directly irreducible ones the converse holds.
/// The four-element Boolean algebra satisfies J0 and has T = {0, 1}, which is
/// closed but generates only the bounds, so the converse fails in general.
#[test]
fn j0_algebras_and_complement_closed_t_sets() {
    use pbz_core::congruence::irreducibility;
    use pbz_core::terms::{library_identity, satisfies};
    let b4 = mo(1).unwrap();
    assert!(satisfies(&b4, library_identity("J0")).unwrap().holds());
    assert_eq!(element_sets(&b4).t_set, vec![b4.bot(), b4.top()]);
    assert!(!classify(&b4).unwrap().has(Flag::Antiortholattice));
    assert_eq!(generate(&b4, &element_sets(&b4).t_set).len(), 2);

    let mut seen = (0, 0);
    for (name, a) in pbz_pool(14) {
        if !satisfies(&a, library_identity("J0")).unwrap().holds() {
            continue;
        }
        let t = element_sets(&a).t_set;
        let closed = t.iter().all(|&x| t.contains(&a.inv(x)));
        let aol = classify(&a).unwrap().has(Flag::Antiortholattice);
        if aol {
            seen.0 += 1;
            assert!(closed, "{name}");
            assert_eq!(generate(&a, &t).len(), a.n(), "{name}");
        } else if a.n() > 1 && irreducibility(&a, Level::Bz).unwrap().directly_irreducible {
            seen.1 += 1;
            assert!(!closed, "{name}");
        }
    }
    assert!(seen.0 > 0, "{seen:?}");
}

#[test]
fn generation_level_matters() {
    // The Brouwer complement adds elements that the involution alone does not.
    let d4 = chain(4);
    assert_eq!(generate_at(&d4, &[1], Level::Bi).elements, vec![0, 1, 2, 3]);
    let d5 = chain(5);
    assert_eq!(generate_at(&d5, &[2], Level::Lattice).elements, vec![0, 2, 4]);
    assert_eq!(generate_at(&d5, &[1], Level::Bi).elements, vec![0, 1, 3, 4]);
}
