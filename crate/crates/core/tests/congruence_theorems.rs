//! Congruence structure of chains, sums, canonical antiortholattices and
//! products, compared against explicit descriptions.

mod common;

use common::{boolean, pbz_pool, plus_top, product_partition, rgs, small_catalog, tables};
use pbz_core::catalog::catalog;
use pbz_core::congruence::{
    congruence_lattice, congruence_lattice_with, irreducibility, is_congruence, lattice_congruences,
    principal_congruence, sum_congruence_horizontal, sum_congruence_ordinal, CongruenceError, CongruenceLattice,
    EnumerationLimits, Partition,
};
use pbz_core::order::{direct_product, FinLattice};
use pbz_core::signature::Level;
use pbz_core::structures::{classify, BZAlgebra, Flag};
use pbz_core::subalg::lattices_isomorphic;
use pbz_core::sums::{canonical_aol_with_map, chain, horizontal_sum, mo, ordinal_sum, product};
use pbz_oracle as oracle;

fn set(ps: impl IntoIterator<Item = Partition>) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = ps.into_iter().map(|p| rgs(&p)).collect();
    v.sort();
    v.dedup();
    v
}

fn con_set(con: &CongruenceLattice) -> Vec<Vec<usize>> {
    set(con.congruences().iter().cloned())
}

fn is_aol(a: &BZAlgebra) -> bool {
    classify(a).unwrap().has(Flag::Antiortholattice)
}

#[test]
fn chain_congruence_lattices() {
    for n in 1..=9 {
        let d = chain(n);
        let k = n / 2;
        let lat = congruence_lattice(&d, Level::Lattice).unwrap().lattice().unwrap();
        assert!(lattices_isomorphic(&lat, &boolean(n - 1)).unwrap(), "Con(D{n})");
        let bi = congruence_lattice(&d, Level::Bi).unwrap().lattice().unwrap();
        assert!(lattices_isomorphic(&bi, &boolean(k)).unwrap(), "Con_BI(D{n})");
        if n >= 2 {
            let bz = congruence_lattice(&d, Level::Bz).unwrap().lattice().unwrap();
            assert!(lattices_isomorphic(&bz, &plus_top(&boolean(k - 1))).unwrap(), "Con_BZ(D{n})");
        }
    }
}

#[test]
fn middle_collapse_of_four_chain() {
    let d4 = chain(4);
    let mid = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
    assert!(is_congruence(&d4, &mid, Level::Bz));
    let con = congruence_lattice(&d4, Level::Bz).unwrap();
    assert_eq!(con_set(&con), set([Partition::discrete(4), mid, Partition::total(4)]));
    for level in Level::ALL {
        assert!(is_congruence(&d4, &Partition::discrete(4), level));
        assert!(is_congruence(&d4, &Partition::total(4), level));
    }
}

#[test]
fn brouwer_compatibility_on_antiortholattices() {
    for (name, a) in pbz_pool(7).into_iter().filter(|(_, a)| is_aol(a) && a.n() >= 2) {
        let t = tables(&a, Level::Bi);
        for p in oracle::partitions(a.n()) {
            let part = Partition::from_block_ids(&p);
            let zero_alone = part.class_of(a.bot()).len() == 1;
            let one_alone = part.class_of(a.top()).len() == 1;
            if oracle::is_congruence(&t, &p) {
                assert_eq!(zero_alone, one_alone, "{name}: {p:?}");
                // A BI-congruence preserves the trivial Brouwer complement iff 0 is alone (or it is total).
                let bz = is_congruence(&a, &part, Level::Bz);
                assert_eq!(bz, zero_alone || part.is_total(), "{name}: {p:?}");
            } else {
                assert!(!is_congruence(&a, &part, Level::Bz));
            }
        }
        for x in 0..a.n() {
            if x != a.bot() {
                assert!(principal_congruence(&a, a.bot(), x, Level::Bz).is_total(), "{name}");
            }
            assert!(principal_congruence(&a, x, x, Level::Bz).is_discrete());
        }
    }
}

#[test]
fn mo2_is_simple() {
    let m = mo(2).unwrap();
    let a = m.index_of("a").unwrap_or(1);
    for level in Level::ALL {
        assert!(principal_congruence(&m, m.bot(), a, level).is_total());
        assert!(irreducibility(&m, level).unwrap().simple);
    }
}

#[test]
fn bz_congruences_of_antiortholattices() {
    for (name, a) in pbz_pool(10).into_iter().filter(|(_, a)| is_aol(a) && a.n() >= 2) {
        let bi = congruence_lattice(&a, Level::Bi).unwrap();
        let bz = congruence_lattice(&a, Level::Bz).unwrap();
        let mut want: Vec<Partition> = bi.con01().iter().map(|&i| bi.get(i).clone()).collect();
        want.push(Partition::total(a.n()));
        assert_eq!(con_set(&bz), set(want), "{name}");
        // The largest 0,1-restricted congruence is the unique coatom.
        let top01 = bi.con01().iter().copied().find(|&i| bi.con01().iter().all(|&j| bi.leq(j, i))).unwrap();
        let coatoms: Vec<&Partition> = bz
            .congruences()
            .iter()
            .filter(|p| !p.is_total() && bz.congruences().iter().all(|q| q.is_total() || q == *p || !p.refines(q)))
            .collect();
        assert_eq!(coatoms, vec![bi.get(top01)], "{name}");
    }
}

#[test]
fn ordinal_sum_congruences() {
    let d2 = FinLattice::chain(2);
    let (d3, map) = ordinal_sum(&d2, &d2);
    let delta = Partition::discrete(2);
    let nabla = Partition::total(2);
    assert!(sum_congruence_ordinal(&map, &[&delta, &delta]).unwrap().is_discrete());
    assert!(sum_congruence_ordinal(&map, &[&nabla, &nabla]).unwrap().is_total());
    let p = sum_congruence_ordinal(&map, &[&nabla, &delta]).unwrap();
    assert_eq!(rgs(&p), vec![0, 0, 1]);
    assert_eq!(d3.n(), 3);
}

#[test]
fn ordinal_sum_congruences_are_products() {
    let lats: Vec<FinLattice> = (2..=5)
        .flat_map(oracle::lattices)
        .map(|m| FinLattice::from_order(m.len(), |a, b| m[a][b]).unwrap())
        .collect();
    for l in &lats {
        for m in &lats {
            let (s, map) = ordinal_sum(l, m);
            let (cl, cm) = (lattice_congruences(l).unwrap(), lattice_congruences(m).unwrap());
            let cs = lattice_congruences(&s).unwrap();
            let mut image = Vec::new();
            for a in cl.congruences() {
                for b in cm.congruences() {
                    image.push((a.clone(), b.clone(), sum_congruence_ordinal(&map, &[a, b]).unwrap()));
                }
            }
            assert_eq!(set(image.iter().map(|t| t.2.clone())), con_set(&cs));
            assert_eq!(cs.len(), cl.len() * cm.len(), "the map is injective");
            for (a1, b1, s1) in &image {
                for (a2, b2, s2) in &image {
                    assert_eq!(s1.refines(s2), a1.refines(a2) && b1.refines(b2));
                }
            }
        }
    }
}

#[test]
fn horizontal_sum_congruence_examples() {
    let m1 = mo(1).unwrap();
    let (s, map) = horizontal_sum(&[&m1, &chain(4)]).unwrap();
    let d = Partition::discrete(4);
    let mid = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
    assert!(sum_congruence_horizontal(&map, &[&d, &d]).unwrap().is_discrete());
    let p = sum_congruence_horizontal(&map, &[&d, &mid]).unwrap();
    assert_eq!(p.block_count(), s.n() - 1);
    assert!(p.same(map.embedding[1][1], map.embedding[1][2]));
    assert!(is_congruence(&s, &p, Level::Bz));
    assert!(matches!(
        sum_congruence_horizontal(&map, &[&Partition::total(4), &d]),
        Err(CongruenceError::ImproperInput(0))
    ));
    // Δ of D2 is neutral.
    let (same, map2) = horizontal_sum(&[&chain(2), &chain(4)]).unwrap();
    let q = sum_congruence_horizontal(&map2, &[&Partition::discrete(2), &mid]).unwrap();
    assert_eq!(same.n(), 4);
    assert_eq!(rgs(&q), rgs(&mid));
}

#[test]
fn full_horizontal_congruences_are_lattice_congruences() {
    let parts: Vec<BZAlgebra> = vec![chain(3), chain(4), mo(1).unwrap(), mo(2).unwrap(), catalog().get("HEX").unwrap().algebra.clone()];
    for a in &parts {
        for b in &parts {
            let (s, map) = horizontal_sum(&[a, b]).unwrap();
            if !classify(&s).unwrap().has(Flag::BZ) {
                continue;
            }
            let ca = congruence_lattice(a, Level::Bz).unwrap();
            let cb = congruence_lattice(b, Level::Bz).unwrap();
            for alpha in ca.congruences().iter().filter(|p| !p.is_total()) {
                for beta in cb.congruences().iter().filter(|p| !p.is_total()) {
                    let p = sum_congruence_horizontal(&map, &[alpha, beta]).unwrap();
                    assert_eq!(is_congruence(&s, &p, Level::Bz), is_congruence(&s, &p, Level::Lattice));
                }
            }
        }
    }
}

#[test]
fn chain_irreducibility_examples() {
    let r = irreducibility(&chain(5), Level::Bz).unwrap();
    assert!(r.subdirectly_irreducible && !r.simple);
    assert!(r.monolith.is_some());
    let r = irreducibility(&chain(6), Level::Bz).unwrap();
    assert!(!r.subdirectly_irreducible && r.monolith.is_none());
    assert!(irreducibility(&chain(3), Level::Bz).unwrap().simple);
}

#[test]
fn product_congruences_split() {
    let parts: Vec<(String, BZAlgebra)> = small_catalog(5).into_iter().filter(|(_, a)| a.n() >= 2).collect();
    let limits = EnumerationLimits { max_universe: 25, ..EnumerationLimits::default() };
    for (na, a) in &parts {
        for (nb, b) in &parts {
            if a.n() * b.n() > 16 {
                continue;
            }
            let p = product(a, b);
            for level in Level::ALL {
                let cp = congruence_lattice_with(&p, level, &limits).unwrap();
                let ca = congruence_lattice(a, level).unwrap();
                let cb = congruence_lattice(b, level).unwrap();
                let got: Vec<Partition> = cp.con01().iter().map(|&i| cp.get(i).clone()).collect();
                let mut want = Vec::new();
                for &i in ca.con01() {
                    for &j in cb.con01() {
                        want.push(product_partition(ca.get(i), cb.get(j)));
                    }
                }
                assert_eq!(set(got), set(want), "{na} x {nb} at {level}");
            }
        }
    }
}

#[test]
fn products_of_lattices_use_the_product_index() {
    let l = direct_product(&FinLattice::chain(2), &FinLattice::chain(3));
    let p = product(&chain(2), &chain(3));
    assert_eq!(p.lat().n(), l.n());
    assert!((0..6).all(|x| (0..6).all(|y| p.leq(x, y) == l.leq(x, y))));
}

#[test]
fn canonical_aol_congruences() {
    let ms = [FinLattice::chain(2), FinLattice::chain(3), mo(1).unwrap().lat().clone()];
    let ks = [chain(1), chain(2), chain(3), mo(1).unwrap(), mo(2).unwrap()];
    for m in &ms {
        for k in &ks {
            let (a, map) = canonical_aol_with_map(m, k).unwrap();
            let cm = lattice_congruences(m).unwrap();
            let ck = congruence_lattice(k, Level::Bi).unwrap();
            let mut bi = Vec::new();
            let mut bz = vec![Partition::total(a.n())];
            for alpha in cm.congruences() {
                for beta in ck.congruences() {
                    let p = sum_congruence_ordinal(&map, &[alpha, beta, alpha]).unwrap();
                    if alpha.class_of(m.bot()).len() == 1 {
                        bz.push(p.clone());
                    }
                    bi.push(p);
                }
            }
            assert_eq!(con_set(&congruence_lattice(&a, Level::Bi).unwrap()), set(bi.clone()));
            assert_eq!(bi.len(), cm.len() * ck.len());
            assert_eq!(con_set(&congruence_lattice(&a, Level::Bz).unwrap()), set(bz));
        }
    }
}
