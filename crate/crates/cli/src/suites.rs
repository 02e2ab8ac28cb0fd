//! Theorem-verification suites, held in a registry of trait objects.
//!
//! A suite checks one family of statements over finite instances and
//! returns a [`SuiteReport`]: one [`CheckRecord`] per statement with its
//! instance count, failure count and the first counterexamples. Instances
//! are checked in parallel; records keep a fixed order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use pbz_core::catalog::catalog;
use pbz_core::congruence::{
    congruence_lattice, irreducibility, lattice_congruences, sum_congruence_horizontal, sum_congruence_ordinal,
    CongruenceLattice, Partition,
};
use pbz_core::decompose::{is_ortho_plus_aol, membership_conditions, CONDITION_NAMES};
use pbz_core::order::{direct_product, FinLattice};
use pbz_core::signature::Level;
use pbz_core::structures::{classify, BZAlgebra, Flag};
use pbz_core::subalg::{isomorphic, lattices_isomorphic, singleton_class, SingletonClass};
use pbz_core::sums::{canonical_aol_with_map, chain, horizontal_sum, mo, ordinal_sum};
use pbz_core::terms::{library_identity, satisfies_with_budget, DEFAULT_MAX_EVALS};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::antiortholattices;
use crate::families::{Candidate, FamilyParams, FamilyRegistry};

/// Maximum number of counterexamples kept per check.
pub const MAX_EXAMPLES: usize = 8;

/// Outcome of one statement over its instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    /// The statement checked.
    pub check: String,
    /// Number of instances examined.
    pub instances: usize,
    /// Number of instances on which the statement failed.
    pub failures: usize,
    /// Descriptions of the first failing instances.
    pub counterexamples: Vec<String>,
    /// Informational lines (counts, listings).
    pub details: Vec<String>,
}

impl CheckRecord {
    /// A record with no instances yet.
    pub fn new(check: impl Into<String>) -> Self {
        CheckRecord {
            check: check.into(),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
            details: Vec::new(),
        }
    }

    /// Records one instance; `describe` is only called on failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_EXAMPLES {
                self.counterexamples.push(describe());
            }
        }
    }

    /// Records precomputed outcomes, in order.
    pub fn record_all(&mut self, outcomes: impl IntoIterator<Item = Result<(), String>>) {
        for o in outcomes {
            match o {
                Ok(()) => self.record(true, String::new),
                Err(e) => self.record(false, || e),
            }
        }
    }

    /// Whether no instance failed.
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// The report of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub max_size: usize,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    /// Wall-clock time in milliseconds (the only field that varies between runs).
    pub wall_ms: u128,
}

impl SuiteReport {
    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// The record with the given statement, if present.
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check == name)
    }
}

/// Parameters of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteParams {
    /// Size bound; `None` uses the suite's default.
    pub max_size: Option<usize>,
    /// Seed for randomized families.
    pub seed: u64,
}

/// A named collection of checks.
pub trait Suite: Send + Sync {
    /// Registry name.
    fn name(&self) -> &'static str;
    /// One-line description of the statements checked.
    fn description(&self) -> &'static str;
    /// Size bound used when none is given.
    fn default_max_size(&self) -> usize;
    /// Runs the checks at the given size bound.
    fn checks(&self, max_size: usize, seed: u64) -> Vec<CheckRecord>;

    /// Runs the suite and times it.
    fn run(&self, params: &SuiteParams) -> SuiteReport {
        let start = Instant::now();
        let max_size = params.max_size.unwrap_or(self.default_max_size());
        let checks = self.checks(max_size, params.seed);
        SuiteReport {
            suite: self.name().to_string(),
            description: self.description().to_string(),
            max_size,
            seed: params.seed,
            checks,
            wall_ms: start.elapsed().as_millis(),
        }
    }
}

/// Name-indexed suites.
#[derive(Clone, Default)]
pub struct SuiteRegistry {
    suites: Vec<Arc<dyn Suite>>,
}

impl SuiteRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        SuiteRegistry::default()
    }

    /// The built-in suites.
    pub fn standard() -> Self {
        let mut r = SuiteRegistry::new();
        r.register(Arc::new(ChainCongruences));
        r.register(Arc::new(SiChains));
        r.register(Arc::new(ExampleTable));
        r.register(Arc::new(CanonicalAolCongruences));
        r.register(Arc::new(HorizontalCongruences));
        r.register(Arc::new(Membership));
        r.register(Arc::new(HorizontalTransfer));
        r.register(Arc::new(SmallAntiortholattices));
        r.register(Arc::new(Singletons));
        r.register(Arc::new(Implications));
        r
    }

    /// Adds a suite; a later registration with the same name replaces the earlier one.
    pub fn register(&mut self, s: Arc<dyn Suite>) {
        self.suites.retain(|t| t.name() != s.name());
        self.suites.push(s);
    }

    /// Looks up a suite by name (case-insensitive).
    pub fn get(&self, name: &str) -> Option<Arc<dyn Suite>> {
        self.suites.iter().find(|s| s.name().eq_ignore_ascii_case(name)).cloned()
    }

    /// Registered names in registration order.
    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    /// Iterates over the suites.
    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Suite>> {
        self.suites.iter()
    }
}

// ---------------------------------------------------------------------------
// Shared helpers

/// `D2^k` as a lattice (`D1` for `k = 0`).
pub fn boolean_lattice(k: usize) -> FinLattice {
    (0..k).fold(FinLattice::chain(1), |acc, _| direct_product(&acc, &FinLattice::chain(2)))
}

/// `l ⊕ D2`: a new top above `l`.
pub fn plus_top(l: &FinLattice) -> FinLattice {
    ordinal_sum(l, &FinLattice::chain(2)).0
}

fn key(p: &Partition) -> Vec<usize> {
    Partition::from_block_ids(p.block_ids()).block_ids().to_vec()
}

fn key_set<'a>(ps: impl IntoIterator<Item = &'a Partition>) -> BTreeSet<Vec<usize>> {
    ps.into_iter().map(key).collect()
}

fn iso(l: &FinLattice, m: &FinLattice) -> bool {
    l.n() == m.n() && lattices_isomorphic(l, m).unwrap_or(false)
}

fn has(a: &BZAlgebra, flag: Flag) -> bool {
    classify(a).is_ok_and(|c| c.has(flag))
}

fn holds(a: &BZAlgebra, id: &str) -> Result<bool, String> {
    satisfies_with_budget(a, library_identity(id), DEFAULT_MAX_EVALS)
        .map(|v| v.holds())
        .map_err(|e| e.to_string())
}

fn con(a: &BZAlgebra, level: Level) -> Result<CongruenceLattice, String> {
    congruence_lattice(a, level).map_err(|e| e.to_string())
}

fn sub(c: &CongruenceLattice, members: &[usize]) -> Result<FinLattice, String> {
    c.sublattice(members).map_err(|e| e.to_string())
}

/// Catalog plus every generated family within `max_size`, without isomorphic duplicates.
pub fn scope(max_size: usize, seed: u64) -> Vec<Candidate> {
    let all = FamilyRegistry::standard().get("all").expect("the `all` family is registered");
    all.generate(&FamilyParams { max_size, seed })
}

fn catalog_pbz() -> Vec<(&'static str, &'static BZAlgebra)> {
    catalog()
        .iter()
        .filter(|e| e.algebra.n() >= 2 && has(&e.algebra, Flag::PBZStar))
        .map(|e| (e.name.as_str(), &e.algebra))
        .collect()
}

// ---------------------------------------------------------------------------
// Suites

/// Congruence lattices of chains.
pub struct ChainCongruences;

impl Suite for ChainCongruences {
    fn name(&self) -> &'static str {
        "chain-congruences"
    }
    fn description(&self) -> &'static str {
        "Con(Dn) = D2^(n-1), Con_BI(Dn) = D2^k and Con_BZ(Dn) = D2^(k-1) (+) D2 for k = floor(n/2)"
    }
    fn default_max_size(&self) -> usize {
        9
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let rows: Vec<[Result<(), String>; 3]> = (1..=max_size)
            .into_par_iter()
            .map(|n| {
                let d = chain(n);
                let k = n / 2;
                let check = |level: Level, want: FinLattice, what: &str| -> Result<(), String> {
                    let c = con(&d, level)?;
                    let l = c.lattice().map_err(|e| e.to_string())?;
                    if iso(&l, &want) {
                        Ok(())
                    } else {
                        Err(format!("D{n}: Con_{level} has {} elements, expected {what} ({})", l.n(), want.n()))
                    }
                };
                let bz_want = if n == 1 { FinLattice::chain(1) } else { plus_top(&boolean_lattice(k - 1)) };
                [
                    check(Level::Lattice, boolean_lattice(n - 1), &format!("D2^{}", n - 1)),
                    check(Level::Bi, boolean_lattice(k), &format!("D2^{k}")),
                    check(Level::Bz, bz_want, &format!("D2^{} (+) D2", k.saturating_sub(1))),
                ]
            })
            .collect();
        let mut out = vec![
            CheckRecord::new("Con(Dn) = D2^(n-1)"),
            CheckRecord::new("Con_BI(Dn) = D2^floor(n/2)"),
            CheckRecord::new("Con_BZ(Dn) = D2^(floor(n/2)-1) (+) D2"),
        ];
        for row in rows {
            for (rec, r) in out.iter_mut().zip(row) {
                rec.record_all([r]);
            }
        }
        out
    }
}

/// Subdirectly irreducible chains.
pub struct SiChains;

impl Suite for SiChains {
    fn name(&self) -> &'static str {
        "si-chains"
    }
    fn description(&self) -> &'static str {
        "the SI involution chains are D1, D2, D3; the SI antiortholattice chains are D1..D5"
    }
    fn default_max_size(&self) -> usize {
        9
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let mut bi = CheckRecord::new("SI BI-chains are exactly D1, D2, D3");
        let mut bz = CheckRecord::new("SI antiortholattice chains are exactly D1..D5");
        let mut si_bi = Vec::new();
        let mut si_bz = Vec::new();
        for n in 1..=max_size {
            let d = chain(n);
            for (level, rec, limit, list) in [(Level::Bi, &mut bi, 3, &mut si_bi), (Level::Bz, &mut bz, 5, &mut si_bz)] {
                match irreducibility(&d, level) {
                    Ok(r) => {
                        if r.subdirectly_irreducible {
                            list.push(format!("D{n}"));
                        }
                        rec.record(r.subdirectly_irreducible == (n <= limit), || {
                            format!("D{n}: SI at {level} is {}", r.subdirectly_irreducible)
                        });
                    }
                    Err(e) => rec.record(false, || format!("D{n}: {e}")),
                }
            }
        }
        bi.details.push(format!("SI: {}", si_bi.join(", ")));
        bz.details.push(format!("SI: {}", si_bz.join(", ")));
        vec![bi, bz]
    }
}

/// One row of the identity table of the named examples.
struct TableRow {
    algebra: &'static str,
    identity: &'static str,
    holds: bool,
    /// Expected least witness (element labels) and, optionally, expected `(lhs, rhs)` labels.
    witness: Option<(&'static [&'static str], Option<(&'static str, &'static str)>)>,
}

const TABLE: &[TableRow] = &[
    TableRow { algebra: "M3", identity: "WSDM", holds: false, witness: None },
    TableRow { algebra: "K", identity: "S2", holds: true, witness: None },
    TableRow { algebra: "K", identity: "S3", holds: true, witness: None },
    TableRow { algebra: "K", identity: "J2", holds: false, witness: Some((&["u", "t"], Some(("u", "0")))) },
    TableRow { algebra: "L7", identity: "J1", holds: false, witness: Some((&["u", "t"], None)) },
    TableRow { algebra: "L7", identity: "S2", holds: false, witness: None },
    TableRow { algebra: "L7", identity: "S3", holds: true, witness: None },
    TableRow { algebra: "L7", identity: "J2", holds: false, witness: None },
    TableRow { algebra: "M11", identity: "J1", holds: true, witness: None },
    TableRow { algebra: "M11", identity: "S1", holds: false, witness: Some((&["z'", "a"], None)) },
    TableRow { algebra: "M11", identity: "J2", holds: false, witness: None },
    TableRow { algebra: "M11", identity: "S2", holds: false, witness: None },
    TableRow { algebra: "M11", identity: "S3", holds: false, witness: None },
];

/// The identity verdicts of the four named examples, with witnesses.
pub struct ExampleTable;

impl ExampleTable {
    /// The statement text of each row, in table order.
    pub fn row_names() -> Vec<String> {
        TABLE.iter().map(row_name).collect()
    }
}

fn row_name(r: &TableRow) -> String {
    let mut s = format!("{} {} {}", r.algebra, if r.holds { "satisfies" } else { "fails" }, r.identity);
    if let Some((w, vals)) = r.witness {
        s.push_str(&format!(" at ({})", w.join(", ")));
        if let Some((l, rr)) = vals {
            s.push_str(&format!(" with {l} != {rr}"));
        }
    }
    s
}

impl Suite for ExampleTable {
    fn name(&self) -> &'static str {
        "exfail-table"
    }
    fn description(&self) -> &'static str {
        "identity verdicts and least witnesses for M3, K, L7 and M11"
    }
    fn default_max_size(&self) -> usize {
        11
    }
    fn checks(&self, _max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        TABLE
            .iter()
            .map(|row| {
                let mut rec = CheckRecord::new(row_name(row));
                let a = &catalog().get(row.algebra).expect("catalog entry").algebra;
                let id = library_identity(row.identity);
                match satisfies_with_budget(a, id, DEFAULT_MAX_EVALS) {
                    Err(e) => rec.record(false, || e.to_string()),
                    Ok(v) => {
                        let got = match v.counterexample() {
                            None => "holds".to_string(),
                            Some(c) => format!(
                                "fails at ({}) with {} != {}",
                                c.assignment.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join(", "),
                                a.label(c.lhs),
                                a.label(c.rhs)
                            ),
                        };
                        let mut ok = v.holds() == row.holds;
                        if let (Some((w, vals)), Some(c)) = (row.witness, v.counterexample()) {
                            let labels: Vec<String> = c.assignment.iter().map(|&x| a.label(x)).collect();
                            ok &= labels == w;
                            if let Some((l, r)) = vals {
                                ok &= a.label(c.lhs) == l && a.label(c.rhs) == r;
                            }
                        }
                        rec.details.push(got.clone());
                        rec.record(ok, || format!("{} {}: {got}", row.algebra, row.identity));
                    }
                }
                rec
            })
            .collect()
    }
}

/// Congruences of canonical antiortholattices `M ⊕ K ⊕ Mᵈ`.
pub struct CanonicalAolCongruences;

impl CanonicalAolCongruences {
    fn parts() -> (Vec<(&'static str, FinLattice)>, Vec<(&'static str, BZAlgebra)>) {
        let m3 = catalog().get("M3").expect("M3").algebra.lat().clone().without_labels();
        let ms = vec![
            ("D2", FinLattice::chain(2)),
            ("D3", FinLattice::chain(3)),
            ("D2^2", boolean_lattice(2)),
            ("M3", m3),
        ];
        let ks = vec![
            ("D1", chain(1)),
            ("D2", chain(2)),
            ("D3", chain(3)),
            ("D2^2", mo(1).expect("MO1")),
            ("MO2", mo(2).expect("MO2")),
        ];
        (ms, ks)
    }
}

impl Suite for CanonicalAolCongruences {
    fn name(&self) -> &'static str {
        "mainthaol"
    }
    fn description(&self) -> &'static str {
        "Con_BI(M (+) K (+) M^d) = Con(M) x Con_BI(K) and Con_BZ = (Con_0(M) x Con_BI(K)) (+) D2, by explicit bijection"
    }
    fn default_max_size(&self) -> usize {
        16
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let (ms, ks) = Self::parts();
        let pairs: Vec<(&(&str, FinLattice), &(&str, BZAlgebra))> = ms
            .iter()
            .flat_map(|m| ks.iter().map(move |k| (m, k)))
            .filter(|(m, k)| 2 * m.1.n() + k.1.n() - 2 <= max_size)
            .collect();
        let rows: Vec<[Result<(), String>; 4]> = pairs
            .par_iter()
            .map(|((nm, m), (nk, k))| {
                let tag = format!("{nm} (+) {nk} (+) {nm}^d");
                let fail = |e: String| -> [Result<(), String>; 4] {
                    let e = format!("{tag}: {e}");
                    [Err(e.clone()), Err(e.clone()), Err(e.clone()), Err(e)]
                };
                let (a, map) = match canonical_aol_with_map(m, k) {
                    Ok(x) => x,
                    Err(e) => return fail(e.to_string()),
                };
                let (cm, ck, bi, bz) = match (
                    lattice_congruences(m).map_err(|e| e.to_string()),
                    con(k, Level::Bi),
                    con(&a, Level::Bi),
                    con(&a, Level::Bz),
                ) {
                    (Ok(cm), Ok(ck), Ok(bi), Ok(bz)) => (cm, ck, bi, bz),
                    (Err(e), ..) | (_, Err(e), ..) | (_, _, Err(e), _) | (.., Err(e)) => return fail(e),
                };
                let mut want_bi = Vec::new();
                let mut want_bz = vec![Partition::total(a.n())];
                for alpha in cm.congruences() {
                    for beta in ck.congruences() {
                        match sum_congruence_ordinal(&map, &[alpha, beta, alpha]) {
                            Ok(p) => {
                                if alpha.class_of(m.bot()).len() == 1 {
                                    want_bz.push(p.clone());
                                }
                                want_bi.push(p);
                            }
                            Err(e) => return fail(e.to_string()),
                        }
                    }
                }
                let set_eq = |got: &CongruenceLattice, want: &[Partition], what: &str| {
                    let (g, w) = (key_set(got.congruences()), key_set(want.iter()));
                    if g == w && w.len() == want.len() {
                        Ok(())
                    } else {
                        Err(format!("{tag}: {what} has {} congruences, the sums give {} distinct of {}", g.len(), w.len(), want.len()))
                    }
                };
                let iso_bi = (|| -> Result<(), String> {
                    let want = direct_product(&cm.lattice().map_err(|e| e.to_string())?, &ck.lattice().map_err(|e| e.to_string())?);
                    let got = bi.lattice().map_err(|e| e.to_string())?;
                    if iso(&got, &want) {
                        Ok(())
                    } else {
                        Err(format!("{tag}: Con_BI is not isomorphic to Con(M) x Con_BI(K)"))
                    }
                })();
                let iso_bz = (|| -> Result<(), String> {
                    let con0 = sub(&cm, cm.con0())?;
                    let want = plus_top(&direct_product(&con0, &ck.lattice().map_err(|e| e.to_string())?));
                    let got = bz.lattice().map_err(|e| e.to_string())?;
                    if iso(&got, &want) {
                        Ok(())
                    } else {
                        Err(format!("{tag}: Con_BZ is not isomorphic to (Con_0(M) x Con_BI(K)) (+) D2"))
                    }
                })();
                [set_eq(&bi, &want_bi, "Con_BI"), iso_bi, set_eq(&bz, &want_bz, "Con_BZ"), iso_bz]
            })
            .collect();
        let mut out = vec![
            CheckRecord::new("Con_BI(M (+) K (+) M^d) = {a (+) b (+) a^d}"),
            CheckRecord::new("Con_BI(M (+) K (+) M^d) = Con(M) x Con_BI(K)"),
            CheckRecord::new("Con_BZ(M (+) K (+) M^d) = {a (+) b (+) a^d : a in Con_0(M)} u {total}"),
            CheckRecord::new("Con_BZ(M (+) K (+) M^d) = (Con_0(M) x Con_BI(K)) (+) D2"),
        ];
        for row in rows {
            for (rec, r) in out.iter_mut().zip(row) {
                rec.record_all([r]);
            }
        }
        out
    }
}

/// Congruences of horizontal sums of catalog algebras.
pub struct HorizontalCongruences;

impl Suite for HorizontalCongruences {
    fn name(&self) -> &'static str {
        "cghsum"
    }
    fn description(&self) -> &'static str {
        "Con_BZ(A [+] B) = {a [+] b : a, b 0,1-restricted} u {total} = (Con01(A) x Con01(B)) (+) D2; = Con_BZ(B) for A OML, B AOL"
    }
    fn default_max_size(&self) -> usize {
        20
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let parts: Vec<(&str, &BZAlgebra)> = catalog()
            .iter()
            .filter(|e| e.algebra.n() > 2)
            .map(|e| (e.name.as_str(), &e.algebra))
            .collect();
        let pairs: Vec<(&(&str, &BZAlgebra), &(&str, &BZAlgebra))> = parts
            .iter()
            .flat_map(|a| parts.iter().map(move |b| (a, b)))
            .filter(|(a, b)| a.1.n() + b.1.n() - 2 <= max_size)
            .collect();
        let rows: Vec<Option<[Option<Result<(), String>>; 3]>> = pairs
            .par_iter()
            .map(|((na, a), (nb, b))| {
                let tag = format!("{na} [+] {nb}");
                let (s, map) = horizontal_sum(&[a, b]).ok()?;
                if !has(&s, Flag::BZ) {
                    return None;
                }
                let fail = |e: String| Some([Some(Err(format!("{tag}: {e}"))), Some(Err(format!("{tag}: {e}"))), None]);
                let (cs, ca, cb) = match (con(&s, Level::Bz), con(a, Level::Bz), con(b, Level::Bz)) {
                    (Ok(x), Ok(y), Ok(z)) => (x, y, z),
                    (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => return fail(e),
                };
                let mut want = vec![Partition::total(s.n())];
                for &i in ca.con01() {
                    for &j in cb.con01() {
                        match sum_congruence_horizontal(&map, &[ca.get(i), cb.get(j)]) {
                            Ok(p) => want.push(p),
                            Err(e) => return fail(e.to_string()),
                        }
                    }
                }
                let got = key_set(cs.congruences());
                let wanted = key_set(want.iter());
                let sets = if got == wanted {
                    Ok(())
                } else {
                    Err(format!("{tag}: {} congruences, the sums give {}", got.len(), wanted.len()))
                };
                let shape = (|| -> Result<(), String> {
                    let l = cs.lattice().map_err(|e| e.to_string())?;
                    let want = plus_top(&direct_product(&sub(&ca, ca.con01())?, &sub(&cb, cb.con01())?));
                    if iso(&l, &want) {
                        Ok(())
                    } else {
                        Err(format!("{tag}: Con_BZ is not (Con01(A) x Con01(B)) (+) D2"))
                    }
                })();
                let special = (has(a, Flag::Orthomodular) && has(b, Flag::Antiortholattice)).then(|| {
                    let l = cs.lattice().map_err(|e| e.to_string())?;
                    let m = cb.lattice().map_err(|e| e.to_string())?;
                    if iso(&l, &m) {
                        Ok(())
                    } else {
                        Err(format!("{tag}: Con_BZ(A [+] B) is not Con_BZ(B)"))
                    }
                });
                Some([Some(sets), Some(shape), special])
            })
            .collect();
        let mut out = vec![
            CheckRecord::new("Con_BZ(A [+] B) = {a [+] b} u {total}"),
            CheckRecord::new("Con_BZ(A [+] B) = (Con_BZ01(A) x Con_BZ01(B)) (+) D2"),
            CheckRecord::new("Con_BZ(A [+] B) = Con_BZ(B) for A orthomodular, B antiortholattice"),
        ];
        let mut skipped = 0;
        for row in rows {
            match row {
                None => skipped += 1,
                Some(cells) => {
                    for (rec, cell) in out.iter_mut().zip(cells) {
                        if let Some(r) = cell {
                            rec.record_all([r]);
                        }
                    }
                }
            }
        }
        out[0].details.push(format!("{skipped} pairs skipped: the sum is not a BZ-lattice"));
        out
    }
}

/// The nine equivalent membership conditions.
pub struct Membership;

impl Suite for Membership {
    fn name(&self) -> &'static str {
        "charg"
    }
    fn description(&self) -> &'static str {
        "the nine conditions for L in OML [+] AOL agree on every nontrivial PBZ*-lattice in scope"
    }
    fn default_max_size(&self) -> usize {
        14
    }
    fn checks(&self, max_size: usize, seed: u64) -> Vec<CheckRecord> {
        let members: Vec<Candidate> = scope(max_size, seed)
            .into_iter()
            .filter(|c| c.algebra.n() >= 2 && has(&c.algebra, Flag::PBZStar))
            .collect();
        let outcomes: Vec<(bool, Result<(), String>)> = members
            .par_iter()
            .map(|c| {
                let v = membership_conditions(&c.algebra);
                let r = if v.iter().all(|&b| b == v[0]) {
                    Ok(())
                } else {
                    let split: Vec<String> = CONDITION_NAMES.iter().zip(v).map(|(n, b)| format!("{n}: {b}")).collect();
                    Err(format!("{}: {}", c.name, split.join("; ")))
                };
                (v[0], r)
            })
            .collect();
        let mut rec = CheckRecord::new("the nine membership conditions agree");
        let yes = outcomes.iter().filter(|(m, _)| *m).count();
        rec.record_all(outcomes.into_iter().map(|(_, r)| r));
        rec.details.push(format!("{yes} members, {} non-members", rec.instances - yes));
        vec![rec]
    }
}

/// Transfer of identities through horizontal sums with small orthomodular lattices.
pub struct HorizontalTransfer;

impl Suite for HorizontalTransfer {
    fn name(&self) -> &'static str {
        "axhsum"
    }
    fn description(&self) -> &'static str {
        "for A in MO1..MO3 and catalog PBZ* B: A [+] B satisfies S1, S2, S3, J1 iff B does; J2 iff B in OML [+] AOL"
    }
    fn default_max_size(&self) -> usize {
        24
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let bs = catalog_pbz();
        let pairs: Vec<(usize, &(&str, &BZAlgebra))> = (1..=3)
            .flat_map(|k| bs.iter().map(move |b| (k, b)))
            .filter(|(k, b)| 2 * k + 2 + b.1.n() - 2 <= max_size)
            .collect();
        let rows: Vec<[Result<(), String>; 5]> = pairs
            .par_iter()
            .map(|(k, (nb, b))| {
                let tag = format!("MO{k} [+] {nb}");
                let a = mo(*k).expect("MO_k");
                let s = match horizontal_sum(&[&a, b]) {
                    Ok((s, _)) => s,
                    Err(e) => {
                        let e = format!("{tag}: {e}");
                        return [Err(e.clone()), Err(e.clone()), Err(e.clone()), Err(e.clone()), Err(e)];
                    }
                };
                let same = |id: &str| -> Result<(), String> {
                    let (x, y) = (holds(&s, id)?, holds(b, id)?);
                    if x == y {
                        Ok(())
                    } else {
                        Err(format!("{tag}: sum {id} = {x}, {nb} {id} = {y}"))
                    }
                };
                let j2 = (|| -> Result<(), String> {
                    let (x, y) = (holds(&s, "J2")?, is_ortho_plus_aol(b));
                    if x == y {
                        Ok(())
                    } else {
                        Err(format!("{tag}: sum J2 = {x}, {nb} in OML [+] AOL = {y}"))
                    }
                })();
                [same("S1"), same("S2"), same("S3"), same("J1"), j2]
            })
            .collect();
        let mut out = vec![
            CheckRecord::new("A [+] B |= S1 iff B |= S1"),
            CheckRecord::new("A [+] B |= S2 iff B |= S2"),
            CheckRecord::new("A [+] B |= S3 iff B |= S3"),
            CheckRecord::new("A [+] B |= J1 iff B |= J1"),
            CheckRecord::new("A [+] B |= J2 iff B in OML [+] AOL"),
        ];
        for row in rows {
            for (rec, r) in out.iter_mut().zip(row) {
                rec.record_all([r]);
            }
        }
        out
    }
}

/// Exhaustive enumeration of small antiortholattices.
pub struct SmallAntiortholattices;

impl Suite for SmallAntiortholattices {
    fn name(&self) -> &'static str {
        "small-aol"
    }
    fn description(&self) -> &'static str {
        "every antiortholattice on at most N elements has a directly irreducible lattice reduct; the simple ones satisfying SDM are D1, D2, D3"
    }
    fn default_max_size(&self) -> usize {
        6
    }
    fn checks(&self, max_size: usize, _seed: u64) -> Vec<CheckRecord> {
        let top = max_size.min(crate::enumerate::LATTICE_ENUMERATION_LIMIT);
        let by_size: Vec<Vec<BZAlgebra>> = (1..=top).into_par_iter().map(antiortholattices).collect();
        let mut di = CheckRecord::new("the lattice reduct of every antiortholattice is directly irreducible");
        let mut simple = CheckRecord::new("the simple antiortholattices satisfying SDM are exactly D1, D2, D3");
        di.details.push(format!(
            "antiortholattices by size: {}",
            by_size.iter().enumerate().map(|(i, v)| format!("{}:{}", i + 1, v.len())).collect::<Vec<_>>().join(" ")
        ));
        let mut found = Vec::new();
        for (i, algebras) in by_size.iter().enumerate() {
            for (j, a) in algebras.iter().enumerate() {
                let name = format!("AOL{}.{}", i + 1, j + 1);
                match irreducibility(a, Level::Lattice) {
                    Ok(r) => di.record(r.directly_irreducible, || format!("{name}: lattice reduct is a product")),
                    Err(e) => di.record(false, || format!("{name}: {e}")),
                }
                let is_simple = irreducibility(a, Level::Bz).map(|r| r.simple);
                let sdm = holds(a, "SDM");
                match (is_simple, sdm) {
                    (Ok(true), Ok(true)) => found.push((name, a)),
                    (Ok(_), Ok(_)) => {}
                    (Err(e), _) => simple.record(false, || format!("{name}: {e}")),
                    (_, Err(e)) => simple.record(false, || format!("{name}: {e}")),
                }
            }
        }
        let expected: Vec<usize> = (1..=top.min(3)).collect();
        for (name, a) in &found {
            let ok = a.n() <= 3 && isomorphic(a, &chain(a.n())).unwrap_or(false);
            simple.record(ok, || format!("{name} ({} elements) is simple and satisfies SDM", a.n()));
        }
        let sizes: Vec<usize> = found.iter().map(|(_, a)| a.n()).collect();
        simple.record(sizes == expected, || format!("found sizes {sizes:?}, expected {expected:?}"));
        simple.details.push(format!("simple with SDM: {}", found.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")));
        vec![di, simple]
    }
}

/// Singleton-generated subalgebras in horizontal sums of an OML with an AOL.
pub struct Singletons;

impl Suite for Singletons {
    fn name(&self) -> &'static str {
        "singletons"
    }
    fn description(&self) -> &'static str {
        "in every member of OML [+] AOL in scope, each <a> is one of D1, D2, D2^2, D4, D2 (+) D2^2 (+) D2"
    }
    fn default_max_size(&self) -> usize {
        12
    }
    fn checks(&self, max_size: usize, seed: u64) -> Vec<CheckRecord> {
        let members: Vec<Candidate> = scope(max_size, seed).into_iter().filter(|c| is_ortho_plus_aol(&c.algebra)).collect();
        let listed = [SingletonClass::D1, SingletonClass::D2, SingletonClass::D2SQ, SingletonClass::D4, SingletonClass::HEX];
        let rows: Vec<Vec<Result<SingletonClass, String>>> = members
            .par_iter()
            .map(|c| {
                (0..c.algebra.n())
                    .map(|x| {
                        singleton_class(&c.algebra, x).map_err(|e| format!("{}: <{}>: {e}", c.name, c.algebra.label(x)))
                    })
                    .collect()
            })
            .collect();
        let mut rec = CheckRecord::new("<a> is one of the five listed types");
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for (c, row) in members.iter().zip(rows) {
            for (x, r) in row.into_iter().enumerate() {
                match r {
                    Ok(class) => {
                        *counts.entry(class.to_string()).or_default() += 1;
                        rec.record(listed.contains(&class), || {
                            format!("{}: <{}> is {class}, not a listed type", c.name, c.algebra.label(x))
                        });
                    }
                    Err(e) => rec.record(false, || e),
                }
            }
        }
        rec.details.push(format!("{} algebras", members.len()));
        rec.details.push(counts.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", "));
        vec![rec]
    }
}

/// Implications between the named identities, and the J2 characterization.
pub struct Implications;

const IMPLICATIONS: &[(&str, &[&str], bool)] = &[
    ("SDM", &["WSDM"], false),
    ("WSDM", &["S1", "S2", "S3"], false),
    ("J0", &["J1", "J2", "WSDM"], false),
    ("J1", &["J1'"], true),
    ("S1", &["S1'"], true),
];

impl Suite for Implications {
    fn name(&self) -> &'static str {
        "implications"
    }
    fn description(&self) -> &'static str {
        "SDM => WSDM => S1, S2, S3; J0 => J1, J2, WSDM; J1 <=> J1'; S1 <=> S1'; DI with J2, S2, S3 => OML [+] AOL"
    }
    fn default_max_size(&self) -> usize {
        12
    }
    fn checks(&self, max_size: usize, seed: u64) -> Vec<CheckRecord> {
        let members: Vec<Candidate> = scope(max_size, seed)
            .into_iter()
            .filter(|c| has(&c.algebra, Flag::PBZStar))
            .collect();
        let names = ["SDM", "WSDM", "S1", "S1'", "S2", "S3", "J0", "J1", "J1'", "J2"];
        type Row = Result<(BTreeMap<&'static str, bool>, bool, bool), String>;
        let rows: Vec<Row> = members
            .par_iter()
            .map(|c| {
                let mut v = BTreeMap::new();
                for id in names {
                    v.insert(id, holds(&c.algebra, id)?);
                }
                let di = c.algebra.n() >= 2
                    && irreducibility(&c.algebra, Level::Bz).map_err(|e| e.to_string())?.directly_irreducible;
                Ok((v, di, is_ortho_plus_aol(&c.algebra)))
            })
            .collect();
        let mut out: Vec<CheckRecord> = IMPLICATIONS
            .iter()
            .map(|(p, qs, iff)| CheckRecord::new(format!("{p} {} {}", if *iff { "<=>" } else { "=>" }, qs.join(", "))))
            .collect();
        out.push(CheckRecord::new("directly irreducible with J2, S2, S3 => OML [+] AOL"));
        for (c, row) in members.iter().zip(rows) {
            match row {
                Err(e) => {
                    for rec in out.iter_mut() {
                        rec.record(false, || format!("{}: {e}", c.name));
                    }
                }
                Ok((v, di, member)) => {
                    for (rec, (p, qs, iff)) in out.iter_mut().zip(IMPLICATIONS) {
                        let ok = qs.iter().all(|q| if *iff { v[p] == v[q] } else { !v[p] || v[q] });
                        rec.record(ok, || format!("{}: {p} = {}, {}", c.name, v[p], qs.iter().map(|q| format!("{q} = {}", v[q])).collect::<Vec<_>>().join(", ")));
                    }
                    let premise = di && v["J2"] && v["S2"] && v["S3"];
                    out[IMPLICATIONS.len()].record(!premise || member, || format!("{}: not in OML [+] AOL", c.name));
                }
            }
        }
        out
    }
}
