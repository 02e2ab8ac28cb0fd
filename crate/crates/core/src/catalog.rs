//! Named algebras, built programmatically where possible and from cover
//! lists otherwise. Every entry carries assertions that are checked when the
//! catalog loads; a failing assertion refuses the whole catalog.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::decompose::is_ortho_plus_aol;
use crate::order::{lattice_from_covers, CoverList, Elem};
use crate::structures::{classify, element_sets, BZAlgebra, Flag};
use crate::subalg::generate;
use crate::sums::{canonical_aol, chain, horizontal_sum, mo, product};
use crate::terms::{fails_at, library_identity, satisfies};

/// Errors raised while building or validating the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    /// An entry violates one of its stated properties.
    #[error("catalog entry {0} violates `{1}`")]
    AssertionFailed(String, String),
    /// An entry could not be constructed.
    #[error("catalog entry {0} could not be built: {1}")]
    Construction(String, String),
}

/// A property an entry must have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assertion {
    /// The named library identity holds.
    Holds(&'static str),
    /// The named library identity fails.
    Fails(&'static str),
    /// The named identity fails at this assignment (element labels, by first variable appearance).
    FailsAt(&'static str, &'static [&'static str]),
    /// The classification has the flag.
    Is(Flag),
    /// The classification lacks the flag.
    IsNot(Flag),
    /// The sharp elements are exactly these.
    Sharp(&'static [&'static str]),
    /// `T(L) = {0} ∪ D(L)` is exactly this set.
    TSet(&'static [&'static str]),
    /// `x~ = y`.
    BrouwerOf(&'static str, &'static str),
    /// Membership in the horizontal sums of an orthomodular lattice with an antiortholattice.
    OrthoPlusAol(bool),
    /// `T(L)` generates the whole algebra.
    TGenerates,
    /// The lattice reduct is modular.
    Modular(bool),
    /// The lattice reduct is distributive.
    Distributive(bool),
    /// `x ∧ y = 0` and `x ∨ y = 1`.
    Complements(&'static str, &'static str),
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Holds(id) => write!(f, "satisfies {id}"),
            Assertion::Fails(id) => write!(f, "fails {id}"),
            Assertion::FailsAt(id, w) => write!(f, "fails {id} at ({})", w.join(", ")),
            Assertion::Is(flag) => write!(f, "is {flag}"),
            Assertion::IsNot(flag) => write!(f, "is not {flag}"),
            Assertion::Sharp(s) => write!(f, "S = {{{}}}", s.join(", ")),
            Assertion::TSet(s) => write!(f, "T = {{{}}}", s.join(", ")),
            Assertion::BrouwerOf(x, y) => write!(f, "{x}~ = {y}"),
            Assertion::OrthoPlusAol(b) => write!(f, "{}in OML (+) AOL", if *b { "" } else { "not " }),
            Assertion::TGenerates => write!(f, "<T> = L"),
            Assertion::Modular(b) => write!(f, "{}modular", if *b { "" } else { "not " }),
            Assertion::Distributive(b) => write!(f, "{}distributive", if *b { "" } else { "not " }),
            Assertion::Complements(x, y) => write!(f, "{x} and {y} are lattice complements"),
        }
    }
}

impl Assertion {
    /// Evaluates the assertion on `a`; `Err` when it refers to unknown elements.
    pub fn check(&self, a: &BZAlgebra) -> Result<bool, String> {
        let idx = |name: &str| a.index_of(name).ok_or_else(|| format!("unknown element {name}"));
        let set = |names: &[&str]| -> Result<Vec<Elem>, String> {
            let mut v = names.iter().map(|s| idx(s)).collect::<Result<Vec<_>, _>>()?;
            v.sort_unstable();
            Ok(v)
        };
        let sorted = |mut v: Vec<Elem>| {
            v.sort_unstable();
            v
        };
        let class = || classify(a).map_err(|e| e.to_string());
        Ok(match self {
            Assertion::Holds(id) => satisfies(a, library_identity(id)).map_err(|e| e.to_string())?.holds(),
            Assertion::Fails(id) => !satisfies(a, library_identity(id)).map_err(|e| e.to_string())?.holds(),
            Assertion::FailsAt(id, w) => fails_at(a, library_identity(id), &set_unsorted(w, &idx)?).map_err(|e| e.to_string())?,
            Assertion::Is(flag) => class()?.has(*flag),
            Assertion::IsNot(flag) => !class()?.has(*flag),
            Assertion::Sharp(s) => sorted(element_sets(a).sharp) == set(s)?,
            Assertion::TSet(s) => sorted(element_sets(a).t_set) == set(s)?,
            Assertion::BrouwerOf(x, y) => a.brouwer(idx(x)?) == idx(y)?,
            Assertion::OrthoPlusAol(b) => is_ortho_plus_aol(a) == *b,
            Assertion::TGenerates => generate(a, &element_sets(a).t_set).len() == a.n(),
            Assertion::Modular(b) => a.lat().is_modular() == *b,
            Assertion::Distributive(b) => a.lat().is_distributive() == *b,
            Assertion::Complements(x, y) => {
                let (x, y) = (idx(x)?, idx(y)?);
                a.meet(x, y) == a.bot() && a.join(x, y) == a.top()
            }
        })
    }
}

fn set_unsorted(names: &[&str], idx: &dyn Fn(&str) -> Result<Elem, String>) -> Result<Vec<Elem>, String> {
    names.iter().map(|s| idx(s)).collect()
}

/// A named algebra and the properties it must have.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    /// One-line description of the construction.
    pub description: String,
    pub algebra: BZAlgebra,
    /// Properties checked at load time.
    pub assertions: Vec<Assertion>,
    /// Stated properties that no consistent encoding of the entry satisfies.
    /// They are evaluated for reports but do not block loading.
    pub disputed: Vec<Assertion>,
}

impl CatalogEntry {
    /// Checks every assertion.
    pub fn validate(&self) -> Result<(), CatalogError> {
        for a in &self.assertions {
            match a.check(&self.algebra) {
                Ok(true) => {}
                Ok(false) => return Err(CatalogError::AssertionFailed(self.name.clone(), a.to_string())),
                Err(e) => return Err(CatalogError::AssertionFailed(self.name.clone(), format!("{a}: {e}"))),
            }
        }
        Ok(())
    }

    /// Evaluates the disputed properties: `(assertion, holds)`.
    pub fn disputed_status(&self) -> Vec<(Assertion, bool)> {
        self.disputed
            .iter()
            .map(|a| (a.clone(), a.check(&self.algebra).unwrap_or(false)))
            .collect()
    }
}

/// The validated catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Entries in catalog order.
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Looks up an entry by name (case-insensitive).
    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    /// Entry names in catalog order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    /// Iterates over the entries.
    pub fn iter(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter()
    }
}

/// The catalog, built and validated once.
///
/// # Panics
/// Panics if validation fails; use [`load_catalog`] to observe the error.
pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| load_catalog().unwrap_or_else(|e| panic!("{e}")))
}

/// Builds every entry and checks all assertions.
pub fn load_catalog() -> Result<Catalog, CatalogError> {
    let entries = build_entries()?;
    for e in &entries {
        e.validate()?;
    }
    Ok(Catalog { entries })
}

/// Builds an algebra from a labelled Hasse diagram.
///
/// `inv` lists complement pairs (a fixpoint is written `(x, x)`); `brouwer`
/// lists `x ↦ x~` for every element, or is `None` for the trivial map.
pub fn from_diagram(
    labels: &[&str],
    covers: &[(&str, &str)],
    inv: &[(&str, &str)],
    brouwer: Option<&[(&str, &str)]>,
) -> Result<BZAlgebra, String> {
    let n = labels.len();
    let idx = |s: &str| labels.iter().position(|l| *l == s).ok_or_else(|| format!("unknown label {s}"));
    let cov = covers
        .iter()
        .map(|(x, y)| Ok((idx(x)?, idx(y)?)))
        .collect::<Result<Vec<_>, String>>()?;
    let lat = lattice_from_covers(&CoverList::new(n, cov))
        .map_err(|e| e.to_string())?
        .with_labels(labels.iter().map(|s| s.to_string()).collect())
        .map_err(|e| e.to_string())?;
    let mut im = vec![usize::MAX; n];
    for (x, y) in inv {
        let (x, y) = (idx(x)?, idx(y)?);
        im[x] = y;
        im[y] = x;
    }
    if let Some(i) = im.iter().position(|&v| v == usize::MAX) {
        return Err(format!("complement of {} not given", labels[i]));
    }
    let a = match brouwer {
        None => BZAlgebra::with_trivial_brouwer(lat, im),
        Some(pairs) => {
            let mut bm = vec![usize::MAX; n];
            for (x, y) in pairs {
                bm[idx(x)?] = idx(y)?;
            }
            if let Some(i) = bm.iter().position(|&v| v == usize::MAX) {
                return Err(format!("Brouwer complement of {} not given", labels[i]));
            }
            BZAlgebra::new(lat, im, bm)
        }
    };
    a.map_err(|e| e.to_string())
}

fn relabel(a: BZAlgebra, labels: &[&str]) -> Result<BZAlgebra, String> {
    a.with_labels(labels.iter().map(|s| s.to_string()).collect())
        .map_err(|e| e.to_string())
}

fn entry(name: &str, description: &str, algebra: Result<BZAlgebra, String>, assertions: Vec<Assertion>) -> Result<CatalogEntry, CatalogError> {
    Ok(CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        algebra: algebra.map_err(|e| CatalogError::Construction(name.to_string(), e))?,
        assertions,
        disputed: Vec::new(),
    })
}

fn with_disputed(mut e: CatalogEntry, disputed: Vec<Assertion>) -> CatalogEntry {
    e.disputed = disputed;
    e
}

fn build_entries() -> Result<Vec<CatalogEntry>, CatalogError> {
    use Assertion::*;
    let mut out = Vec::new();
    let err = |e: crate::sums::SumError| e.to_string();

    for n in 1..=9 {
        let asserts = vec![Is(Flag::Antiortholattice), OrthoPlusAol(true), Holds("SDM")];
        out.push(entry(&format!("D{n}"), &format!("{n}-element chain"), Ok(chain(n)), asserts)?);
    }
    for k in 0..=4 {
        let mut asserts = vec![Is(Flag::Orthomodular), Is(Flag::PBZStar), Holds("SDM"), Holds("J2"), OrthoPlusAol(true)];
        asserts.push(if k == 0 { Is(Flag::Antiortholattice) } else { IsNot(Flag::Antiortholattice) });
        out.push(entry(&format!("MO{k}"), &format!("horizontal sum of {k} four-element Boolean algebras"), mo(k).map_err(err), asserts)?);
    }

    let d2 = chain(2);
    let mo1 = mo(1).map_err(err);
    let mo2 = mo(2).map_err(err);
    out.push(entry(
        "HEX",
        "D2 (+) D2^2 (+) D2 with the mirror complement and trivial Brouwer complement",
        mo1.clone().and_then(|k| canonical_aol(d2.lat(), &k).map_err(err)),
        vec![Is(Flag::Antiortholattice), Modular(true), OrthoPlusAol(true)],
    )?);
    out.push(entry(
        "D2MO2D2",
        "canonical antiortholattice D2 (+) MO2 (+) D2",
        mo2.and_then(|k| canonical_aol(d2.lat(), &k).map_err(err)),
        vec![Is(Flag::Antiortholattice), OrthoPlusAol(true)],
    )?);

    // M3 = D2^2 ⊞ D3, built with the chain first so the universe order is
    // 0, b (the chain's middle), a, a', 1.
    let m3 = mo1
        .clone()
        .and_then(|m| horizontal_sum(&[&chain(3), &m]).map(|(s, _)| s).map_err(err))
        .and_then(|s| relabel(s, &["0", "b", "a", "a'", "1"]));
    out.push(entry(
        "M3",
        "D2^2 horizontal-sum D3",
        m3,
        vec![
            Is(Flag::PBZStar),
            IsNot(Flag::Antiortholattice),
            Fails("WSDM"),
            FailsAt("WSDM", &["b", "a"]),
            OrthoPlusAol(true),
            Sharp(&["0", "a", "a'", "1"]),
        ],
    )?);

    // K = D2^2 ⊞ (D2 × D3). The product is indexed i·3 + j, so its inner
    // elements (0,1), (0,2), (1,0), (1,1) are t, s', s, t'.
    let k = mo1
        .and_then(|m| horizontal_sum(&[&m, &product(&d2, &chain(3))]).map(|(s, _)| s).map_err(err))
        .and_then(|s| relabel(s, &["0", "u", "u'", "t", "s'", "s", "t'", "1"]));
    out.push(entry(
        "K",
        "D2^2 horizontal-sum (D2 x D3)",
        k,
        vec![
            Is(Flag::PBZStar),
            Sharp(&["0", "u", "u'", "s", "s'", "1"]),
            TSet(&["0", "t'", "1"]),
            BrouwerOf("t", "s"),
            Holds("S2"),
            Holds("S3"),
            Holds("J1"),
            Fails("J2"),
            FailsAt("J2", &["u", "t"]),
            OrthoPlusAol(false),
        ],
    )?);

    // L7: chains 0<s<t'<1, 0<t<u<t'<1 and 0<t<s'<1; u is its own complement.
    out.push(entry(
        "L7",
        "7-element PBZ*-lattice failing J1",
        from_diagram(
            &["0", "s", "t", "u", "s'", "t'", "1"],
            &[("0", "s"), ("0", "t"), ("s", "t'"), ("t", "u"), ("u", "t'"), ("t", "s'"), ("t'", "1"), ("s'", "1")],
            &[("0", "1"), ("s", "s'"), ("t", "t'"), ("u", "u")],
            Some(&[("0", "1"), ("s", "s'"), ("s'", "s"), ("t", "s"), ("u", "0"), ("t'", "0"), ("1", "0")]),
        ),
        vec![
            Is(Flag::PBZStar),
            Sharp(&["0", "s", "s'", "1"]),
            // Computed from the definition T = {0} ∪ D; the bounds belong to T.
            TSet(&["0", "u", "t'", "1"]),
            BrouwerOf("t", "s"),
            Fails("J1"),
            FailsAt("J1", &["u", "t"]),
            Fails("S2"),
            FailsAt("S2", &["u", "t"]),
            Holds("S3"),
            Fails("J2"),
            OrthoPlusAol(false),
        ],
    )?);

    // M11. The lines of the figure force a < u' and a' < v' for the
    // complement to be antitone; this is the only consistent reading.
    // On it, J1 fails and S1 holds, opposite to the stated verdicts, so
    // those two claims are kept as disputed (they hold on no encoding of
    // this shape with the stated S, T and Brouwer values).
    out.push(with_disputed(entry(
        "M11",
        "11-element PBZ*-lattice satisfying J1 and failing S1",
        from_diagram(
            &["0", "v", "z", "u", "a", "a'", "t", "z'", "v'", "u'", "1"],
            &[
                ("0", "v"),
                ("0", "z"),
                ("0", "u"),
                ("v", "a"),
                ("v", "t"),
                ("u", "a'"),
                ("u", "t"),
                ("z", "t"),
                ("t", "z'"),
                ("t", "u'"),
                ("t", "v'"),
                ("a", "u'"),
                ("a'", "v'"),
                ("z'", "1"),
                ("v'", "1"),
                ("u'", "1"),
            ],
            &[("0", "1"), ("z", "z'"), ("v", "v'"), ("u", "u'"), ("a", "a'"), ("t", "t")],
            Some(&[
                ("0", "1"),
                ("z", "0"),
                ("v", "a'"),
                ("u", "a"),
                ("a", "a'"),
                ("a'", "a"),
                ("t", "0"),
                ("z'", "0"),
                ("v'", "0"),
                ("u'", "0"),
                ("1", "0"),
            ]),
        ),
        vec![
            Is(Flag::PBZStar),
            Sharp(&["0", "a", "a'", "1"]),
            TSet(&["0", "z", "t", "u'", "v'", "z'", "1"]),
            BrouwerOf("u", "a"),
            BrouwerOf("v", "a'"),
            Fails("J2"),
            Fails("S2"),
            Fails("S3"),
            TGenerates,
            OrthoPlusAol(false),
        ],
    )?, vec![Holds("J1"), Fails("S1"), FailsAt("S1", &["z'", "a"])]));

    // NM11: an antiortholattice with complemented pairs other than the
    // bounds. The figure's lattice is modular (graded, rank-additive) but not
    // distributive; the stated non-modularity is kept as disputed.
    out.push(with_disputed(entry(
        "NM11",
        "11-element non-modular antiortholattice",
        from_diagram(
            &["0", "u", "v", "a", "a'", "c", "b", "b'", "u'", "v'", "1"],
            &[
                ("0", "u"),
                ("0", "v"),
                ("u", "a"),
                ("u", "a'"),
                ("u", "c"),
                ("v", "b"),
                ("v", "b'"),
                ("v", "c"),
                ("a", "u'"),
                ("a'", "u'"),
                ("c", "u'"),
                ("c", "v'"),
                ("b", "v'"),
                ("b'", "v'"),
                ("u'", "1"),
                ("v'", "1"),
            ],
            &[("0", "1"), ("u", "u'"), ("v", "v'"), ("a", "a'"), ("b", "b'"), ("c", "c")],
            None,
        ),
        vec![
            Is(Flag::Antiortholattice),
            Distributive(false),
            Complements("a", "b"),
            Complements("a", "b'"),
            Complements("a'", "b"),
            Complements("a'", "b'"),
            OrthoPlusAol(true),
        ],
    )?, vec![Modular(false)]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_lookups_work() {
        let c = load_catalog().unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(c.entries().len(), 9 + 5 + 2 + 5);
        assert_eq!(c.get("m3").unwrap().algebra.n(), 5);
        assert_eq!(c.get("K").unwrap().algebra.n(), 8);
        assert_eq!(c.get("L7").unwrap().algebra.n(), 7);
        assert_eq!(c.get("M11").unwrap().algebra.n(), 11);
        assert_eq!(c.get("NM11").unwrap().algebra.n(), 11);
        assert_eq!(c.get("HEX").unwrap().algebra.n(), 6);
        assert_eq!(c.get("D2MO2D2").unwrap().algebra.n(), 8);
    }

    #[test]
    fn disputed_claims_are_reported_as_failing() {
        let c = catalog();
        let m11 = c.get("M11").unwrap().disputed_status();
        assert_eq!(m11.len(), 3);
        assert!(m11.iter().all(|(_, holds)| !holds));
        let nm11 = c.get("NM11").unwrap();
        assert!(nm11.algebra.lat().is_modular());
        assert!(!nm11.algebra.lat().is_distributive());
    }

    #[test]
    fn a_wrong_assertion_refuses_the_entry() {
        let e = CatalogEntry {
            name: "D3".into(),
            description: String::new(),
            algebra: chain(3),
            assertions: vec![Assertion::Fails("J0")],
            disputed: Vec::new(),
        };
        assert_eq!(
            e.validate(),
            Err(CatalogError::AssertionFailed("D3".into(), "fails J0".into()))
        );
    }
}
