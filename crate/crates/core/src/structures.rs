//! BI-, BZ- and PBZ*-algebras: the algebra type, axiom predicates,
//! classification, distinguished element sets and the □/◇ operators.
//!
//! Every predicate is decided by an exhaustive sweep over the universe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::order::{Elem, FinLattice};

/// Errors raised when an algebra's unary maps are malformed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    /// The Kleene complement is not an order-reversing involution.
    #[error("the complement is not an order-reversing involution: {0}")]
    NotInvolution(String),
    /// A unary map has the wrong length or leaves the universe.
    #[error("{map} map is malformed: {detail}")]
    BadMap { map: &'static str, detail: String },
}

/// A lattice with a Kleene complement ′ and a Brouwer complement ~.
///
/// The complement is always a validated order-reversing involution; the
/// Brouwer map is an arbitrary unary operation whose axioms are decided by
/// [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BZAlgebra {
    lat: FinLattice,
    inv: Vec<Elem>,
    brouwer: Vec<Elem>,
}

/// The trivial Brouwer complement: `0~ = 1` and `x~ = 0` otherwise.
pub fn trivial_brouwer(lat: &FinLattice) -> Vec<Elem> {
    (0..lat.n())
        .map(|x| if x == lat.bot() { lat.top() } else { lat.bot() })
        .collect()
}

fn check_map(lat: &FinLattice, map: &[Elem], name: &'static str) -> Result<(), StructureError> {
    if map.len() != lat.n() {
        return Err(StructureError::BadMap {
            map: name,
            detail: format!("{} entries for {} elements", map.len(), lat.n()),
        });
    }
    if let Some(&x) = map.iter().find(|&&x| x >= lat.n()) {
        return Err(StructureError::BadMap {
            map: name,
            detail: format!("value {x} is outside the universe"),
        });
    }
    Ok(())
}

/// Checks that `inv` is an order-reversing involution on `lat`.
pub fn check_involution(lat: &FinLattice, inv: &[Elem]) -> Result<(), StructureError> {
    check_map(lat, inv, "involution")?;
    for a in 0..lat.n() {
        if inv[inv[a]] != a {
            return Err(StructureError::NotInvolution(format!(
                "{}'' ≠ {}",
                lat.label(a),
                lat.label(a)
            )));
        }
    }
    for a in 0..lat.n() {
        for b in 0..lat.n() {
            if lat.leq(a, b) && !lat.leq(inv[b], inv[a]) {
                return Err(StructureError::NotInvolution(format!(
                    "{} ≤ {} but {}' ≰ {}'",
                    lat.label(a),
                    lat.label(b),
                    lat.label(b),
                    lat.label(a)
                )));
            }
        }
    }
    Ok(())
}

impl BZAlgebra {
    /// Builds an algebra, validating the involution and the shape of the Brouwer map.
    pub fn new(lat: FinLattice, inv: Vec<Elem>, brouwer: Vec<Elem>) -> Result<Self, StructureError> {
        check_involution(&lat, &inv)?;
        check_map(&lat, &brouwer, "brouwer")?;
        Ok(BZAlgebra { lat, inv, brouwer })
    }

    /// The algebra with the trivial Brouwer complement.
    pub fn with_trivial_brouwer(lat: FinLattice, inv: Vec<Elem>) -> Result<Self, StructureError> {
        let b = trivial_brouwer(&lat);
        Self::new(lat, inv, b)
    }

    /// The algebra where the Brouwer complement equals the involution (ortholattice style).
    pub fn orthocomplemented(lat: FinLattice, inv: Vec<Elem>) -> Result<Self, StructureError> {
        let b = inv.clone();
        Self::new(lat, inv, b)
    }

    /// Replaces the label table of the lattice reduct.
    pub fn with_labels(self, labels: Vec<String>) -> Result<Self, crate::order::OrderError> {
        Ok(BZAlgebra {
            lat: self.lat.with_labels(labels)?,
            ..self
        })
    }

    /// The lattice reduct.
    pub fn lat(&self) -> &FinLattice {
        &self.lat
    }

    /// Universe size.
    pub fn n(&self) -> usize {
        self.lat.n()
    }

    /// Bottom element 0.
    pub fn bot(&self) -> Elem {
        self.lat.bot()
    }

    /// Top element 1.
    pub fn top(&self) -> Elem {
        self.lat.top()
    }

    /// `a ∧ b`.
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lat.meet(a, b)
    }

    /// `a ∨ b`.
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lat.join(a, b)
    }

    /// `a ≤ b`.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lat.leq(a, b)
    }

    /// Kleene complement `a′`.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// Brouwer complement `a~`.
    #[inline]
    pub fn brouwer(&self, a: Elem) -> Elem {
        self.brouwer[a]
    }

    /// `◇a = a~~`.
    #[inline]
    pub fn diamond(&self, a: Elem) -> Elem {
        self.brouwer[self.brouwer[a]]
    }

    /// `□a = a′~`.
    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.brouwer[self.inv[a]]
    }

    /// The involution as a table.
    pub fn inv_map(&self) -> &[Elem] {
        &self.inv
    }

    /// The Brouwer complement as a table.
    pub fn brouwer_map(&self) -> &[Elem] {
        &self.brouwer
    }

    /// Whether `~` is the trivial Brouwer complement.
    pub fn has_trivial_brouwer(&self) -> bool {
        self.brouwer == trivial_brouwer(&self.lat)
    }

    /// Name of element `a`.
    pub fn label(&self, a: Elem) -> String {
        self.lat.label(a)
    }

    /// Index of a named element.
    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.lat.index_of(name)
    }

    /// Whether `a ∧ a′ = 0`.
    pub fn is_sharp(&self, a: Elem) -> bool {
        self.meet(a, self.inv(a)) == self.bot()
    }
}

/// The classes an algebra may belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Flag {
    BI,
    PseudoKleene,
    Paraorthomodular,
    Ortholattice,
    Orthomodular,
    BZ,
    StarBZ,
    PBZStar,
    Antiortholattice,
}

impl Flag {
    /// Every flag, in implication-friendly order.
    pub const ALL: [Flag; 9] = [
        Flag::BI,
        Flag::PseudoKleene,
        Flag::Paraorthomodular,
        Flag::Ortholattice,
        Flag::Orthomodular,
        Flag::BZ,
        Flag::StarBZ,
        Flag::PBZStar,
        Flag::Antiortholattice,
    ];

    /// Whether this flag presupposes the Brouwer axioms.
    pub fn is_bz_level(self) -> bool {
        matches!(
            self,
            Flag::BZ | Flag::StarBZ | Flag::PBZStar | Flag::Antiortholattice
        )
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::BI => "BI",
            Flag::PseudoKleene => "PseudoKleene",
            Flag::Paraorthomodular => "Paraorthomodular",
            Flag::Ortholattice => "Ortholattice",
            Flag::Orthomodular => "Orthomodular",
            Flag::BZ => "BZ",
            Flag::StarBZ => "StarBZ",
            Flag::PBZStar => "PBZStar",
            Flag::Antiortholattice => "Antiortholattice",
        })
    }
}

/// One axiom decided by exhaustive sweep, with the first failing tuple.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

/// Classification result: the flags that hold, and a reason for each that does not.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StructureClass {
    pub flags: BTreeSet<Flag>,
    pub reasons: BTreeMap<Flag, String>,
}

impl StructureClass {
    /// Whether `flag` holds.
    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Element sets of a (PBZ*) algebra.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ElementSets {
    /// `S(L) = {a : a ∧ a′ = 0}`.
    pub sharp: Vec<Elem>,
    /// `D(L) = {a : a~ = 0}`.
    pub dense: Vec<Elem>,
    /// `T(L) = {0} ∪ D(L)`.
    pub t_set: Vec<Elem>,
    /// Central elements, by the elementwise equational criterion.
    pub central: Vec<Elem>,
}

/// The alternative descriptions of the sharp elements, each computed directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpCharacterizations {
    /// `{a : a ∧ a′ = 0}`.
    pub by_meet: Vec<Elem>,
    /// `{a~ : a ∈ L}`.
    pub brouwer_image: Vec<Elem>,
    /// `{a : a = a~~}`.
    pub diamond_fixed: Vec<Elem>,
    /// `{a : a ∨ a~ = 1}`.
    pub brouwer_join_top: Vec<Elem>,
    /// `{a : a~ = a′}`.
    pub brouwer_is_inv: Vec<Elem>,
}

impl SharpCharacterizations {
    /// Whether all five descriptions agree.
    pub fn all_agree(&self) -> bool {
        [
            &self.brouwer_image,
            &self.diamond_fixed,
            &self.brouwer_join_top,
            &self.brouwer_is_inv,
        ]
        .iter()
        .all(|s| **s == self.by_meet)
    }
}

fn first1(n: usize, ok: impl Fn(Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n).find(|&a| !ok(a)).map(|a| vec![a])
}

fn first2(n: usize, ok: impl Fn(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !ok(a, b))
        .map(|(a, b)| vec![a, b])
}

/// Decides every axiom used by the classification, in a fixed order.
pub fn axiom_report(a: &BZAlgebra) -> Vec<AxiomCheck> {
    let n = a.n();
    let (zero, one) = (a.bot(), a.top());
    let mut out = Vec::new();
    let mut push = |name, statement, witness: Option<Vec<Elem>>| {
        out.push(AxiomCheck {
            name,
            statement,
            holds: witness.is_none(),
            witness,
        })
    };
    push("involutive", "a'' = a", first1(n, |x| a.inv(a.inv(x)) == x));
    push(
        "antitone",
        "a <= b implies b' <= a'",
        first2(n, |x, y| !a.leq(x, y) || a.leq(a.inv(y), a.inv(x))),
    );
    push(
        "pseudo-kleene",
        "a ^ a' <= b v b'",
        first2(n, |x, y| a.leq(a.meet(x, a.inv(x)), a.join(y, a.inv(y)))),
    );
    push("orthocomplemented", "a ^ a' = 0", first1(n, |x| a.is_sharp(x)));
    push(
        "orthomodular-law",
        "a <= b implies b = (b ^ a') v a",
        first2(n, |x, y| !a.leq(x, y) || a.join(a.meet(y, a.inv(x)), x) == y),
    );
    push(
        "paraorthomodular",
        "a <= b and a' ^ b = 0 imply a = b",
        first2(n, |x, y| !(a.leq(x, y) && a.meet(a.inv(x), y) == zero) || x == y),
    );
    push("bz-1", "a ^ a~ = 0", first1(n, |x| a.meet(x, a.brouwer(x)) == zero));
    push("bz-2", "a <= a~~", first1(n, |x| a.leq(x, a.diamond(x))));
    push(
        "bz-3",
        "a <= b implies b~ <= a~",
        first2(n, |x, y| !a.leq(x, y) || a.leq(a.brouwer(y), a.brouwer(x))),
    );
    push("bz-4", "a~' = a~~", first1(n, |x| a.inv(a.brouwer(x)) == a.diamond(x)));
    push(
        "star",
        "(a ^ a')~ <= a~ v a'~",
        first1(n, |x| {
            a.leq(
                a.brouwer(a.meet(x, a.inv(x))),
                a.join(a.brouwer(x), a.square(x)),
            )
        }),
    );
    push(
        "sharp-only-bounds",
        "a ^ a' = 0 implies a in {0, 1}",
        first1(n, |x| !a.is_sharp(x) || x == zero || x == one),
    );
    out
}

fn describe(a: &BZAlgebra, check: &AxiomCheck) -> String {
    let names: Vec<String> = check
        .witness
        .iter()
        .flatten()
        .map(|&x| a.label(x))
        .collect();
    format!("`{}` fails at ({})", check.statement, names.join(", "))
}

/// Classifies an algebra by exhaustive axiom sweeps.
///
/// Flags that presuppose the Brouwer axioms are reported false, with a
/// reason, whenever the algebra is not a BZ-lattice.
pub fn classify(a: &BZAlgebra) -> Result<StructureClass, StructureError> {
    check_involution(a.lat(), a.inv_map())?;
    let report = axiom_report(a);
    let get = |name: &str| {
        report
            .iter()
            .find(|c| c.name == name)
            .expect("axiom present in report")
    };
    let mut class = StructureClass {
        flags: BTreeSet::new(),
        reasons: BTreeMap::new(),
    };
    // Decides `flag` from its prerequisite flags and its own axioms.
    let mut decide = |flag: Flag, prereqs: &[Flag], axioms: &[&str]| -> bool {
        if let Some(missing) = prereqs.iter().find(|p| !class.flags.contains(p)) {
            class.reasons.insert(flag, format!("not {missing}"));
            return false;
        }
        if let Some(c) = axioms.iter().map(|p| get(p)).find(|c| !c.holds) {
            class.reasons.insert(flag, describe(a, c));
            return false;
        }
        class.flags.insert(flag);
        true
    };
    decide(Flag::BI, &[], &[]);
    decide(Flag::PseudoKleene, &[], &["pseudo-kleene"]);
    decide(Flag::Paraorthomodular, &[], &["paraorthomodular"]);
    decide(Flag::Ortholattice, &[], &["orthocomplemented"]);
    decide(Flag::Orthomodular, &[Flag::Ortholattice], &["orthomodular-law"]);
    decide(Flag::BZ, &[Flag::PseudoKleene], &["bz-1", "bz-2", "bz-3", "bz-4"]);
    decide(Flag::StarBZ, &[Flag::BZ], &["star"]);
    decide(Flag::PBZStar, &[Flag::StarBZ, Flag::Paraorthomodular], &[]);
    decide(Flag::Antiortholattice, &[Flag::PBZStar], &["sharp-only-bounds"]);
    Ok(class)
}

/// The equational form of paraorthomodularity over BZ*-lattices:
/// `(a~ ∨ (◇a ∧ ◇b)) ∧ ◇a ≤ ◇b` for all `a, b`.
pub fn paraorthomodular_equational(a: &BZAlgebra) -> bool {
    let n = a.n();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (dx, dy) = (a.diamond(x), a.diamond(y));
            a.leq(a.meet(a.join(a.brouwer(x), a.meet(dx, dy)), dx), dy)
        })
    })
}

/// `(□a, ◇a) = (a′~, a~~)`.
pub fn box_diamond(a: &BZAlgebra, x: Elem) -> (Elem, Elem) {
    (a.square(x), a.diamond(x))
}

/// Every description of the sharp elements, computed independently.
pub fn sharp_characterizations(a: &BZAlgebra) -> SharpCharacterizations {
    let n = a.n();
    let collect = |p: &dyn Fn(Elem) -> bool| (0..n).filter(|&x| p(x)).collect::<Vec<_>>();
    let image: BTreeSet<Elem> = (0..n).map(|x| a.brouwer(x)).collect();
    SharpCharacterizations {
        by_meet: collect(&|x| a.is_sharp(x)),
        brouwer_image: image.into_iter().collect(),
        diamond_fixed: collect(&|x| a.diamond(x) == x),
        brouwer_join_top: collect(&|x| a.join(x, a.brouwer(x)) == a.top()),
        brouwer_is_inv: collect(&|x| a.brouwer(x) == a.inv(x)),
    }
}

/// Whether `x` is central by the elementwise criterion: `x` is sharp and, for
/// every `b`, `(x∧b)~ = x~∨b~`, `(x′∧b)~ = x′~∨b~` and `b = (x∧b)∨(x′∧b)`.
pub fn is_central(a: &BZAlgebra, x: Elem) -> bool {
    let xc = a.inv(x);
    a.is_sharp(x)
        && (0..a.n()).all(|b| {
            a.brouwer(a.meet(x, b)) == a.join(a.brouwer(x), a.brouwer(b))
                && a.brouwer(a.meet(xc, b)) == a.join(a.brouwer(xc), a.brouwer(b))
                && b == a.join(a.meet(x, b), a.meet(xc, b))
        })
}

/// Sharp, dense, T and central elements.
pub fn element_sets(a: &BZAlgebra) -> ElementSets {
    let n = a.n();
    let sharp: Vec<Elem> = (0..n).filter(|&x| a.is_sharp(x)).collect();
    let dense: Vec<Elem> = (0..n).filter(|&x| a.brouwer(x) == a.bot()).collect();
    let t_set: Vec<Elem> = (0..n)
        .filter(|&x| x == a.bot() || a.brouwer(x) == a.bot())
        .collect();
    let central = sharp.iter().copied().filter(|&x| is_central(a, x)).collect();
    ElementSets {
        sharp,
        dense,
        t_set,
        central,
    }
}
