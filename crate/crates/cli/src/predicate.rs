//! Boolean predicates over algebras for `search`.
//!
//! ```text
//! expr    := or
//! or      := and ( '|' and )*
//! and     := unary ( '&' unary )*
//! unary   := '!' unary | '(' expr ')' | '{' identity '}' | ATOM
//! ```
//!
//! Atoms are looked up (case-insensitively) in an [`AtomRegistry`] of trait
//! objects: the named identities, the class flags with their aliases,
//! irreducibility, lattice properties and the horizontal-sum membership test.
//! A braced identity such as `{x ^ x' <= y v y'}` is checked directly.

use std::cell::OnceCell;
use std::fmt;
use std::sync::Arc;

use pbz_core::congruence::{irreducibility, IrreducibilityReport};
use pbz_core::decompose::is_ortho_plus_aol;
use pbz_core::signature::Level;
use pbz_core::structures::{classify, BZAlgebra, Flag, StructureClass};
use pbz_core::terms::{satisfies_with_budget, Identity, NamedIdentityLibrary};
use thiserror::Error;

/// Errors from parsing or evaluating a predicate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    /// Malformed expression.
    #[error("predicate parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    /// An atom could not be decided on an algebra.
    #[error("cannot evaluate `{atom}`: {message}")]
    Eval { atom: String, message: String },
}

/// Lazily computed facts shared by the atoms evaluated on one algebra.
pub struct EvalContext<'a> {
    pub algebra: &'a BZAlgebra,
    /// Sweep budget for identity atoms.
    pub budget: u128,
    class: OnceCell<Result<StructureClass, String>>,
    irr: OnceCell<Result<IrreducibilityReport, String>>,
    member: OnceCell<bool>,
}

impl<'a> EvalContext<'a> {
    /// A fresh context for `algebra`.
    pub fn new(algebra: &'a BZAlgebra, budget: u128) -> Self {
        EvalContext {
            algebra,
            budget,
            class: OnceCell::new(),
            irr: OnceCell::new(),
            member: OnceCell::new(),
        }
    }

    /// The classification (cached).
    pub fn class(&self) -> Result<&StructureClass, String> {
        self.class
            .get_or_init(|| classify(self.algebra).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// BZ-level irreducibility (cached).
    pub fn irreducibility(&self) -> Result<&IrreducibilityReport, String> {
        self.irr
            .get_or_init(|| irreducibility(self.algebra, Level::Bz).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Membership in the horizontal sums of an orthomodular lattice and an antiortholattice (cached).
    pub fn ortho_plus_aol(&self) -> bool {
        *self.member.get_or_init(|| is_ortho_plus_aol(self.algebra))
    }
}

/// A named property of an algebra.
pub trait Atom: Send + Sync {
    /// Canonical name.
    fn name(&self) -> String;
    /// Alternative spellings accepted by the parser.
    fn aliases(&self) -> Vec<String> {
        Vec::new()
    }
    /// One-line description.
    fn description(&self) -> String;
    /// Decides the atom on the context's algebra.
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String>;
}

/// An identity holds.
pub struct IdentityAtom {
    pub identity: Identity,
}

impl Atom for IdentityAtom {
    fn name(&self) -> String {
        self.identity.title().to_string()
    }
    fn aliases(&self) -> Vec<String> {
        let t = self.identity.title();
        if t.ends_with('\'') {
            vec![format!("{}p", t.trim_end_matches('\''))]
        } else {
            Vec::new()
        }
    }
    fn description(&self) -> String {
        format!("satisfies {}", self.identity)
    }
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String> {
        satisfies_with_budget(ctx.algebra, &self.identity, ctx.budget)
            .map(|v| v.holds())
            .map_err(|e| e.to_string())
    }
}

/// A classification flag holds.
pub struct FlagAtom {
    pub flag: Flag,
    pub names: &'static [&'static str],
}

impl Atom for FlagAtom {
    fn name(&self) -> String {
        self.names[0].to_string()
    }
    fn aliases(&self) -> Vec<String> {
        self.names[1..].iter().map(|s| s.to_string()).collect()
    }
    fn description(&self) -> String {
        format!("is {}", self.flag)
    }
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String> {
        Ok(ctx.class()?.has(self.flag))
    }
}

/// Which irreducibility property an [`IrreducibilityAtom`] reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityKind {
    Simple,
    Subdirect,
    Direct,
}

/// Simplicity, subdirect or direct irreducibility in the full signature.
pub struct IrreducibilityAtom {
    pub kind: IrreducibilityKind,
}

impl Atom for IrreducibilityAtom {
    fn name(&self) -> String {
        match self.kind {
            IrreducibilityKind::Simple => "simple",
            IrreducibilityKind::Subdirect => "SI",
            IrreducibilityKind::Direct => "DI",
        }
        .to_string()
    }
    fn aliases(&self) -> Vec<String> {
        match self.kind {
            IrreducibilityKind::Simple => vec![],
            IrreducibilityKind::Subdirect => vec!["subdirectly-irreducible".into()],
            IrreducibilityKind::Direct => vec!["directly-irreducible".into()],
        }
    }
    fn description(&self) -> String {
        match self.kind {
            IrreducibilityKind::Simple => "has exactly two congruences (or is trivial)",
            IrreducibilityKind::Subdirect => "is subdirectly irreducible",
            IrreducibilityKind::Direct => "is directly irreducible",
        }
        .to_string()
    }
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String> {
        let r = ctx.irreducibility()?;
        Ok(match self.kind {
            IrreducibilityKind::Simple => r.simple,
            IrreducibilityKind::Subdirect => r.subdirectly_irreducible,
            IrreducibilityKind::Direct => r.directly_irreducible,
        })
    }
}

/// Membership in the horizontal sums of an orthomodular lattice with an antiortholattice.
pub struct MembershipAtom;

impl Atom for MembershipAtom {
    fn name(&self) -> String {
        "charg".into()
    }
    fn aliases(&self) -> Vec<String> {
        vec!["omlaol".into(), "oml+aol".into()]
    }
    fn description(&self) -> String {
        "is a horizontal sum of an orthomodular lattice and an antiortholattice".into()
    }
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String> {
        Ok(ctx.ortho_plus_aol())
    }
}

/// A property of the lattice reduct.
pub struct LatticeAtom {
    pub name: &'static str,
    pub test: fn(&BZAlgebra) -> bool,
    pub text: &'static str,
}

impl Atom for LatticeAtom {
    fn name(&self) -> String {
        self.name.into()
    }
    fn description(&self) -> String {
        self.text.into()
    }
    fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, String> {
        Ok((self.test)(ctx.algebra))
    }
}

/// Name-indexed atoms.
#[derive(Clone, Default)]
pub struct AtomRegistry {
    atoms: Vec<Arc<dyn Atom>>,
}

const FLAG_NAMES: [(Flag, &[&str]); 9] = [
    (Flag::BI, &["BI"]),
    (Flag::PseudoKleene, &["PK", "pseudokleene", "pseudo-kleene"]),
    (Flag::Paraorthomodular, &["para", "paraorthomodular"]),
    (Flag::Ortholattice, &["OL", "ortholattice"]),
    (Flag::Orthomodular, &["OML", "orthomodular"]),
    (Flag::BZ, &["BZ"]),
    (Flag::StarBZ, &["BZ*", "BZstar", "starbz"]),
    (Flag::PBZStar, &["PBZ", "PBZ*", "PBZstar"]),
    (Flag::Antiortholattice, &["AOL", "antiortholattice"]),
];

impl AtomRegistry {
    /// An empty registry.
    pub fn new() -> Self {
        AtomRegistry::default()
    }

    /// Library identities, class flags, irreducibility, lattice properties and membership.
    pub fn standard() -> Self {
        let mut r = AtomRegistry::new();
        for id in NamedIdentityLibrary::standard().iter() {
            r.register(Arc::new(IdentityAtom { identity: id.clone() }));
        }
        for (flag, names) in FLAG_NAMES {
            r.register(Arc::new(FlagAtom { flag, names }));
        }
        for kind in [IrreducibilityKind::Simple, IrreducibilityKind::Subdirect, IrreducibilityKind::Direct] {
            r.register(Arc::new(IrreducibilityAtom { kind }));
        }
        r.register(Arc::new(MembershipAtom));
        r.register(Arc::new(LatticeAtom {
            name: "modular",
            test: |a| a.lat().is_modular(),
            text: "has a modular lattice reduct",
        }));
        r.register(Arc::new(LatticeAtom {
            name: "distributive",
            test: |a| a.lat().is_distributive(),
            text: "has a distributive lattice reduct",
        }));
        r
    }

    /// Adds an atom; an atom with the same name replaces the earlier one.
    pub fn register(&mut self, atom: Arc<dyn Atom>) {
        let name = atom.name();
        self.atoms.retain(|a| !a.name().eq_ignore_ascii_case(&name));
        self.atoms.push(atom);
    }

    /// Looks up an atom by name or alias (case-insensitive; `′` reads as `'`).
    pub fn get(&self, name: &str) -> Option<Arc<dyn Atom>> {
        let name = name.replace('′', "'");
        self.atoms
            .iter()
            .find(|a| a.name().eq_ignore_ascii_case(&name) || a.aliases().iter().any(|s| s.eq_ignore_ascii_case(&name)))
            .cloned()
    }

    /// Iterates over the atoms.
    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Atom>> {
        self.atoms.iter()
    }
}

/// A parsed predicate.
#[derive(Clone)]
pub enum Predicate {
    Atom(Arc<dyn Atom>),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Atom(a) => write!(f, "{}", a.name()),
            Predicate::Not(p) => write!(f, "!{p}"),
            Predicate::And(p, q) => write!(f, "({p} & {q})"),
            Predicate::Or(p, q) => write!(f, "({p} | {q})"),
        }
    }
}

impl Predicate {
    /// Parses `text` against `atoms`.
    pub fn parse(text: &str, atoms: &AtomRegistry) -> Result<Predicate, PredicateError> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
            atoms,
        };
        let e = p.or()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
        }
        Ok(e)
    }

    /// Evaluates with short-circuiting.
    pub fn eval(&self, ctx: &EvalContext<'_>) -> Result<bool, PredicateError> {
        Ok(match self {
            Predicate::Atom(a) => a.eval(ctx).map_err(|message| PredicateError::Eval {
                atom: a.name(),
                message,
            })?,
            Predicate::Not(p) => !p.eval(ctx)?,
            Predicate::And(p, q) => p.eval(ctx)? && q.eval(ctx)?,
            Predicate::Or(p, q) => p.eval(ctx)? || q.eval(ctx)?,
        })
    }
}

struct Parser<'r> {
    chars: Vec<char>,
    pos: usize,
    atoms: &'r AtomRegistry,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PredicateError {
        PredicateError::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn or(&mut self) -> Result<Predicate, PredicateError> {
        let mut left = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.and()?;
            left = Predicate::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Predicate, PredicateError> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            let right = self.unary()?;
            left = Predicate::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate, PredicateError> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Predicate::Not(Box::new(self.unary()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('{') => {
                let start = self.pos;
                let Some(len) = self.chars[start..].iter().position(|&c| c == '}') else {
                    return Err(self.error("unterminated `{`"));
                };
                let text: String = self.chars[start + 1..start + len].iter().collect();
                let identity = Identity::parse(&text).map_err(|e| self.error(e.to_string()))?;
                self.pos = start + len + 1;
                Ok(Predicate::Atom(Arc::new(IdentityAtom { identity })))
            }
            Some(c) if is_atom_char(c) => {
                let start = self.pos;
                while self.pos < self.chars.len() && is_atom_char(self.chars[self.pos]) {
                    self.pos += 1;
                }
                let word: String = self.chars[start..self.pos].iter().collect();
                self.atoms.get(&word).map(Predicate::Atom).ok_or_else(|| PredicateError::Parse {
                    column: start + 1,
                    message: format!("unknown atom `{word}`"),
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of predicate")),
        }
    }
}

fn is_atom_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '′' | '*' | '-' | '+')
}
