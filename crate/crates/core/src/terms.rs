//! Terms over `{∧, ∨, ′, ~, 0, 1}`, identities, exhaustive satisfaction
//! sweeps (full and restricted) and the named identity library.
//!
//! # Syntax
//!
//! ```text
//! identity := expr ("==" | "<=") expr
//! expr     := meet ("v" meet)*          -- join, lowest precedence
//! meet     := postfix ("^" postfix)*
//! postfix  := atom ("'" | "~")*
//! atom     := "0" | "1" | variable | "(" expr ")"
//! variable := letter (letter | digit | "_")*, except the word "v"
//! ```
//!
//! The Unicode forms `∧ ∨ ′ ≈ ≤` are accepted as well. An inequality
//! `t <= u` is stored as the identity `t ∧ u ≈ t`. Variables are numbered by
//! first appearance, left side first.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::order::Elem;
use crate::structures::BZAlgebra;

/// Default bound on the number of assignments a sweep may visit.
pub const DEFAULT_MAX_EVALS: u128 = 100_000_000;

/// Environment variable overriding the sweep budget.
pub const MAX_EVALS_ENV: &str = "PBZ_MAX_EVALS";

/// The sweep budget: `PBZ_MAX_EVALS` when set to a number, otherwise the default.
pub fn max_evals_from_env() -> u128 {
    std::env::var(MAX_EVALS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EVALS)
}

/// Errors raised by parsing and evaluating terms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    /// Malformed term or identity text.
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    /// The assignment does not cover a variable of the term.
    #[error("variable {0} is unbound")]
    UnboundVariable(usize),
    /// The number of restriction domains differs from the number of variables.
    #[error("expected {expected} domains (one per variable), got {got}")]
    DomainArity { expected: usize, got: usize },
    /// The sweep would exceed the evaluation budget.
    #[error("sweep needs {needed} evaluations, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    /// A domain element lies outside the universe.
    #[error("domain element {0} is outside the universe")]
    OutOfRange(Elem),
}

/// A term; variables are indices into the owning identity's variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Inv(Box<Term>),
    Brouwer(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    /// `t ∧ u`.
    pub fn meet(t: Term, u: Term) -> Term {
        Term::Meet(Box::new(t), Box::new(u))
    }

    /// `t ∨ u`.
    pub fn join(t: Term, u: Term) -> Term {
        Term::Join(Box::new(t), Box::new(u))
    }

    /// `t′`.
    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    /// `t~`.
    pub fn brouwer(t: Term) -> Term {
        Term::Brouwer(Box::new(t))
    }

    /// `◇t = t~~`.
    pub fn diamond(t: Term) -> Term {
        Term::brouwer(Term::brouwer(t))
    }

    /// One more than the largest variable index (0 for closed terms).
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Zero | Term::One => 0,
            Term::Inv(t) | Term::Brouwer(t) => t.var_bound(),
            Term::Meet(a, b) | Term::Join(a, b) => a.var_bound().max(b.var_bound()),
        }
    }

    /// Nesting depth.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 0,
            Term::Inv(t) | Term::Brouwer(t) => 1 + t.depth(),
            Term::Meet(a, b) | Term::Join(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Renders the term in the input syntax with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        fn go(t: &Term, names: &[String], prec: u8, out: &mut String) {
            match t {
                Term::Var(i) => out.push_str(names.get(*i).map_or("?", |s| s.as_str())),
                Term::Zero => out.push('0'),
                Term::One => out.push('1'),
                Term::Inv(s) | Term::Brouwer(s) => {
                    go(s, names, 3, out);
                    out.push(if matches!(t, Term::Inv(_)) { '\'' } else { '~' });
                }
                Term::Meet(a, b) | Term::Join(a, b) => {
                    let (p, op) = if matches!(t, Term::Meet(..)) { (2, " ^ ") } else { (1, " v ") };
                    if prec > p {
                        out.push('(');
                    }
                    go(a, names, p, out);
                    out.push_str(op);
                    go(b, names, p + 1, out);
                    if prec > p {
                        out.push(')');
                    }
                }
            }
        }
        let mut s = String::new();
        go(self, names, 0, &mut s);
        s
    }

    fn compile(&self, out: &mut Vec<Instr>) {
        match self {
            Term::Var(i) => out.push(Instr::Var(*i)),
            Term::Zero => out.push(Instr::Zero),
            Term::One => out.push(Instr::One),
            Term::Inv(t) => {
                t.compile(out);
                out.push(Instr::Inv);
            }
            Term::Brouwer(t) => {
                t.compile(out);
                out.push(Instr::Brouwer);
            }
            Term::Meet(a, b) => {
                a.compile(out);
                b.compile(out);
                out.push(Instr::Meet);
            }
            Term::Join(a, b) => {
                a.compile(out);
                b.compile(out);
                out.push(Instr::Join);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Zero,
    One,
    Inv,
    Brouwer,
    Meet,
    Join,
}

/// A term compiled to a postfix program for fast repeated evaluation.
#[derive(Debug, Clone)]
struct Program(Vec<Instr>);

impl Program {
    fn new(t: &Term) -> Self {
        let mut v = Vec::new();
        t.compile(&mut v);
        Program(v)
    }

    #[inline]
    fn run(&self, a: &BZAlgebra, env: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for ins in &self.0 {
            let v = match *ins {
                Instr::Var(i) => env[i],
                Instr::Zero => a.bot(),
                Instr::One => a.top(),
                Instr::Inv => {
                    let x = stack.pop().expect("operand");
                    a.inv(x)
                }
                Instr::Brouwer => {
                    let x = stack.pop().expect("operand");
                    a.brouwer(x)
                }
                Instr::Meet | Instr::Join => {
                    let y = stack.pop().expect("operand");
                    let x = stack.pop().expect("operand");
                    if *ins == Instr::Meet {
                        a.meet(x, y)
                    } else {
                        a.join(x, y)
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("result")
    }
}

/// Evaluates `t` in `a` under `assignment` (variable `i` ↦ `assignment[i]`).
pub fn eval(t: &Term, a: &BZAlgebra, assignment: &[Elem]) -> Result<Elem, TermError> {
    if t.var_bound() > assignment.len() {
        return Err(TermError::UnboundVariable(assignment.len()));
    }
    if let Some(&x) = assignment.iter().find(|&&x| x >= a.n()) {
        return Err(TermError::OutOfRange(x));
    }
    Ok(Program::new(t).run(a, assignment, &mut Vec::new()))
}

/// An identity `lhs ≈ rhs` with shared variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: Option<String>,
    pub lhs: Term,
    pub rhs: Term,
    /// Variable names, in order of first appearance.
    pub vars: Vec<String>,
    /// The text the identity was parsed from.
    pub source: String,
}

impl Identity {
    /// Parses `t == u` or `t <= u`.
    pub fn parse(text: &str) -> Result<Identity, TermError> {
        let mut p = Parser::new(text);
        let lhs = p.expr()?;
        let rel = p.relation()?;
        let rhs = p.expr()?;
        p.end()?;
        let (lhs, rhs) = match rel {
            Rel::Eq => (lhs, rhs),
            Rel::Leq => (Term::meet(lhs.clone(), rhs), lhs),
        };
        Ok(Identity {
            name: None,
            lhs,
            rhs,
            vars: p.vars,
            source: text.trim().to_string(),
        })
    }

    /// Parses an identity and attaches a name.
    pub fn named(name: &str, text: &str) -> Result<Identity, TermError> {
        let mut id = Self::parse(text)?;
        id.name = Some(name.to_string());
        Ok(id)
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Display name: the library name or the source text.
    pub fn title(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.source)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs.render(&self.vars), self.rhs.render(&self.vars))
    }
}

/// A failing assignment together with the two differing values.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Counterexample {
    pub assignment: Vec<Elem>,
    pub lhs: Elem,
    pub rhs: Elem,
}

/// Outcome of a satisfaction sweep.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Holds,
    /// The least failing assignment in lexicographic order (first variable most significant).
    Fails(Counterexample),
}

impl Verdict {
    /// Whether the identity holds.
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    /// The counterexample, if any.
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }
}

/// Exhaustive check of `id` over all assignments, with the default budget.
pub fn satisfies(a: &BZAlgebra, id: &Identity) -> Result<Verdict, TermError> {
    satisfies_with_budget(a, id, DEFAULT_MAX_EVALS)
}

/// Exhaustive check of `id` over all assignments.
pub fn satisfies_with_budget(a: &BZAlgebra, id: &Identity, budget: u128) -> Result<Verdict, TermError> {
    let full: Vec<Elem> = (0..a.n()).collect();
    let domains = vec![full; id.arity()];
    sweep(a, id, &domains, budget)
}

/// `A ⊨_{M₁,…,Mₙ} id`: variable `i` (by first appearance) ranges over `domains[i]`.
pub fn satisfies_restricted(a: &BZAlgebra, id: &Identity, domains: &[Vec<Elem>]) -> Result<Verdict, TermError> {
    if domains.len() != id.arity() {
        return Err(TermError::DomainArity {
            expected: id.arity(),
            got: domains.len(),
        });
    }
    if let Some(&x) = domains.iter().flatten().find(|&&x| x >= a.n()) {
        return Err(TermError::OutOfRange(x));
    }
    let sorted: Vec<Vec<Elem>> = domains
        .iter()
        .map(|d| {
            let mut d = d.clone();
            d.sort_unstable();
            d.dedup();
            d
        })
        .collect();
    sweep(a, id, &sorted, DEFAULT_MAX_EVALS)
}

fn sweep(a: &BZAlgebra, id: &Identity, domains: &[Vec<Elem>], budget: u128) -> Result<Verdict, TermError> {
    let needed = domains.iter().map(|d| d.len() as u128).product::<u128>();
    if needed > budget {
        return Err(TermError::BudgetExceeded { needed, budget });
    }
    let lhs = Program::new(&id.lhs);
    let rhs = Program::new(&id.rhs);
    let check_from = |prefix: &[Elem]| -> Option<Counterexample> {
        let k = domains.len();
        let mut env: Vec<Elem> = prefix.to_vec();
        let mut pos: Vec<usize> = vec![0; k];
        env.resize(k, 0);
        let start = prefix.len();
        if (start..k).any(|i| domains[i].is_empty()) {
            return None;
        }
        for i in start..k {
            env[i] = domains[i][0];
        }
        let mut stack = Vec::new();
        loop {
            let l = lhs.run(a, &env, &mut stack);
            let r = rhs.run(a, &env, &mut stack);
            if l != r {
                return Some(Counterexample {
                    assignment: env.clone(),
                    lhs: l,
                    rhs: r,
                });
            }
            // Odometer: last variable fastest.
            let mut i = k;
            loop {
                if i == start {
                    return None;
                }
                i -= 1;
                pos[i] += 1;
                if pos[i] < domains[i].len() {
                    env[i] = domains[i][pos[i]];
                    break;
                }
                pos[i] = 0;
                env[i] = domains[i][0];
            }
        }
    };
    let found = if domains.is_empty() {
        check_from(&[])
    } else {
        domains[0].par_iter().find_map_first(|&x| check_from(&[x]))
    };
    Ok(found.map_or(Verdict::Holds, Verdict::Fails))
}

/// Whether `id` fails at exactly this assignment.
pub fn fails_at(a: &BZAlgebra, id: &Identity, assignment: &[Elem]) -> Result<bool, TermError> {
    Ok(eval(&id.lhs, a, assignment)? != eval(&id.rhs, a, assignment)?)
}

enum Rel {
    Eq,
    Leq,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(String),
    Zero,
    One,
    Meet,
    Join,
    Inv,
    Brouwer,
    Open,
    Close,
    Eq,
    Leq,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: Vec<String>,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.chars().enumerate().collect();
        let mut i = 0;
        while i < chars.len() {
            let (col, c) = chars[i];
            let col = col + 1;
            let next = chars.get(i + 1).map(|p| p.1);
            let tok = match c {
                c if c.is_whitespace() => None,
                '(' => Some(Tok::Open),
                ')' => Some(Tok::Close),
                '^' | '∧' => Some(Tok::Meet),
                '∨' => Some(Tok::Join),
                '\'' | '′' => Some(Tok::Inv),
                '~' => Some(Tok::Brouwer),
                '0' => Some(Tok::Zero),
                '1' => Some(Tok::One),
                '≈' => Some(Tok::Eq),
                '≤' => Some(Tok::Leq),
                '=' if next == Some('=') => {
                    i += 1;
                    Some(Tok::Eq)
                }
                '=' => Some(Tok::Eq),
                '<' if next == Some('=') => {
                    i += 1;
                    Some(Tok::Leq)
                }
                c if c.is_alphabetic() => {
                    let mut word = String::new();
                    while let Some(&(_, d)) = chars.get(i) {
                        if d.is_alphanumeric() || d == '_' {
                            word.push(d);
                            i += 1;
                        } else {
                            break;
                        }
                    }
                    i -= 1;
                    Some(if word == "v" { Tok::Join } else { Tok::Var(word) })
                }
                other => Some(Tok::Var(format!("\u{0}{other}"))),
            };
            if let Some(t) = tok {
                toks.push((col, t));
            }
            i += 1;
        }
        Parser {
            toks,
            pos: 0,
            vars: Vec::new(),
            len: chars.len(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len + 1, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Term, TermError> {
        let mut t = self.meet()?;
        while self.peek() == Some(&Tok::Join) {
            self.pos += 1;
            t = Term::join(t, self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term, TermError> {
        let mut t = self.postfix()?;
        while self.peek() == Some(&Tok::Meet) {
            self.pos += 1;
            t = Term::meet(t, self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<Term, TermError> {
        let mut t = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Inv) => t = Term::inv(t),
                Some(Tok::Brouwer) => t = Term::brouwer(t),
                _ => return Ok(t),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        let t = match self.peek().cloned() {
            Some(Tok::Zero) => Term::Zero,
            Some(Tok::One) => Term::One,
            Some(Tok::Var(name)) if name.starts_with('\u{0}') => {
                return self.err(format!("unexpected character `{}`", &name[1..]));
            }
            Some(Tok::Var(name)) => {
                let i = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                };
                Term::Var(i)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.err("expected `)`");
                }
                t
            }
            Some(other) => return self.err(format!("unexpected {other:?}")),
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        Ok(t)
    }

    fn relation(&mut self) -> Result<Rel, TermError> {
        let r = match self.peek() {
            Some(Tok::Eq) => Rel::Eq,
            Some(Tok::Leq) => Rel::Leq,
            _ => return self.err("expected `==` or `<=`"),
        };
        self.pos += 1;
        Ok(r)
    }

    fn end(&self) -> Result<(), TermError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("trailing input"),
        }
    }
}

/// Parses a single term (no relation); variables are numbered by first appearance.
pub fn parse_term(text: &str) -> Result<(Term, Vec<String>), TermError> {
    let mut p = Parser::new(text);
    let t = p.expr()?;
    p.end()?;
    Ok((t, p.vars))
}

/// The named identities.
#[derive(Debug, Clone)]
pub struct NamedIdentityLibrary {
    entries: Vec<Identity>,
}

const LIBRARY: &[(&str, &str)] = &[
    ("SDM", "(x ^ y)~ == x~ v y~"),
    ("WSDM", "(x ^ y~)~ == x~ v y~~"),
    ("S1", "(x ^ (x ^ y)~)~ == x~ v (x ^ y)~~"),
    ("S1'", "((x v y) ^ y~)~ == (x v y)~ v y~~"),
    ("S2", "(x ^ (y ^ y')~)~ == x~ v (y ^ y')~~"),
    ("S3", "(x ^ (y ^ y')~~)~ == x~ v (y ^ y')~"),
    ("J0", "x == (x ^ y~) v (x ^ y~~)"),
    ("J1", "x == (x ^ (x ^ y)~) v (x ^ (x ^ y)~~)"),
    ("J1'", "x v y == ((x v y) ^ y~) v ((x v y) ^ y~~)"),
    ("J2", "x == (x ^ (y ^ y')~) v (x ^ (y ^ y')~~)"),
    ("PARA", "(x~ v (x~~ ^ y~~)) ^ x~~ <= y~~"),
];

impl NamedIdentityLibrary {
    /// The standard library (built once).
    pub fn standard() -> &'static NamedIdentityLibrary {
        static LIB: OnceLock<NamedIdentityLibrary> = OnceLock::new();
        LIB.get_or_init(|| NamedIdentityLibrary {
            entries: LIBRARY
                .iter()
                .map(|(name, text)| Identity::named(name, text).expect("library identities parse"))
                .collect(),
        })
    }

    /// Looks up an identity by name; case-insensitive, and `S1p`/`J1p` alias the primed forms.
    pub fn get(&self, name: &str) -> Option<&Identity> {
        let norm = name.trim().to_ascii_uppercase().replace('′', "'");
        let norm = match norm.strip_suffix('P') {
            Some(stem) if stem == "S1" || stem == "J1" => format!("{stem}'"),
            _ => norm,
        };
        self.entries.iter().find(|e| e.name.as_deref() == Some(norm.as_str()))
    }

    /// All library identities, in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = &Identity> {
        self.entries.iter()
    }

    /// The library names.
    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().filter_map(|e| e.name.as_deref()).collect()
    }
}

/// Shorthand for a standard library identity.
///
/// # Panics
/// Panics on an unknown name.
pub fn library_identity(name: &str) -> &'static Identity {
    NamedIdentityLibrary::standard()
        .get(name)
        .unwrap_or_else(|| panic!("unknown library identity {name}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::chain;

    #[test]
    fn parse_and_render_round_trip() {
        let id = Identity::parse("(x ^ y)~ == x~ v y~").unwrap();
        assert_eq!(id.vars, vec!["x", "y"]);
        assert_eq!(id.to_string(), "(x ^ y)~ == x~ v y~");
        let again = Identity::parse(&id.to_string()).unwrap();
        assert_eq!((again.lhs, again.rhs), (id.lhs, id.rhs));
    }

    #[test]
    fn inequality_is_encoded_with_meet() {
        let id = Identity::parse("x <= x v y").unwrap();
        assert_eq!(id.lhs, Term::meet(Term::Var(0), Term::join(Term::Var(0), Term::Var(1))));
        assert_eq!(id.rhs, Term::Var(0));
    }

    #[test]
    fn precedence_meet_binds_tighter() {
        let (t, _) = parse_term("x v y ^ z").unwrap();
        assert_eq!(t, Term::join(Term::Var(0), Term::meet(Term::Var(1), Term::Var(2))));
        let (t, _) = parse_term("x'~").unwrap();
        assert_eq!(t, Term::brouwer(Term::inv(Term::Var(0))));
    }

    #[test]
    fn parse_errors_report_columns() {
        match Identity::parse("x ^ == y") {
            Err(TermError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(Identity::parse("x ^ y").is_err());
        assert!(Identity::parse("(x == y").is_err());
        assert!(Identity::parse("x # y == x").is_err());
    }

    #[test]
    fn eval_fixpoint_of_three_chain() {
        let (t, _) = parse_term("x ^ x'").unwrap();
        assert_eq!(eval(&t, &chain(3), &[1]).unwrap(), 1);
        assert_eq!(eval(&t, &chain(3), &[]), Err(TermError::UnboundVariable(0)));
    }

    #[test]
    fn chains_satisfy_j0_and_budget_is_enforced() {
        let d5 = chain(5);
        assert!(satisfies(&d5, library_identity("J0")).unwrap().holds());
        assert!(matches!(
            satisfies_with_budget(&d5, library_identity("J0"), 10),
            Err(TermError::BudgetExceeded { needed: 25, budget: 10 })
        ));
    }

    #[test]
    fn restricted_domains_arity() {
        let d3 = chain(3);
        let sdm = library_identity("SDM");
        assert!(matches!(
            satisfies_restricted(&d3, sdm, &[vec![0]]),
            Err(TermError::DomainArity { expected: 2, got: 1 })
        ));
        let full = vec![(0..3).collect::<Vec<_>>(); 2];
        assert_eq!(satisfies_restricted(&d3, sdm, &full).unwrap(), satisfies(&d3, sdm).unwrap());
    }

    #[test]
    fn library_aliases() {
        let lib = NamedIdentityLibrary::standard();
        assert_eq!(lib.get("s1p").unwrap().name.as_deref(), Some("S1'"));
        assert_eq!(lib.get("J1'").unwrap().name.as_deref(), Some("J1'"));
        assert!(lib.get("nope").is_none());
        assert_eq!(lib.names().len(), 11);
    }
}
