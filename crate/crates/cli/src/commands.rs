//! Command-line surface: argument definitions and the command implementations.
//!
//! Every command writes a line-oriented text report to stdout, or a JSON
//! document with `--json`. The JSON schema is fixed by the `*Json` structs in
//! this module; apart from `wall_ms` in verify reports, repeated runs with the
//! same arguments print identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use pbz_core::catalog::catalog;
use pbz_core::congruence::{congruence_lattice, irreducibility, CongruenceLattice, Partition};
use pbz_core::order::FinLattice;
use pbz_core::signature::Level;
use pbz_core::structures::{axiom_report, classify, element_sets, BZAlgebra, Flag};
use pbz_core::subalg::lattices_isomorphic;
use pbz_core::sums::{canonical_aol_with_map, chain, horizontal_sum, mo, ordinal_sum, product, SumIndexMap};
use pbz_core::terms::{max_evals_from_env, satisfies_with_budget, Identity, NamedIdentityLibrary, Verdict};
use serde::Serialize;

use crate::algfile;
use crate::enumerate::least_antitone_involution;
use crate::error::{CliError, EXIT_OK, EXIT_PROPERTY_FAILURE};
use crate::families::{FamilyParams, FamilyRegistry};
use crate::predicate::{AtomRegistry, EvalContext, Predicate};
use crate::source::{load, Loaded};
use crate::suites::{boolean_lattice, plus_top, SuiteParams, SuiteRegistry};

/// Finite-algebra engine for PBZ*-lattices.
#[derive(Debug, Parser)]
#[command(name = "pbz", version, about)]
pub struct Cli {
    /// Print a JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Signature level selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Lattice,
    Bi,
    Bz,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Lattice => Level::Lattice,
            LevelArg::Bi => Level::Bi,
            LevelArg::Bz => Level::Bz,
        }
    }
}

/// Output style of the congruence report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportArg {
    Table,
    Dot,
}

/// Registries that `list` can print.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListArg {
    Suites,
    Families,
    Atoms,
    Identities,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an algebra and decide identities on it.
    Check(CheckArgs),
    /// Build an algebra from parts and write it as an algebra file.
    Construct(ConstructArgs),
    /// Enumerate the congruence lattice of an algebra.
    Con(ConArgs),
    /// Run theorem-verification suites.
    Verify(VerifyArgs),
    /// Search generated families for algebras satisfying a predicate.
    Search(SearchArgs),
    /// List the built-in algebras, or export one as an algebra file.
    Catalog(CatalogArgs),
    /// List registered suites, families, predicate atoms or identities.
    List {
        #[arg(value_enum)]
        what: ListArg,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// An algebra file or `catalog:NAME`.
    pub source: String,
    /// Library identity names or identity expressions such as `x ^ x' <= y v y'`.
    #[arg(long, num_args = 1..)]
    pub identity: Vec<String>,
    /// Report each defining axiom with its first failing tuple.
    #[arg(long)]
    pub axioms: bool,
    /// Report the sharp, dense, T and central element sets.
    #[arg(long)]
    pub sets: bool,
    /// Report simplicity and subdirect/direct irreducibility.
    #[arg(long)]
    pub irreducibility: bool,
    /// Signature level for the irreducibility report.
    #[arg(long, value_enum, default_value = "bz")]
    pub level: LevelArg,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("construction").required(true).multiple(false)))]
pub struct ConstructArgs {
    /// Ordinal sum of two lattice reducts, with the least order-reversing involution.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "construction")]
    pub ordinal: Option<Vec<String>>,
    /// Horizontal sum of two or more algebras.
    #[arg(long, num_args = 2.., value_names = ["A", "B"], group = "construction")]
    pub horizontal: Option<Vec<String>>,
    /// Direct product of two algebras.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "construction")]
    pub product: Option<Vec<String>>,
    /// The orthomodular lattice MO_K.
    #[arg(long, value_name = "K", group = "construction")]
    pub mo: Option<usize>,
    /// The antiortholattice chain D_N.
    #[arg(long, value_name = "N", group = "construction")]
    pub chain: Option<usize>,
    /// The canonical antiortholattice M (+) K (+) M^d of a lattice M and a pseudo-Kleene K.
    #[arg(long = "canonical-aol", num_args = 2, value_names = ["M", "K"], group = "construction")]
    pub canonical_aol: Option<Vec<String>>,
    /// Output file; the algebra is printed when omitted.
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConArgs {
    /// An algebra file or `catalog:NAME`.
    pub source: String,
    /// Signature level.
    #[arg(long, value_enum, default_value = "bz")]
    pub level: LevelArg,
    /// Table of congruences, or a Graphviz Hasse diagram.
    #[arg(long, value_enum, default_value = "table")]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Size bound; each suite has its own default.
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Seed for randomized families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Boolean combination of atoms with `!`, `&`, `|` and parentheses.
    #[arg(long)]
    pub predicate: String,
    /// Family to enumerate.
    #[arg(long, default_value = "all")]
    pub family: String,
    /// Largest universe to enumerate.
    #[arg(long, default_value_t = 12)]
    pub max_size: usize,
    /// Seed for randomized families.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write each match as an algebra file into this directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Entry to export; all entries are listed when omitted.
    pub name: Option<String>,
    /// Output file for the export.
    #[arg(short = 'o', long = "out", requires = "name")]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Text written to stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: EXIT_OK }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check(a) => check(a, cli.json),
        Command::Construct(a) => construct(a, cli.json),
        Command::Con(a) => con(a, cli.json),
        Command::Verify(a) => verify(a, cli.json),
        Command::Search(a) => search(a, cli.json),
        Command::Catalog(a) => catalog_cmd(a, cli.json),
        Command::List { what } => list(*what, cli.json),
    }
}

// ---------------------------------------------------------------------------
// check

#[derive(Debug, Serialize)]
struct IdentityJson {
    name: String,
    identity: String,
    holds: bool,
    /// Variable name to element label.
    witness: Option<BTreeMap<String, String>>,
    lhs: Option<String>,
    rhs: Option<String>,
}

#[derive(Debug, Serialize)]
struct AxiomJson {
    name: String,
    statement: String,
    holds: bool,
    witness: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
struct SetsJson {
    sharp: Vec<String>,
    dense: Vec<String>,
    t_set: Vec<String>,
    central: Vec<String>,
}

#[derive(Debug, Serialize)]
struct IrreducibilityJson {
    level: String,
    simple: bool,
    subdirectly_irreducible: bool,
    directly_irreducible: bool,
    monolith: Option<Vec<Vec<String>>>,
    factor_pair: Option<(Vec<Vec<String>>, Vec<Vec<String>>)>,
}

#[derive(Debug, Serialize)]
struct CheckJson {
    algebra: String,
    size: usize,
    flags: Vec<String>,
    identities: Vec<IdentityJson>,
    axioms: Option<Vec<AxiomJson>>,
    sets: Option<SetsJson>,
    irreducibility: Option<IrreducibilityJson>,
    all_identities_hold: bool,
}

fn labels(a: &BZAlgebra, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| a.label(x)).collect()
}

fn blocks(a: &BZAlgebra, p: &Partition) -> Vec<Vec<String>> {
    p.blocks().iter().map(|b| labels(a, b)).collect()
}

fn show_blocks(bs: &[Vec<String>]) -> String {
    bs.iter().map(|b| format!("{{{}}}", b.join(", "))).collect::<Vec<_>>().join(" ")
}

fn resolve_identity(text: &str) -> Result<Identity, CliError> {
    if let Some(id) = NamedIdentityLibrary::standard().get(text) {
        return Ok(id.clone());
    }
    Identity::parse(text).map_err(|e| {
        CliError::Parse(format!(
            "`{text}` is neither a library identity ({}) nor a valid expression: {e}",
            NamedIdentityLibrary::standard().names().join(", ")
        ))
    })
}

fn check(args: &CheckArgs, as_json: bool) -> Result<Output, CliError> {
    let Loaded { name, algebra: a, .. } = load(&args.source)?;
    let class = classify(&a)?;
    let budget = max_evals_from_env();
    let ids: Vec<Identity> = args.identity.iter().map(|t| resolve_identity(t)).collect::<Result<_, _>>()?;
    let mut identities = Vec::new();
    for id in &ids {
        let v = satisfies_with_budget(&a, id, budget)?;
        let (witness, lhs, rhs) = match &v {
            Verdict::Holds => (None, None, None),
            Verdict::Fails(c) => (
                Some(id.vars.iter().cloned().zip(c.assignment.iter().map(|&x| a.label(x))).collect()),
                Some(a.label(c.lhs)),
                Some(a.label(c.rhs)),
            ),
        };
        identities.push(IdentityJson {
            name: id.title().to_string(),
            identity: id.to_string(),
            holds: v.holds(),
            witness,
            lhs,
            rhs,
        });
    }
    let axioms = args.axioms.then(|| {
        axiom_report(&a)
            .into_iter()
            .map(|c| AxiomJson {
                name: c.name.to_string(),
                statement: c.statement.to_string(),
                holds: c.holds,
                witness: c.witness.map(|w| labels(&a, &w)),
            })
            .collect::<Vec<_>>()
    });
    let sets = args.sets.then(|| {
        let s = element_sets(&a);
        SetsJson {
            sharp: labels(&a, &s.sharp),
            dense: labels(&a, &s.dense),
            t_set: labels(&a, &s.t_set),
            central: labels(&a, &s.central),
        }
    });
    let irr = if args.irreducibility {
        let level = Level::from(args.level);
        let r = irreducibility(&a, level)?;
        Some(IrreducibilityJson {
            level: level.to_string(),
            simple: r.simple,
            subdirectly_irreducible: r.subdirectly_irreducible,
            directly_irreducible: r.directly_irreducible,
            monolith: r.monolith.as_ref().map(|m| blocks(&a, m)),
            factor_pair: r.factor_pair.as_ref().map(|(p, q)| (blocks(&a, p), blocks(&a, q))),
        })
    } else {
        None
    };
    let all_hold = identities.iter().all(|i| i.holds);
    let report = CheckJson {
        algebra: name,
        size: a.n(),
        flags: Flag::ALL.iter().filter(|f| class.has(**f)).map(|f| f.to_string()).collect(),
        identities,
        axioms,
        sets,
        irreducibility: irr,
        all_identities_hold: all_hold,
    };
    let text = if as_json { json(&report) } else { check_text(&report, &class.reasons) };
    Ok(Output {
        text,
        code: if all_hold { EXIT_OK } else { EXIT_PROPERTY_FAILURE },
    })
}

fn check_text(r: &CheckJson, reasons: &BTreeMap<Flag, String>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {} ({} elements)", r.algebra, r.size);
    let _ = writeln!(s, "flags: {}", if r.flags.is_empty() { "-".to_string() } else { r.flags.join(" ") });
    for (f, why) in reasons {
        let _ = writeln!(s, "  not {f}: {why}");
    }
    for i in &r.identities {
        match &i.witness {
            None => {
                let _ = writeln!(s, "{}: PASS  [{}]", i.name, i.identity);
            }
            Some(w) => {
                let w: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(
                    s,
                    "{}: FAIL  [{}] at {}: {} != {}",
                    i.name,
                    i.identity,
                    w.join(", "),
                    i.lhs.as_deref().unwrap_or("?"),
                    i.rhs.as_deref().unwrap_or("?")
                );
            }
        }
    }
    if let Some(ax) = &r.axioms {
        for c in ax {
            let tail = c.witness.as_ref().map(|w| format!(" at ({})", w.join(", "))).unwrap_or_default();
            let _ = writeln!(s, "axiom {}: {}  [{}]{tail}", c.name, if c.holds { "holds" } else { "fails" }, c.statement);
        }
    }
    if let Some(sets) = &r.sets {
        let _ = writeln!(s, "S = {{{}}}", sets.sharp.join(", "));
        let _ = writeln!(s, "D = {{{}}}", sets.dense.join(", "));
        let _ = writeln!(s, "T = {{{}}}", sets.t_set.join(", "));
        let _ = writeln!(s, "central = {{{}}}", sets.central.join(", "));
    }
    if let Some(i) = &r.irreducibility {
        let _ = writeln!(s, "level: {}", i.level);
        let _ = writeln!(s, "simple: {}", i.simple);
        let _ = writeln!(s, "SI: {}", i.subdirectly_irreducible);
        let _ = writeln!(s, "DI: {}", i.directly_irreducible);
        if let Some(m) = &i.monolith {
            let _ = writeln!(s, "monolith: {}", show_blocks(m));
        }
        if let Some((p, q)) = &i.factor_pair {
            let _ = writeln!(s, "factor pair: {} | {}", show_blocks(p), show_blocks(q));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// construct

#[derive(Debug, Serialize)]
struct ConstructJson {
    construction: String,
    size: usize,
    out: Option<String>,
    file: String,
}

fn sum_comments(construction: &str, a: &BZAlgebra, map: Option<&SumIndexMap>, parts: &[String]) -> Vec<String> {
    let mut c = vec![format!("construction: {construction}")];
    if let Some(map) = map {
        for (i, p) in parts.iter().enumerate() {
            c.push(format!("summand {}: {p}", (b'A' + i as u8) as char));
        }
        for e in 0..a.n() {
            c.push(format!("element {}: {}", a.label(e), map.describe(e)));
        }
        for (e, _) in map.glue_classes() {
            c.push(format!("glued: {} = {}", a.label(e), map.describe(e)));
        }
    }
    c
}

fn construct(args: &ConstructArgs, as_json: bool) -> Result<Output, CliError> {
    let names = |v: &[String]| v.join(" ");
    let (construction, a, map, parts): (String, BZAlgebra, Option<SumIndexMap>, Vec<String>) = if let Some(v) = &args.ordinal {
        let (x, y) = (load(&v[0])?, load(&v[1])?);
        let (lat, map) = ordinal_sum(x.algebra.lat(), y.algebra.lat());
        let lat = lat.without_labels();
        let inv = least_antitone_involution(&lat)
            .ok_or_else(|| CliError::Construction("the ordinal sum has no order-reversing involution".into()))?;
        let a = BZAlgebra::with_trivial_brouwer(lat, inv)?;
        (format!("ordinal {}", names(v)), a, Some(map), vec![x.name, y.name])
    } else if let Some(v) = &args.horizontal {
        let loaded: Vec<Loaded> = v.iter().map(|s| load(s)).collect::<Result<_, _>>()?;
        let refs: Vec<&BZAlgebra> = loaded.iter().map(|l| &l.algebra).collect();
        let (a, map) = horizontal_sum(&refs)?;
        (format!("horizontal {}", names(v)), a, Some(map), loaded.into_iter().map(|l| l.name).collect())
    } else if let Some(v) = &args.product {
        let (x, y) = (load(&v[0])?, load(&v[1])?);
        (format!("product {}", names(v)), product(&x.algebra, &y.algebra), None, vec![])
    } else if let Some(k) = args.mo {
        (format!("mo {k}"), mo(k)?, None, vec![])
    } else if let Some(n) = args.chain {
        if n == 0 || n > algfile::MAX_UNIVERSE {
            return Err(CliError::SizeLimit(format!("chain length {n} is outside 1..={}", algfile::MAX_UNIVERSE)));
        }
        (format!("chain {n}"), chain(n), None, vec![])
    } else if let Some(v) = &args.canonical_aol {
        let (m, k) = (load(&v[0])?, load(&v[1])?);
        let (a, map) = canonical_aol_with_map(m.algebra.lat(), &k.algebra)?;
        (format!("canonical-aol {}", names(v)), a, Some(map), vec![m.name.clone(), k.name, format!("{}^d", m.name)])
    } else {
        return Err(CliError::Usage("no construction given".into()));
    };
    let comments = sum_comments(&construction, &a, map.as_ref(), &parts);
    let file = algfile::render(&a, &comments);
    let out = match &args.out {
        Some(p) => {
            fs::write(p, &file).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Some(p.display().to_string())
        }
        None => None,
    };
    let report = ConstructJson {
        construction,
        size: a.n(),
        out,
        file,
    };
    let text = if as_json {
        json(&report)
    } else if let Some(p) = &report.out {
        format!("wrote {p}: {} ({} elements)\n", report.construction, report.size)
    } else {
        report.file.clone()
    };
    Ok(Output::ok(text))
}

// ---------------------------------------------------------------------------
// con

#[derive(Debug, Serialize)]
struct ConJson {
    algebra: String,
    level: String,
    size: usize,
    congruences: Vec<Vec<Vec<String>>>,
    /// Covering pairs of the congruence lattice, by congruence index.
    covers: Vec<(usize, usize)>,
    monolith: Option<usize>,
    con0: Vec<usize>,
    con01: Vec<usize>,
    shape: Vec<String>,
}

/// Shape tags of a lattice: `D2^k`, `D2^k (+) D2` or `Dn`, when it is one of these.
pub fn shape_tags(l: &FinLattice) -> Vec<String> {
    let n = l.n();
    let iso = |m: &FinLattice| m.n() == n && lattices_isomorphic(l, m).unwrap_or(false);
    let mut tags = Vec::new();
    if n.is_power_of_two() {
        let k = n.trailing_zeros() as usize;
        if iso(&boolean_lattice(k)) {
            tags.push(format!("D2^{k}"));
        }
    }
    if n >= 2 && (n - 1).is_power_of_two() {
        let k = (n - 1).trailing_zeros() as usize;
        if iso(&plus_top(&boolean_lattice(k))) {
            tags.push(format!("D2^{k} (+) D2"));
        }
    }
    if iso(&FinLattice::chain(n)) {
        tags.push(format!("D{n}"));
    }
    tags
}

fn con(args: &ConArgs, as_json: bool) -> Result<Output, CliError> {
    let Loaded { name, algebra: a, .. } = load(&args.source)?;
    let level = Level::from(args.level);
    let c: CongruenceLattice = congruence_lattice(&a, level)?;
    let l = c.lattice()?;
    let irr = irreducibility(&a, level)?;
    let monolith = irr
        .monolith
        .as_ref()
        .and_then(|m| c.congruences().iter().position(|p| p == m));
    let report = ConJson {
        algebra: name,
        level: level.to_string(),
        size: c.congruences().len(),
        congruences: c.congruences().iter().map(|p| blocks(&a, p)).collect(),
        covers: l.covers(),
        monolith,
        con0: c.con0().to_vec(),
        con01: c.con01().to_vec(),
        shape: shape_tags(&l),
    };
    let text = if as_json {
        json(&report)
    } else {
        match args.report {
            ReportArg::Table => con_table(&report),
            ReportArg::Dot => con_dot(&report),
        }
    };
    Ok(Output::ok(text))
}

fn con_table(r: &ConJson) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra: {}", r.algebra);
    let _ = writeln!(s, "level: {}", r.level);
    let _ = writeln!(s, "|Con| = {}", r.size);
    for (i, p) in r.congruences.iter().enumerate() {
        let _ = writeln!(s, "  [{i}] {}", show_blocks(p));
    }
    let covers: Vec<String> = r.covers.iter().map(|(x, y)| format!("{x}<{y}")).collect();
    let _ = writeln!(s, "covers: {}", covers.join(" "));
    match r.monolith {
        Some(m) => {
            let _ = writeln!(s, "monolith: [{m}]");
        }
        None => {
            let _ = writeln!(s, "monolith: none");
        }
    }
    let list = |v: &[usize]| v.iter().map(|i| format!("[{i}]")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "Con0: {}", list(&r.con0));
    let _ = writeln!(s, "Con01: {}", list(&r.con01));
    let _ = writeln!(s, "shape: {}", if r.shape.is_empty() { "-".to_string() } else { r.shape.join(", ") });
    s
}

fn con_dot(r: &ConJson) -> String {
    let mut s = String::from("digraph Con {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, p) in r.congruences.iter().enumerate() {
        let label = show_blocks(p).replace('"', "\\\"");
        let style = if Some(i) == r.monolith { ", style=bold" } else { "" };
        let _ = writeln!(s, "  c{i} [label=\"{label}\"{style}];");
    }
    for (x, y) in &r.covers {
        let _ = writeln!(s, "  c{x} -> c{y};");
    }
    s.push_str("}\n");
    s
}

// ---------------------------------------------------------------------------
// verify

fn verify(args: &VerifyArgs, as_json: bool) -> Result<Output, CliError> {
    let registry = SuiteRegistry::standard();
    let suites = if args.suite.eq_ignore_ascii_case("all") {
        registry.iter().cloned().collect::<Vec<_>>()
    } else {
        vec![registry.get(&args.suite).ok_or_else(|| {
            CliError::Usage(format!("unknown suite `{}`; known suites: {}", args.suite, registry.names().join(", ")))
        })?]
    };
    let params = SuiteParams {
        max_size: args.max_size,
        seed: args.seed,
    };
    let reports: Vec<_> = suites.iter().map(|s| s.run(&params)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let text = if as_json {
        json(&reports)
    } else {
        let mut s = String::new();
        for r in &reports {
            let _ = writeln!(
                s,
                "suite {} (max size {}, seed {}): {} in {} ms",
                r.suite,
                r.max_size,
                r.seed,
                if r.passed() { "PASS" } else { "FAIL" },
                r.wall_ms
            );
            for c in &r.checks {
                let _ = writeln!(
                    s,
                    "  {} {}: {} instances, {} failures",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.check,
                    c.instances,
                    c.failures
                );
                for d in &c.details {
                    let _ = writeln!(s, "    {d}");
                }
                for e in &c.counterexamples {
                    let _ = writeln!(s, "    counterexample: {e}");
                }
            }
        }
        s
    };
    Ok(Output {
        text,
        code: if passed { EXIT_OK } else { EXIT_PROPERTY_FAILURE },
    })
}

// ---------------------------------------------------------------------------
// search

#[derive(Debug, Serialize)]
struct MatchJson {
    name: String,
    family: String,
    size: usize,
    file: Option<String>,
}

#[derive(Debug, Serialize)]
struct SearchJson {
    predicate: String,
    family: String,
    max_size: usize,
    seed: u64,
    examined: usize,
    matches: Vec<MatchJson>,
}

fn file_stem(i: usize, name: &str) -> String {
    let clean: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    format!("{:04}-{}.alg", i + 1, clean)
}

fn search(args: &SearchArgs, as_json: bool) -> Result<Output, CliError> {
    let atoms = AtomRegistry::standard();
    let pred = Predicate::parse(&args.predicate, &atoms).map_err(|e| CliError::Parse(e.to_string()))?;
    let families = FamilyRegistry::standard();
    let family = families.get(&args.family).ok_or_else(|| {
        CliError::Usage(format!("unknown family `{}`; known families: {}", args.family, families.names().join(", ")))
    })?;
    let candidates = family.generate(&FamilyParams {
        max_size: args.max_size,
        seed: args.seed,
    });
    let budget = max_evals_from_env();
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut matches = Vec::new();
    for c in &candidates {
        let ctx = EvalContext::new(&c.algebra, budget);
        let hit = pred.eval(&ctx).map_err(|e| CliError::Construction(format!("{}: {e}", c.name)))?;
        if !hit {
            continue;
        }
        let file = match &args.out_dir {
            Some(dir) => {
                let path: PathBuf = Path::new(dir).join(file_stem(matches.len(), &c.name));
                let comments = vec![format!("search match: {}", c.name), format!("family: {}", c.family)];
                fs::write(&path, algfile::render(&c.algebra, &comments))
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                Some(path.display().to_string())
            }
            None => None,
        };
        matches.push(MatchJson {
            name: c.name.clone(),
            family: c.family.to_string(),
            size: c.algebra.n(),
            file,
        });
    }
    let report = SearchJson {
        predicate: pred.to_string(),
        family: family.name().to_string(),
        max_size: args.max_size,
        seed: args.seed,
        examined: candidates.len(),
        matches,
    };
    let text = if as_json {
        json(&report)
    } else {
        let mut s = String::new();
        for m in &report.matches {
            let file = m.file.as_ref().map(|f| format!(" -> {f}")).unwrap_or_default();
            let _ = writeln!(s, "{} ({} elements, {}){file}", m.name, m.size, m.family);
        }
        let _ = writeln!(
            s,
            "{} of {} candidates satisfy {}",
            report.matches.len(),
            report.examined,
            report.predicate
        );
        s
    };
    Ok(Output::ok(text))
}

// ---------------------------------------------------------------------------
// catalog and list

#[derive(Debug, Serialize)]
struct CatalogRowJson {
    name: String,
    size: usize,
    description: String,
    disputed: Vec<(String, bool)>,
}

fn catalog_cmd(args: &CatalogArgs, as_json: bool) -> Result<Output, CliError> {
    let cat = catalog();
    let Some(name) = &args.name else {
        let rows: Vec<CatalogRowJson> = cat
            .iter()
            .map(|e| CatalogRowJson {
                name: e.name.clone(),
                size: e.algebra.n(),
                description: e.description.clone(),
                disputed: e.disputed_status().into_iter().map(|(a, ok)| (a.to_string(), ok)).collect(),
            })
            .collect();
        let text = if as_json {
            json(&rows)
        } else {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "{:<8} {:>3}  {}", r.name, r.size, r.description);
                for (a, ok) in &r.disputed {
                    let _ = writeln!(s, "{:<14}disputed claim {a}: {}", "", if *ok { "confirmed" } else { "refuted" });
                }
            }
            s
        };
        return Ok(Output::ok(text));
    };
    let entry = cat.get(name.strip_prefix(crate::source::CATALOG_SCHEME).unwrap_or(name)).ok_or_else(|| {
        CliError::Usage(format!("unknown catalog entry `{name}`; known entries: {}", cat.names().join(", ")))
    })?;
    let file = algfile::render(&entry.algebra, &[format!("{}: {}", entry.name, entry.description)]);
    match &args.out {
        Some(p) => {
            fs::write(p, &file).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(Output::ok(format!("wrote {}: {} ({} elements)\n", p.display(), entry.name, entry.algebra.n())))
        }
        None => Ok(Output::ok(file)),
    }
}

#[derive(Debug, Serialize)]
struct ListRowJson {
    name: String,
    description: String,
}

fn list(what: ListArg, as_json: bool) -> Result<Output, CliError> {
    let rows: Vec<ListRowJson> = match what {
        ListArg::Suites => SuiteRegistry::standard()
            .iter()
            .map(|s| ListRowJson {
                name: s.name().to_string(),
                description: format!("{} (default max size {})", s.description(), s.default_max_size()),
            })
            .collect(),
        ListArg::Families => FamilyRegistry::standard()
            .iter()
            .map(|f| ListRowJson {
                name: f.name().to_string(),
                description: f.description().to_string(),
            })
            .collect(),
        ListArg::Atoms => AtomRegistry::standard()
            .iter()
            .map(|a| {
                let aliases = a.aliases();
                let description = if aliases.is_empty() {
                    a.description()
                } else {
                    format!("{} (also: {})", a.description(), aliases.join(", "))
                };
                ListRowJson { name: a.name(), description }
            })
            .collect(),
        ListArg::Identities => NamedIdentityLibrary::standard()
            .iter()
            .map(|i| ListRowJson {
                name: i.title().to_string(),
                description: i.to_string(),
            })
            .collect(),
    };
    let text = if as_json {
        json(&rows)
    } else {
        rows.iter().map(|r| format!("{:<18} {}\n", r.name, r.description)).collect()
    };
    Ok(Output::ok(text))
}
