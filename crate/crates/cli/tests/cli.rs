//! End-to-end tests of the `pbz` binary: documented command examples,
//! file round trips and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

use pbz_cli::algfile;
use pbz_core::catalog::catalog;
use pbz_core::congruence::congruence_lattice;
use pbz_core::signature::Level;
use pbz_core::subalg::{isomorphic, lattices_isomorphic};
use pbz_core::sums::chain;
use pbz_cli::suites::{boolean_lattice, plus_top};

fn pbz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbz")).args(args).output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn read_alg(p: &Path) -> pbz_core::structures::BZAlgebra {
    algfile::parse(&std::fs::read_to_string(p).unwrap()).unwrap().algebra
}

#[test]
fn check_m3_wsdm_fails_with_witness() {
    let o = pbz(&["check", "catalog:M3", "--identity", "WSDM"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("WSDM: FAIL"), "{out}");
    assert!(out.contains("x=b, y=a: 1 != a"), "{out}");
}

#[test]
fn check_k_identities_in_order() {
    let o = pbz(&["check", "catalog:K", "--identity", "S2", "S3", "J2"]);
    assert_eq!(o.status.code(), Some(1));
    let verdicts: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("S2:") || l.starts_with("S3:") || l.starts_with("J2:"))
        .map(|l| l.split_whitespace().take(2).collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(verdicts, ["S2: PASS", "S3: PASS", "J2: FAIL"]);
}

#[test]
fn check_passing_identities_and_expressions_exit_zero() {
    let o = pbz(&["check", "catalog:D3", "--identity", "SDM", "x ^ x' <= y v y'", "--sets", "--axioms"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("S = {0, 2}") || out.contains("S = {"), "{out}");
    assert!(out.contains("axiom "), "{out}");
}

#[test]
fn check_d5_irreducibility() {
    let o = pbz(&["check", "catalog:D5", "--irreducibility", "--level", "bz"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("SI: true"), "{out}");
    assert!(out.contains("simple: false"), "{out}");
}

#[test]
fn check_json_is_stable() {
    let a = stdout(&pbz(&["--json", "check", "catalog:L7", "--identity", "J1", "S3", "--sets", "--irreducibility"]));
    let b = stdout(&pbz(&["check", "catalog:L7", "--identity", "J1", "S3", "--sets", "--irreducibility", "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["identities"][0]["holds"], false);
    assert_eq!(v["identities"][0]["witness"]["x"], "u");
    assert_eq!(v["identities"][0]["witness"]["y"], "t");
    assert_eq!(v["identities"][1]["holds"], true);
}

#[test]
fn construct_horizontal_gives_m3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m3.alg");
    let o = pbz(&["construct", "--horizontal", "catalog:MO1", "catalog:D3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let a = read_alg(&out);
    assert!(isomorphic(&a, &catalog().get("M3").unwrap().algebra).unwrap());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# construction: horizontal catalog:MO1 catalog:D3"), "{text}");
    assert!(text.contains("# glued:"), "{text}");
    // The constructed sum is simple.
    let c = pbz(&["con", out.to_str().unwrap(), "--level", "bz"]);
    assert!(stdout(&c).contains("|Con| = 2"), "{}", stdout(&c));
}

#[test]
fn construct_chain_and_mo() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d7.alg");
    assert_eq!(pbz(&["construct", "--chain", "7", "-o", out.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(read_alg(&out), chain(7));
    let o = pbz(&["construct", "--mo", "2"]);
    let a = algfile::parse(&stdout(&o)).unwrap().algebra;
    assert!(isomorphic(&a, &catalog().get("MO2").unwrap().algebra).unwrap());
}

#[test]
fn construct_canonical_aol_has_eight_elements() {
    let o = pbz(&["construct", "--canonical-aol", "catalog:D2", "catalog:MO2"]);
    assert_eq!(o.status.code(), Some(0));
    let a = algfile::parse(&stdout(&o)).unwrap().algebra;
    assert_eq!(a.n(), 8);
    assert!(isomorphic(&a, &catalog().get("D2MO2D2").unwrap().algebra).unwrap());
}

#[test]
fn construct_ordinal_and_product() {
    let o = pbz(&["construct", "--ordinal", "catalog:D2", "catalog:D3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(isomorphic(&algfile::parse(&stdout(&o)).unwrap().algebra, &chain(4)).unwrap());
    let o = pbz(&["construct", "--product", "catalog:D2", "catalog:D3"]);
    assert_eq!(algfile::parse(&stdout(&o)).unwrap().algebra.n(), 6);
}

#[test]
fn construct_errors_propagate() {
    // M3 with every atom fixed by the involution is not pseudo-Kleene, so it
    // cannot be the middle of a canonical antiortholattice.
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("fixed.alg");
    std::fs::write(&k, "pbz-alg v1\nuniverse 5\ncovers: 0<1 0<2 0<3 1<4 2<4 3<4\ninvolution: 0->4 1->1 2->2 3->3 4->0\n").unwrap();
    let o = pbz(&["construct", "--canonical-aol", "catalog:D2", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn con_chain_shape_tags() {
    let o = pbz(&["con", "catalog:D6", "--level", "bz"]);
    let out = stdout(&o);
    assert!(out.contains("|Con| = 5"), "{out}");
    assert!(out.contains("shape: D2^2 (+) D2"), "{out}");
    let c = congruence_lattice(&chain(6), Level::Bz).unwrap().lattice().unwrap();
    assert!(lattices_isomorphic(&c, &plus_top(&boolean_lattice(2))).unwrap());
    let o = pbz(&["con", "catalog:D1"]);
    assert!(stdout(&o).contains("|Con| = 1"));
}

#[test]
fn con_dot_output() {
    let out = stdout(&pbz(&["con", "catalog:D4", "--level", "bi", "--report", "dot"]));
    assert!(out.starts_with("digraph Con {"), "{out}");
    assert_eq!(out.matches(" -> ").count(), 4, "{out}");
}

#[test]
fn search_simple_sdm_antiortholattices() {
    let o = pbz(&["--json", "search", "--predicate", "SDM & AOL & simple", "--max-size", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["matches"].as_array().unwrap().iter().map(|m| m["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["D1", "D2", "D3"]);
}

#[test]
fn search_pbz_not_pseudo_kleene_is_empty() {
    let out = stdout(&pbz(&["search", "--predicate", "PBZ & !pseudokleene", "--max-size", "10"]));
    assert!(out.starts_with("0 of "), "{out}");
}

#[test]
fn search_j1_not_j2_in_horizontal_sums_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = pbz(&[
        "--json",
        "search",
        "--predicate",
        "J1 & !J2",
        "--family",
        "hsum",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let matches = v["matches"].as_array().unwrap();
    assert!(!matches.is_empty());
    let k = &catalog().get("K").unwrap().algebra;
    let mut found_k_like = false;
    for m in matches {
        let a = read_alg(Path::new(m["file"].as_str().unwrap()));
        found_k_like |= isomorphic(&a, k).unwrap();
    }
    assert!(found_k_like, "{matches:?}");
    assert!(matches.iter().any(|m| m["name"] == "MO1 ⊞ (D2 × D3)"), "{matches:?}");
    let again = stdout(&pbz(&["--json", "search", "--predicate", "J1 & !J2", "--family", "hsum", "--out-dir", dir.path().to_str().unwrap()]));
    assert_eq!(stdout(&o), again);
}

#[test]
fn verify_suites_report_and_exit() {
    let o = pbz(&["verify", "--suite", "chain-congruences", "--max-size", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("suite chain-congruences (max size 9, seed 0): PASS"));
    let o = pbz(&["--json", "verify", "--suite", "exfail-table"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["checks"].as_array().unwrap().len(), 13);
    for s in ["charg", "axhsum"] {
        assert_eq!(pbz(&["verify", "--suite", s, "--max-size", "12"]).status.code(), Some(0), "{s}");
    }
}

#[test]
fn catalog_export_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog().iter() {
        let path = dir.path().join(format!("{}.alg", e.name));
        let o = pbz(&["catalog", &e.name, "-o", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        let f = algfile::parse(&text).unwrap();
        assert_eq!(f.algebra, e.algebra, "{}", e.name);
        assert_eq!(algfile::render(&f.algebra, &f.comments), text);
        let from_file = stdout(&pbz(&["--json", "check", path.to_str().unwrap(), "--sets"]));
        let from_catalog = stdout(&pbz(&["--json", "check", &format!("catalog:{}", e.name), "--sets"]));
        let strip = |s: &str| {
            let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
            v["algebra"] = serde_json::Value::Null;
            v
        };
        assert_eq!(strip(&from_file), strip(&from_catalog), "{}", e.name);
    }
    let listing = stdout(&pbz(&["catalog"]));
    assert!(listing.contains("disputed claim"), "{listing}");
}

#[test]
fn list_registries() {
    let out = stdout(&pbz(&["list", "suites"]));
    assert!(out.lines().any(|l| l.starts_with("mainthaol")));
    let out = stdout(&pbz(&["list", "families"]));
    assert!(out.lines().any(|l| l.starts_with("hsum")));
    let out = stdout(&pbz(&["list", "atoms"]));
    assert!(out.lines().any(|l| l.starts_with("SDM")));
    let out = stdout(&pbz(&["list", "identities"]));
    assert!(out.lines().any(|l| l.starts_with("J2")));
}

#[test]
fn exit_codes() {
    // Usage errors: unknown flag, unknown suite, unknown catalog entry, bad predicate.
    assert_eq!(pbz(&["check"]).status.code(), Some(2));
    assert_eq!(pbz(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(pbz(&["check", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(pbz(&["search", "--predicate", "SDM &"]).status.code(), Some(2));
    assert_eq!(pbz(&["construct", "--chain", "3", "--mo", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "pbz-alg v1\nuniverse 2\ncovers: 0<1\ninvolution: 0->1\n").unwrap();
    let o = pbz(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    // Size limits.
    let big = dir.path().join("big.alg");
    std::fs::write(&big, "pbz-alg v1\nuniverse 100000\n").unwrap();
    assert_eq!(pbz(&["check", big.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(pbz(&["construct", "--chain", "100000"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_pbz"))
        .args(["check", "catalog:D9", "--identity", "J2"])
        .env("PBZ_MAX_EVALS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
