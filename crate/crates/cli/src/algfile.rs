//! The plain-text algebra file format.
//!
//! ```text
//! pbz-alg v1
//! # free-form comment lines
//! universe 5
//! labels: 0 b a a' 1
//! covers: 0<b 0<a 0<a' b<1 a<1 a'<1
//! involution: 0->1 b->b a->a' a'->a 1->0
//! brouwer: trivial
//! ```
//!
//! * The header line comes first (comments and blank lines may precede it).
//! * `universe N` is required and comes before every other directive.
//! * `labels:` is optional. Labels are whitespace-free, unique, and may not
//!   contain `#`, `<` or `->`.
//! * `covers:`, `involution:` and `brouwer:` may be repeated; their entries
//!   accumulate. Elements are named by label when one matches, otherwise by
//!   index.
//! * `involution:` must define the complement of every element.
//! * `brouwer:` is either `trivial` or a total map; it defaults to `trivial`.
//! * `#` starts a comment. Whole-line comments are kept (in order) and
//!   written back; trailing comments are dropped.
//!
//! [`render`] writes the canonical form: header, comments, `universe`,
//! `labels` (when the lattice has labels), all covers on one line, the full
//! involution, then `brouwer: trivial` or the full map. Reading a canonical
//! file and writing it again reproduces it byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;

use pbz_core::order::{lattice_from_covers, CoverList, Elem};
use pbz_core::structures::BZAlgebra;
use thiserror::Error;

/// First line of every algebra file.
pub const HEADER: &str = "pbz-alg v1";

/// Largest universe the reader accepts.
pub const MAX_UNIVERSE: usize = 4096;

/// Errors raised while reading an algebra file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgFileError {
    /// A syntax or validation error, located at a 1-based line.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    /// The declared universe is larger than [`MAX_UNIVERSE`].
    #[error("line {line}: universe of {size} elements exceeds the limit of {limit}")]
    SizeLimit { line: usize, size: usize, limit: usize },
}

/// A parsed file: the algebra and its whole-line comments.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub comments: Vec<String>,
    pub algebra: BZAlgebra,
}

fn syntax(line: usize, message: impl Into<String>) -> AlgFileError {
    AlgFileError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Raw {
    universe: Option<(usize, usize)>,
    labels: Option<(usize, Vec<String>)>,
    covers: Vec<(usize, String, String)>,
    covers_line: Option<usize>,
    involution: Vec<(usize, String, String)>,
    involution_line: Option<usize>,
    brouwer_trivial: Option<usize>,
    brouwer: Vec<(usize, String, String)>,
    brouwer_line: Option<usize>,
}

fn split_map(line: usize, tok: &str) -> Result<(String, String), AlgFileError> {
    match tok.split_once("->") {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(syntax(line, format!("expected `x->y`, found `{tok}`"))),
    }
}

fn split_cover(line: usize, tok: &str) -> Result<(String, String), AlgFileError> {
    match tok.split_once('<') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('<') => Ok((a.to_string(), b.to_string())),
        _ => Err(syntax(line, format!("expected `x<y`, found `{tok}`"))),
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(['#', '<', ':']) && !s.contains("->") && !s.chars().any(char::is_whitespace)
}

/// Parses an algebra file.
pub fn parse(text: &str) -> Result<AlgebraFile, AlgFileError> {
    let mut comments = Vec::new();
    let mut raw = Raw::default();
    let mut seen_header = false;
    let mut last_line = 0;
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = full.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !seen_header {
            if content != HEADER {
                return Err(syntax(line, format!("expected header `{HEADER}`, found `{content}`")));
            }
            seen_header = true;
            continue;
        }
        let (key, rest) = match content.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => match content.split_once(char::is_whitespace) {
                Some((k, r)) if k == "universe" => (k, r.trim()),
                _ => (content, ""),
            },
        };
        if key != "universe" && raw.universe.is_none() {
            return Err(syntax(line, "`universe N` must come before other directives"));
        }
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "universe" => {
                if raw.universe.is_some() {
                    return Err(syntax(line, "duplicate `universe` directive"));
                }
                let n: usize = match tokens.as_slice() {
                    [t] => t.parse().map_err(|_| syntax(line, format!("`{t}` is not a universe size")))?,
                    _ => return Err(syntax(line, "expected `universe N`")),
                };
                if n == 0 {
                    return Err(syntax(line, "the universe must not be empty"));
                }
                if n > MAX_UNIVERSE {
                    return Err(AlgFileError::SizeLimit {
                        line,
                        size: n,
                        limit: MAX_UNIVERSE,
                    });
                }
                raw.universe = Some((line, n));
            }
            "labels" => {
                if raw.labels.is_some() {
                    return Err(syntax(line, "duplicate `labels` directive"));
                }
                if let Some(bad) = tokens.iter().find(|t| !valid_label(t)) {
                    return Err(syntax(line, format!("invalid label `{bad}`")));
                }
                raw.labels = Some((line, tokens.iter().map(|s| s.to_string()).collect()));
            }
            "covers" => {
                raw.covers_line.get_or_insert(line);
                for t in tokens {
                    let (a, b) = split_cover(line, t)?;
                    raw.covers.push((line, a, b));
                }
            }
            "involution" => {
                raw.involution_line.get_or_insert(line);
                for t in tokens {
                    let (a, b) = split_map(line, t)?;
                    raw.involution.push((line, a, b));
                }
            }
            "brouwer" => {
                raw.brouwer_line.get_or_insert(line);
                if tokens == ["trivial"] {
                    if raw.brouwer_trivial.is_some() || !raw.brouwer.is_empty() {
                        return Err(syntax(line, "`brouwer: trivial` conflicts with another `brouwer` directive"));
                    }
                    raw.brouwer_trivial = Some(line);
                } else {
                    if raw.brouwer_trivial.is_some() {
                        return Err(syntax(line, "`brouwer: trivial` conflicts with another `brouwer` directive"));
                    }
                    for t in tokens {
                        let (a, b) = split_map(line, t)?;
                        raw.brouwer.push((line, a, b));
                    }
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(syntax(last_line.max(1), format!("missing header `{HEADER}`")));
    }
    let Some((uline, n)) = raw.universe else {
        return Err(syntax(last_line, "missing `universe` directive"));
    };
    build(raw, n, uline, last_line).map(|algebra| AlgebraFile { comments, algebra })
}

fn build(raw: Raw, n: usize, uline: usize, last_line: usize) -> Result<BZAlgebra, AlgFileError> {
    let mut names: HashMap<String, Elem> = HashMap::new();
    if let Some((line, labels)) = &raw.labels {
        if labels.len() != n {
            return Err(syntax(*line, format!("{} labels for a universe of {n}", labels.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if names.insert(l.clone(), i).is_some() {
                return Err(syntax(*line, format!("duplicate label `{l}`")));
            }
        }
    }
    let resolve = |line: usize, tok: &str| -> Result<Elem, AlgFileError> {
        if let Some(&i) = names.get(tok) {
            return Ok(i);
        }
        match tok.parse::<usize>() {
            Ok(i) if i < n => Ok(i),
            Ok(i) => Err(syntax(line, format!("element {i} is outside the universe of {n}"))),
            Err(_) => Err(syntax(line, format!("unknown element `{tok}`"))),
        }
    };
    let mut covers = Vec::with_capacity(raw.covers.len());
    for (line, a, b) in &raw.covers {
        covers.push((resolve(*line, a)?, resolve(*line, b)?));
    }
    let cline = raw.covers_line.unwrap_or(uline);
    let lat = lattice_from_covers(&CoverList::new(n, covers)).map_err(|e| syntax(cline, e.to_string()))?;
    let lat = match raw.labels {
        Some((line, labels)) => lat.with_labels(labels).map_err(|e| syntax(line, e.to_string()))?,
        None => lat,
    };
    let total_map = |entries: &[(usize, String, String)], what: &str, at: usize| -> Result<Vec<Elem>, AlgFileError> {
        let mut map = vec![None; n];
        for (line, a, b) in entries {
            let (x, y) = (resolve(*line, a)?, resolve(*line, b)?);
            match map[x] {
                Some(old) if old != y => {
                    return Err(syntax(*line, format!("{what} of `{a}` is defined twice")));
                }
                _ => map[x] = Some(y),
            }
        }
        map.iter()
            .enumerate()
            .map(|(x, v)| v.ok_or_else(|| syntax(at, format!("{what} of `{}` is not defined", lat.label(x)))))
            .collect()
    };
    let iline = raw.involution_line.unwrap_or(last_line);
    let inv = total_map(&raw.involution, "complement", iline)?;
    let brouwer = if raw.brouwer.is_empty() {
        None
    } else {
        Some(total_map(&raw.brouwer, "Brouwer complement", raw.brouwer_line.unwrap_or(last_line))?)
    };
    let alg = match brouwer {
        None => BZAlgebra::with_trivial_brouwer(lat, inv),
        Some(b) => BZAlgebra::new(lat, inv, b),
    };
    alg.map_err(|e| syntax(iline, e.to_string()))
}

/// Writes the canonical file for `a`, with `comments` as whole-line comments after the header.
pub fn render(a: &BZAlgebra, comments: &[String]) -> String {
    let lat = a.lat();
    let labelled = lat.labels().is_some();
    let name = |x: Elem| if labelled { a.label(x) } else { x.to_string() };
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for c in comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    let _ = writeln!(out, "universe {}", a.n());
    if let Some(labels) = lat.labels() {
        let _ = writeln!(out, "labels: {}", labels.join(" "));
    }
    let covers: Vec<String> = lat.covers().iter().map(|&(x, y)| format!("{}<{}", name(x), name(y))).collect();
    out.push_str(&directive("covers", &covers));
    let inv: Vec<String> = (0..a.n()).map(|x| format!("{}->{}", name(x), name(a.inv(x)))).collect();
    out.push_str(&directive("involution", &inv));
    if a.has_trivial_brouwer() {
        out.push_str("brouwer: trivial\n");
    } else {
        let br: Vec<String> = (0..a.n()).map(|x| format!("{}->{}", name(x), name(a.brouwer(x)))).collect();
        out.push_str(&directive("brouwer", &br));
    }
    out
}

fn directive(key: &str, items: &[String]) -> String {
    if items.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {}\n", items.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pbz_core::sums::{chain, mo};

    #[test]
    fn chain_round_trip() {
        let text = render(&chain(3), &[]);
        assert_eq!(
            text,
            "pbz-alg v1\nuniverse 3\ncovers: 0<1 1<2\ninvolution: 0->2 1->1 2->0\nbrouwer: trivial\n"
        );
        let back = parse(&text).unwrap();
        assert_eq!(back.algebra, chain(3));
        assert_eq!(render(&back.algebra, &back.comments), text);
    }

    #[test]
    fn labelled_round_trip_with_comments() {
        let a = mo(2).unwrap();
        let comments = vec!["two squares".to_string(), String::new()];
        let text = render(&a, &comments);
        let back = parse(&text).unwrap();
        assert_eq!(back.comments, comments);
        assert_eq!(back.algebra, a);
        assert_eq!(render(&back.algebra, &back.comments), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("pbz-alg v1\nuniverse 2\ncovers: 0<1\ninvolution: 0->1\n").unwrap_err();
        assert_eq!(e, syntax(4, "complement of `1` is not defined"));
        let e = parse("# c\n\npbz-alg v2\n").unwrap_err();
        assert!(matches!(e, AlgFileError::Syntax { line: 3, .. }));
        let e = parse("pbz-alg v1\nuniverse 99999\n").unwrap_err();
        assert!(matches!(e, AlgFileError::SizeLimit { line: 2, size: 99999, .. }));
        let e = parse("pbz-alg v1\nuniverse 2\ncovers: 0<1\ninvolution: 0->0 1->1\n").unwrap_err();
        assert!(matches!(e, AlgFileError::Syntax { line: 4, .. }));
        let e = parse("pbz-alg v1\nuniverse 2\ncovers: 0<7\n").unwrap_err();
        assert!(matches!(e, AlgFileError::Syntax { line: 3, .. }));
        let e = parse("pbz-alg v1\ncovers: 0<1\n").unwrap_err();
        assert!(matches!(e, AlgFileError::Syntax { line: 2, .. }));
        let e = parse("pbz-alg v1\nuniverse 2\nfoo: bar\n").unwrap_err();
        assert!(matches!(e, AlgFileError::Syntax { line: 3, .. }));
    }

    #[test]
    fn repeated_directives_accumulate() {
        let text = "pbz-alg v1\nuniverse 3 # a chain\ncovers: 0<1\ncovers: 1<2\ninvolution: 0->2 2->0\ninvolution: 1->1\n";
        let f = parse(text).unwrap();
        assert_eq!(f.algebra, chain(3));
        assert!(f.comments.is_empty());
    }
}
