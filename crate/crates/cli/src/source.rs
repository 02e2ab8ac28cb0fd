//! Resolving algebra arguments: `catalog:NAME` URIs or file paths.

use std::fs;
use std::path::Path;

use pbz_core::catalog::catalog;
use pbz_core::structures::BZAlgebra;

use crate::algfile::{self, AlgebraFile};
use crate::error::CliError;

/// URI prefix addressing built-in catalog entries.
pub const CATALOG_SCHEME: &str = "catalog:";

/// A loaded algebra and the name it was addressed by.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: String,
    pub algebra: BZAlgebra,
    pub comments: Vec<String>,
}

/// Loads `catalog:NAME` from the catalog, anything else as an algebra file.
pub fn load(source: &str) -> Result<Loaded, CliError> {
    if let Some(name) = source.strip_prefix(CATALOG_SCHEME) {
        let entry = catalog().get(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown catalog entry `{name}`; known entries: {}",
                catalog().names().join(", ")
            ))
        })?;
        return Ok(Loaded {
            name: entry.name.clone(),
            algebra: entry.algebra.clone(),
            comments: vec![entry.description.clone()],
        });
    }
    let text = fs::read_to_string(Path::new(source)).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    let AlgebraFile { comments, algebra } =
        algfile::parse(&text).map_err(|e| CliError::from(e).with_context(source))?;
    Ok(Loaded {
        name: source.to_string(),
        algebra,
        comments,
    })
}

impl CliError {
    /// Prefixes the message with `context: `.
    pub fn with_context(self, context: &str) -> CliError {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{context}: {m}")),
            CliError::Parse(m) => CliError::Parse(format!("{context}: {m}")),
            CliError::Construction(m) => CliError::Construction(format!("{context}: {m}")),
            CliError::SizeLimit(m) => CliError::SizeLimit(format!("{context}: {m}")),
            CliError::Io(m) => CliError::Io(format!("{context}: {m}")),
        }
    }
}
