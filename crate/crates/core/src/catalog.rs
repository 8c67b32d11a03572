//! Built-in presentations with their expected statistics.
//!
//! The presentation files are embedded at compile time and also shipped as
//! loose files next to the crate sources.

use crate::presentation::GrayPresentation;
use crate::termination::TerminationStrategy;
use crate::text::{parse_presentation, ParseError};
use thiserror::Error;

/// Errors raised when loading a built-in presentation.
#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown built-in presentation `{0}`; available: {1}")]
    Unknown(String, String),
    #[error("built-in presentation `{0}` does not parse: {1}")]
    Parse(String, ParseError),
}

/// A built-in presentation and what is known about it.
#[derive(Debug, Clone)]
pub struct BuiltinEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub presentation: GrayPresentation,
    /// Number of critical branchings up to symmetry, when known.
    pub expected_critical: Option<usize>,
    /// The strategy expected to certify termination; `None` when every strategy refuses.
    pub expected_strategy: Option<TerminationStrategy>,
    /// Names of the tiles shipped with the file.
    pub tiles: Vec<String>,
}

struct Raw {
    name: &'static str,
    source: &'static str,
    expected_critical: Option<usize>,
    expected_strategy: Option<TerminationStrategy>,
}

const RAW: &[Raw] = &[
    Raw {
        name: "pseudomonoid",
        source: include_str!("../examples/pseudomonoid.gp"),
        expected_critical: Some(5),
        expected_strategy: Some(TerminationStrategy::Interpretation),
    },
    Raw {
        name: "pseudoadjunction",
        source: include_str!("../examples/pseudoadjunction.gp"),
        expected_critical: Some(2),
        expected_strategy: Some(TerminationStrategy::Connected),
    },
    Raw {
        name: "selfduality",
        source: include_str!("../examples/selfduality.gp"),
        expected_critical: None,
        expected_strategy: Some(TerminationStrategy::Connected),
    },
    Raw {
        name: "selfduality-q",
        source: include_str!("../examples/selfduality-q.gp"),
        expected_critical: None,
        expected_strategy: Some(TerminationStrategy::SelfDual),
    },
    Raw {
        name: "frobenius",
        source: include_str!("../examples/frobenius.gp"),
        expected_critical: Some(19),
        expected_strategy: None,
    },
];

/// Names of all built-in presentations.
pub fn list_builtins() -> Vec<&'static str> {
    RAW.iter().map(|r| r.name).collect()
}

/// Loads a built-in presentation by name.
pub fn get_builtin(name: &str) -> Result<BuiltinEntry, CatalogError> {
    let raw = RAW
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| CatalogError::Unknown(name.to_string(), list_builtins().join(", ")))?;
    let presentation =
        parse_presentation(raw.source).map_err(|e| CatalogError::Parse(name.to_string(), e))?;
    let tiles = presentation.tiles.iter().map(|t| t.name.clone()).collect();
    Ok(BuiltinEntry {
        name: raw.name,
        source: raw.source,
        presentation,
        expected_critical: raw.expected_critical,
        expected_strategy: raw.expected_strategy,
        tiles,
    })
}
