//! Recorded expectations: expected densities per dimension and citations for
//! the closed-form identity checks, both read from JSON files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::kkw::{BoundaryDensity, DensityTerm};

/// File holding the expected densities of one dimension.
pub fn densities_file(n: usize) -> String {
    format!("densities_n{n}.json")
}

/// File holding the citations of the identity checks.
pub const CLOSED_FORMS_FILE: &str = "closed_forms.json";

/// Fixture directory shipped with the workspace.
pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Where an expectation comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub id: String,
    pub dimension: usize,
    pub equation: String,
    pub quote: String,
}

/// One expected density with its citation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub citation: Citation,
    pub density: BoundaryDensity,
}

#[derive(Deserialize)]
struct RawFixture {
    #[serde(flatten)]
    citation: Citation,
    density: Vec<DensityTerm>,
}

/// Expected densities of one dimension, in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureSet {
    pub entries: Vec<Fixture>,
}

impl FixtureSet {
    pub fn get(&self, id: &str) -> Option<&Fixture> {
        self.entries.iter().find(|f| f.citation.id == id)
    }
}

/// Citations of the identity checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CitationTable {
    pub entries: Vec<Citation>,
}

impl CitationTable {
    pub fn get(&self, id: &str, n: usize) -> Option<&Citation> {
        self.entries.iter().find(|c| c.id == id && c.dimension == n)
    }
}

fn entry_name(v: &Value, index: usize) -> String {
    v.get("id")
        .and_then(Value::as_str)
        .map(str::to_string)
        .unwrap_or_else(|| format!("#{index}"))
}

fn read_entries(path: &Path) -> Result<Vec<Value>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Fixture {
        entry: path.display().to_string(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Fixture {
        entry: path.display().to_string(),
        reason: format!("line {} column {}: {e}", e.line(), e.column()),
    })
}

fn check_citation(c: &Citation, name: &str) -> Result<()> {
    let missing = |field: &str| Error::Fixture {
        entry: name.to_string(),
        reason: format!("empty `{field}`"),
    };
    if c.equation.trim().is_empty() {
        return Err(missing("equation"));
    }
    if c.quote.trim().is_empty() {
        return Err(missing("quote"));
    }
    Ok(())
}

fn parse_entry<T: for<'de> Deserialize<'de>>(v: Value, name: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Fixture {
        entry: name.to_string(),
        reason: e.to_string(),
    })
}

/// Parses a density fixture file (`load_fixtures`). Every entry needs a
/// non-empty equation and quote; errors name the offending entry.
pub fn load_fixtures(path: &Path) -> Result<FixtureSet> {
    let mut entries = Vec::new();
    for (i, v) in read_entries(path)?.into_iter().enumerate() {
        let name = entry_name(&v, i);
        let raw: RawFixture = parse_entry(v, &name)?;
        check_citation(&raw.citation, &name)?;
        let density = BoundaryDensity::from_terms(&raw.density).map_err(|e| Error::Fixture {
            entry: name.clone(),
            reason: e.to_string(),
        })?;
        entries.push(Fixture {
            citation: raw.citation,
            density,
        });
    }
    Ok(FixtureSet { entries })
}

/// Parses the citation table of the identity checks.
pub fn load_citations(path: &Path) -> Result<CitationTable> {
    let mut entries = Vec::new();
    for (i, v) in read_entries(path)?.into_iter().enumerate() {
        let name = entry_name(&v, i);
        let c: Citation = parse_entry(v, &name)?;
        check_citation(&c, &name)?;
        entries.push(c);
    }
    Ok(CitationTable { entries })
}
