use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;

use ybe_core::brace::{BraceTables, BraceViolation, SkewBrace};
use ybe_core::solution::{FiniteSolution, SolutionTables, SolutionViolation};
use ybe_core::union::{AbelianUnion, UnionTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A parsed but not yet verified input file.
pub enum Document {
    Solution(SolutionTables),
    Brace(BraceTables),
    Union(UnionTables),
}

/// Any verified object, or the reason it failed.
pub enum Checked {
    Solution(FiniteSolution),
    Brace(SkewBrace),
    Union(AbelianUnion),
    BadSolution(SolutionViolation),
    BadBrace(BraceViolation),
    BadUnion(String),
}

fn has_keys(v: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| v.get(k).is_some())
}

pub fn read_document(path: &Path, format: Format) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let what = || format!("{}", path.display());
    match format {
        Format::Text => Ok(Document::Solution(
            SolutionTables::parse_text(&text).with_context(what)?,
        )),
        Format::Json => {
            let v: Value = serde_json::from_str(&text).with_context(what)?;
            if has_keys(&v, &["sigma", "tau"]) {
                Ok(Document::Solution(serde_json::from_value(v).with_context(what)?))
            } else if has_keys(&v, &["dot", "circle"]) {
                Ok(Document::Brace(serde_json::from_value(v).with_context(what)?))
            } else if has_keys(&v, &["groups", "C", "D"]) {
                Ok(Document::Union(serde_json::from_value(v).with_context(what)?))
            } else {
                bail!("{}: expected keys sigma/tau, dot/circle or groups/C/D", path.display())
            }
        }
    }
}

impl Document {
    pub fn check(self) -> Checked {
        match self {
            Document::Solution(t) => match FiniteSolution::verify(t) {
                Ok(s) => Checked::Solution(s),
                Err(v) => Checked::BadSolution(v),
            },
            Document::Brace(t) => match SkewBrace::try_from(t) {
                Ok(b) => Checked::Brace(b),
                Err(v) => Checked::BadBrace(v),
            },
            Document::Union(t) => match AbelianUnion::try_from(t) {
                Ok(u) => Checked::Union(u),
                Err(e) => Checked::BadUnion(e.to_string()),
            },
        }
    }
}
