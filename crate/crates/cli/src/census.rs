use std::collections::BTreeMap;
use std::io::Write;

use anyhow::{ensure, Result};
use serde::Serialize;

use ybe_core::union::{count_by_orbit_type, AbelianUnion};

/// One census run: the canonical unions of size `n` and their tally.
#[derive(Debug, Serialize)]
pub struct CensusRecord {
    pub n: usize,
    pub count: usize,
    pub by_orbit_type: BTreeMap<String, usize>,
    #[serde(skip)]
    pub entries: Vec<AbelianUnion>,
}

impl CensusRecord {
    pub fn new(n: usize, entries: Vec<AbelianUnion>) -> Result<Self> {
        let by_orbit_type = count_by_orbit_type(&entries);
        let count = entries.len();
        ensure!(by_orbit_type.values().sum::<usize>() == count, "orbit-type tally does not add up");
        Ok(CensusRecord { n, count, by_orbit_type, entries })
    }

    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            summary: &'a CensusRecord,
        }
        serde_json::to_string(&Line { summary: self }).expect("summary serializes")
    }

    /// JSON-lines: one union per line, then the summary.
    pub fn write_lines(&self, out: &mut impl Write) -> Result<()> {
        for u in &self.entries {
            writeln!(out, "{}", serde_json::to_string(u)?)?;
        }
        writeln!(out, "{}", self.summary_json())?;
        Ok(())
    }
}
