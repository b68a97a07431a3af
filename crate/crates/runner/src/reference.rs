//! Published table rows, embedded at build time.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RunError};

/// The checked-in reference file.
pub const REFERENCE_CSV: &str = include_str!("../data/reference.csv");

/// Marks rows whose published budget is far beyond a desk run.
pub const FULL_BUDGET: &str = "full-budget";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub table_id: String,
    pub alpha: Option<f64>,
    pub value: f64,
    pub error: Option<f64>,
    pub n_mc_millions: Option<f64>,
    pub note: String,
}

impl ReferenceRow {
    pub fn is_full_budget(&self) -> bool {
        self.note.split(';').any(|n| n.trim() == FULL_BUDGET)
    }

    /// Published call count, if any.
    pub fn calls(&self) -> Option<u64> {
        self.n_mc_millions.map(|m| (m * 1e6).round() as u64)
    }
}

pub fn load_reference() -> Result<Vec<ReferenceRow>> {
    parse_reference(REFERENCE_CSV)
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<ReferenceRow>, _>>()
        .map_err(|e| RunError::Reference(e.to_string()))
}

/// Rows of one table in file order.
pub fn table_rows<'a>(rows: &'a [ReferenceRow], table_id: &str) -> Vec<&'a ReferenceRow> {
    rows.iter().filter(|r| r.table_id == table_id).collect()
}

pub fn find_row<'a>(
    rows: &'a [ReferenceRow],
    table_id: &str,
    alpha: f64,
) -> Option<&'a ReferenceRow> {
    rows.iter()
        .find(|r| r.table_id == table_id && r.alpha == Some(alpha))
}
