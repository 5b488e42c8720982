//! Result records: versioned JSON and plain CSV tables. Identical inputs
//! produce byte-identical files.

use serde::Serialize;

use crate::error::Result;
use crate::games::GameResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(body: T) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            body,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(format!("{}\n", serde_json::to_string_pretty(self)?))
    }
}

/// One game record as a CSV line under a fixed header.
pub fn game_csv_header() -> &'static str {
    "schema,game,scheme,strategy,mode,win_probability,stderr,baseline,advantage,components,seed\n"
}

pub fn game_csv_row(r: &GameResult) -> String {
    format!(
        "{},{},{},{},{},{:.12},{:.12},{:.12},{:.12},{},{}\n",
        SCHEMA_VERSION,
        r.game,
        r.scheme,
        r.strategy,
        r.mode,
        r.win_probability,
        r.stderr,
        r.baseline,
        r.advantage,
        r.components.map_or(String::from("-"), |c| c.to_string()),
        r.seed.map_or(String::from("-"), |s| s.to_string()),
    )
}

/// A generic CSV table with a fixed column set.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
