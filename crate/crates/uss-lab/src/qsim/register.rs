//! Named qubit registers over a contiguous index space.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// Maps register names to contiguous qubit ranges. Ranges must be disjoint
/// and together cover `[0, num_qubits)`.
#[derive(Debug, Clone, Serialize)]
pub struct RegisterMap {
    num_qubits: usize,
    entries: Vec<(String, Range<usize>)>,
}

impl RegisterMap {
    pub fn new(entries: Vec<(String, Range<usize>)>) -> Result<Self> {
        let mut sorted: Vec<&Range<usize>> = entries
            .iter()
            .map(|(_, r)| r)
            .filter(|r| !r.is_empty())
            .collect();
        sorted.sort_by_key(|r| r.start);
        let mut cursor = 0;
        for r in sorted {
            if r.start != cursor {
                return Err(Error::InvalidRegisterMap(format!(
                    "ranges must be disjoint and cover the register; gap or overlap at qubit {cursor}"
                )));
            }
            cursor = r.end;
        }
        Ok(Self {
            num_qubits: cursor,
            entries,
        })
    }

    /// Build from consecutive `(name, width)` pairs.
    pub fn from_widths(widths: &[(&str, usize)]) -> Self {
        let mut entries = Vec::new();
        let mut cursor = 0;
        for &(name, w) in widths {
            entries.push((name.to_string(), cursor..cursor + w));
            cursor += w;
        }
        Self {
            num_qubits: cursor,
            entries,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn range(&self, name: &str) -> Result<Range<usize>> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r.clone())
            .ok_or_else(|| Error::InvalidRegisterMap(format!("no register named {name}")))
    }

    pub fn qubits(&self, name: &str) -> Result<Vec<usize>> {
        Ok(self.range(name)?.collect())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }
}
