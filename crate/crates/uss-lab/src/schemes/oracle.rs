//! Seeded lazy random oracle with a reprogramming hook.
//!
//! Outputs are sampled on first query from the oracle's own RNG, so two
//! oracles with the same seed and query order agree bit for bit.
//! Reprogramming overwrites exactly one input point and is logged together
//! with the experiment phase in which it happened.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};

/// Experiment phase recorded next to each reprogramming event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OraclePhase {
    SharePhase,
    BeforeChallenge,
    ChallengePhase,
}

#[derive(Debug, Clone)]
pub struct ReprogramEvent {
    pub input: Bits,
    pub new_output: Bits,
    pub phase: OraclePhase,
}

#[derive(Debug, Clone)]
pub struct RandomOracle {
    input_len: usize,
    output_len: usize,
    rng: ChaCha8Rng,
    table: BTreeMap<Bits, Bits>,
    query_log: Vec<Bits>,
    reprogram_log: Vec<ReprogramEvent>,
}

impl RandomOracle {
    pub fn new(input_len: usize, output_len: usize, seed: u64) -> Self {
        Self {
            input_len,
            output_len,
            rng: ChaCha8Rng::seed_from_u64(seed),
            table: BTreeMap::new(),
            query_log: Vec::new(),
            reprogram_log: Vec::new(),
        }
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn output_len(&self) -> usize {
        self.output_len
    }

    fn check_input(&self, input: &[bool]) -> Result<()> {
        if input.len() != self.input_len {
            return Err(Error::LengthMismatch {
                context: "oracle input",
                got: input.len(),
                expected: self.input_len,
            });
        }
        Ok(())
    }

    /// Query, lazily sampling unseen points. Repeated queries return
    /// identical answers.
    pub fn query(&mut self, input: &[bool]) -> Result<Bits> {
        self.check_input(input)?;
        self.query_log.push(input.to_vec());
        if let Some(out) = self.table.get(input) {
            return Ok(out.clone());
        }
        let out: Bits = (0..self.output_len).map(|_| self.rng.gen()).collect();
        self.table.insert(input.to_vec(), out.clone());
        Ok(out)
    }

    /// Peek without logging a protocol query (test instrumentation).
    pub fn peek(&self, input: &[bool]) -> Option<&Bits> {
        self.table.get(input)
    }

    /// Overwrite the value at exactly one input point.
    pub fn reprogram(&mut self, input: &[bool], new_output: &[bool], phase: OraclePhase) -> Result<()> {
        self.check_input(input)?;
        if new_output.len() != self.output_len {
            return Err(Error::LengthMismatch {
                context: "oracle reprogram output",
                got: new_output.len(),
                expected: self.output_len,
            });
        }
        self.table.insert(input.to_vec(), new_output.to_vec());
        self.reprogram_log.push(ReprogramEvent {
            input: input.to_vec(),
            new_output: new_output.to_vec(),
            phase,
        });
        Ok(())
    }

    pub fn query_log(&self) -> &[Bits] {
        &self.query_log
    }

    pub fn reprogram_log(&self) -> &[ReprogramEvent] {
        &self.reprogram_log
    }

    pub fn distinct_queries(&self) -> usize {
        let set: std::collections::BTreeSet<&Bits> = self.query_log.iter().collect();
        set.len()
    }

    /// Inputs where two oracle tables disagree (sampled-or-programmed rows
    /// only).
    pub fn table_diff(&self, other: &RandomOracle) -> Vec<Bits> {
        let keys: std::collections::BTreeSet<&Bits> =
            self.table.keys().chain(other.table.keys()).collect();
        keys.into_iter()
            .filter(|k| self.table.get(*k) != other.table.get(*k))
            .cloned()
            .collect()
    }

    /// All inputs enumerated in index order (for full-table adversaries).
    pub fn all_inputs(&self) -> impl Iterator<Item = Bits> + '_ {
        (0..1usize << self.input_len).map(|i| bits::index_to_bits(i, self.input_len))
    }
}
