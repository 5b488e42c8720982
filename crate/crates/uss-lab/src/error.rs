//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register capacity exceeded: {qubits} qubits requested, cap is {max}")]
    Capacity { qubits: usize, max: usize },

    #[error("dimension mismatch: {context} (got {got}, expected {expected})")]
    DimensionMismatch {
        context: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("duplicate target qubit {0}")]
    DuplicateTarget(usize),

    #[error("qubit index {index} out of range for {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid register map: {0}")]
    InvalidRegisterMap(String),

    #[error("length mismatch: {context} (got {got}, expected {expected})")]
    LengthMismatch {
        context: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("missing share for party {0}")]
    MissingShare(usize),

    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("circuit parse error at line {line}: {message}")]
    CircuitParse { line: usize, message: String },

    #[error("exact enumeration needs {0} branches, above the 2^20 cap; use Monte Carlo mode")]
    EnumerationOverflow(u64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
