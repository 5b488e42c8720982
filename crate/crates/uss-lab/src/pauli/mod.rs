//! Classical Pauli-frame calculus for Clifford+T circuits.
//!
//! Tracks per-qubit quantum one-time-pad keys `(a, b)` through a circuit and
//! computes the final correction. The quantum one-time pad convention is
//! `X^a Z^b ρ Z^b X^a` (X outermost) everywhere in this crate; the teleport
//! module converts Bell outcomes into this convention.

pub mod circuit;
pub mod key;
pub mod update;

pub use circuit::{Circuit, Gate, GateKind};
pub use key::PauliKey;
pub use update::{update_function, update_gate, verify_update_identity, GateUpdate, UpdateOutcome};
