//! A simulation laboratory for unclonable secret sharing (USS).
//!
//! The crate implements, at exactly-checkable register sizes:
//!
//! - an exact dense quantum engine ([`qsim`]): states, channels, POVMs,
//!   trace distance, Helstrom distinguishers and the pretty-good measurement;
//! - the classical Pauli-frame calculus for Clifford+T circuits ([`pauli`]),
//!   including the guess-gadget update function and its abort rule;
//! - regular, gate and port-based teleportation ([`teleport`]);
//! - the sharing schemes and compilers ([`schemes`]): basis-masked XOR
//!   sharing, cipher-chained sharing, the oracle-keyed scheme, the
//!   secret-sharing→encryption mask compiler and the pairwise collusion
//!   combinator, plus a toy conjugate-coding encryption and a seeded lazy
//!   random oracle with a reprogramming hook;
//! - cloning strategies and attacks ([`adversaries`]): measure-and-broadcast
//!   cloners, the teleport-and-guess attack on low-T reconstruction and the
//!   port-based teleportation attack, with entanglement-graph reporting;
//! - the security-game harness ([`games`]): indistinguishability and search
//!   games in exact or Monte-Carlo mode, the XOR trace-distance equality
//!   check, oracle-reprogramming detection bounds and the position
//!   verification reduction.
//!
//! Start from the `examples/` directory: each example is a runnable tour of
//! one capability. The `uss-lab` binary drives the same code for batch runs.

pub mod adversaries;
pub mod bits;
pub mod config;
pub mod error;
pub mod games;
pub mod pauli;
pub mod qsim;
pub mod report;
pub mod schemes;
pub mod teleport;

pub use error::{Error, Result};
