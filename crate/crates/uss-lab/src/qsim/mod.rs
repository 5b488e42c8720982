//! Exact finite-dimensional quantum mechanics on qubit registers.
//!
//! States, unitaries, channels, POVMs, measurements and distance measures,
//! all dense and double precision. Good for registers up to ~18 qubits for
//! pure states and ~10 qubits for density matrices.
//!
//! Conventions used everywhere in this crate:
//! - qubit 0 is the **most significant bit** of a basis index, so the basis
//!   state of a 2-qubit register with qubit 0 in `|1⟩` and qubit 1 in `|0⟩`
//!   has index `0b10`;
//! - structural invariants (trace, hermiticity, POVM completeness) hold to
//!   [`TOL_STRUCT`], optimization-derived values to [`TOL_OPT`].

pub mod channel;
pub mod distance;
pub mod gates;
pub mod linalg;
pub mod povm;
pub mod register;
pub mod state;

pub use channel::Channel;
pub use distance::{helstrom_distinguisher, pretty_good_measurement, trace_distance};
pub use povm::{measure, measure_branches, Povm};
pub use register::RegisterMap;
pub use state::{DensityMatrix, StateVector};

pub type C64 = num_complex::Complex64;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Tolerance for structural invariants (norms, traces, completeness).
pub const TOL_STRUCT: f64 = 1e-9;
/// Tolerance for values that come out of optimization or sampling.
pub const TOL_OPT: f64 = 1e-6;
/// Eigenvalue cutoff for pseudo-inverses in the pretty-good measurement.
pub const PGM_CUTOFF: f64 = 1e-12;
/// Hard cap on density-matrix registers.
pub const MAX_DENSITY_QUBITS: usize = 20;
/// Hard cap on state-vector registers.
pub const MAX_VECTOR_QUBITS: usize = 24;
