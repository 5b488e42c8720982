//! Sharing schemes, encryption compilers and the random oracle.
//!
//! Every scheme implements [`UssScheme`]: exact enumeration of its sharing
//! randomness (`share_branches`), seeded sampling (`share`) and an exact
//! reconstruction distribution. Schemes whose reconstruction is expressible
//! as a Clifford+T circuit or as a POVM on the fully-quantum share encoding
//! expose those too; the attacks need them.

pub mod bb84;
pub mod chained;
pub mod circuit_scheme;
pub mod collusion;
pub mod encoded;
pub mod oracle;
pub mod pad;
pub mod qrom;
pub mod ue;
pub mod uss_to_ue;

pub use bb84::Bb84Scheme;
pub use chained::ChainedScheme;
pub use circuit_scheme::CircuitScheme;
pub use collusion::CollusionScheme;
pub use encoded::QuantumEncoded;
pub use oracle::RandomOracle;
pub use pad::PadScheme;
pub use qrom::QromScheme;
pub use ue::{ConjugateUe, UeCiphertext, UeKey, UeScheme};
pub use uss_to_ue::{MaskVariant, UssCompiledUe};

use std::collections::BTreeMap;

use rand::RngCore;
use serde::Serialize;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::Circuit;
use crate::qsim::distance::trace_norm;
use crate::qsim::{CMatrix, DensityMatrix, Povm, RegisterMap, StateVector};

pub type SecretMessage = Bits;

/// One party's share: classical bits and/or a quantum sub-register.
#[derive(Debug, Clone, Serialize)]
pub struct Share {
    pub party: usize,
    pub classical: Bits,
    /// Register label into the pack's map, if the share has a quantum part.
    pub quantum: Option<String>,
}

/// All shares of one sharing, with the joint quantum state.
#[derive(Debug, Clone)]
pub struct SharePack {
    pub scheme: String,
    pub shares: Vec<Share>,
    pub state: StateVector,
    pub regs: RegisterMap,
    /// Oracle rows this sharing touched, for self-contained reconstruction.
    pub oracle_rows: Vec<(Bits, Bits)>,
}

impl SharePack {
    pub fn share_for(&self, party: usize) -> Result<&Share> {
        self.shares
            .iter()
            .find(|s| s.party == party)
            .ok_or(Error::MissingShare(party))
    }

    /// Qubit indices of one party's quantum sub-register (empty if none).
    pub fn party_qubits(&self, party: usize) -> Result<Vec<usize>> {
        let share = self.share_for(party)?;
        match &share.quantum {
            Some(label) => self.regs.qubits(label),
            None => Ok(Vec::new()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.shares {
            if s.classical.is_empty() && s.quantum.is_none() {
                return Err(Error::InvalidState(format!(
                    "share {} has neither classical nor quantum content",
                    s.party
                )));
            }
        }
        if self.regs.num_qubits() != self.state.num_qubits() {
            return Err(Error::DimensionMismatch {
                context: "register map vs state",
                got: self.regs.num_qubits(),
                expected: self.state.num_qubits(),
            });
        }
        Ok(())
    }

    /// Encode every classical share bit as a computational-basis qubit, in
    /// party order, after that party's quantum part. Returns the state and
    /// per-party qubit lists.
    pub fn encode_all_quantum(&self) -> Result<(StateVector, Vec<Vec<usize>>)> {
        let mut state = self.state.clone();
        let mut per_party = Vec::new();
        let mut appended = self.state.num_qubits();
        for share in &self.shares {
            let mut qubits = match &share.quantum {
                Some(label) => self.regs.qubits(label)?,
                None => Vec::new(),
            };
            if !share.classical.is_empty() {
                state = state.tensor(&StateVector::from_bits(&share.classical))?;
                qubits.extend(appended..appended + share.classical.len());
                appended += share.classical.len();
            }
            per_party.push(qubits);
        }
        Ok((state, per_party))
    }

    /// Debug dump: per-party classical bits hex-encoded plus the joint state
    /// as `[re, im]` pairs.
    pub fn debug_dump(&self) -> serde_json::Value {
        serde_json::json!({
            "scheme": self.scheme,
            "shares": self.shares.iter().map(|s| serde_json::json!({
                "party": s.party,
                "classical_hex": bits::to_hex(&s.classical),
                "classical_bits": s.classical.len(),
                "quantum": s.quantum,
            })).collect::<Vec<_>>(),
            "state": self.state.dump_json(),
        })
    }
}

/// A classical-quantum hybrid distribution: classical bit strings paired
/// with (unnormalized) quantum blocks whose traces are the branch masses.
#[derive(Debug, Clone)]
pub struct CqState {
    quantum_qubits: usize,
    branches: BTreeMap<Bits, CMatrix>,
}

impl CqState {
    pub fn new(quantum_qubits: usize) -> Self {
        Self {
            quantum_qubits,
            branches: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, classical: Bits, weight: f64, dm: &DensityMatrix) {
        debug_assert_eq!(dm.num_qubits(), self.quantum_qubits);
        let scaled = dm.matrix() * crate::qsim::C64::from(weight);
        self.branches
            .entry(classical)
            .and_modify(|m| *m += &scaled)
            .or_insert(scaled);
    }

    pub fn total_mass(&self) -> f64 {
        self.branches
            .values()
            .map(|m| m.diagonal().sum().re)
            .sum()
    }

    /// Statistical distance `½ Σ_c ‖ρ_c − σ_c‖₁` between two hybrids.
    pub fn distance(&self, other: &Self) -> f64 {
        let dim = 1usize << self.quantum_qubits;
        let zero = CMatrix::zeros(dim, dim);
        let keys: std::collections::BTreeSet<&Bits> =
            self.branches.keys().chain(other.branches.keys()).collect();
        let mut total = 0.0;
        for key in keys {
            let a = self.branches.get(key).unwrap_or(&zero);
            let b = other.branches.get(key).unwrap_or(&zero);
            total += trace_norm(&(a - b));
        }
        total / 2.0
    }
}

/// An unclonable-secret-sharing scheme at exactly simulable sizes.
pub trait UssScheme {
    fn id(&self) -> String;
    fn parties(&self) -> usize;
    fn message_bits(&self) -> usize;

    /// Exact enumeration of the sharing randomness: `(probability, pack)`
    /// pairs summing to 1.
    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>>;

    /// Sample one sharing.
    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack>;

    /// Exact output distribution of honest reconstruction on a pack.
    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>>;

    /// Reconstruction as a Clifford+T circuit on the fully-quantum share
    /// encoding (measure all qubits, output the first `message_bits` bits).
    fn reconstruct_circuit(&self) -> Option<Circuit> {
        None
    }

    /// Reconstruction as a POVM on the fully-quantum share encoding, with
    /// outcome labels equal to the message index.
    fn reconstruct_povm(&self) -> Option<Povm> {
        None
    }
}

/// Exact mixed view of a party subset over the scheme's randomness:
/// concatenated classical bits (party order) plus the reduced joint quantum
/// state of the subset's registers.
pub fn subset_view(scheme: &dyn UssScheme, m: &Bits, subset: &[usize]) -> Result<CqState> {
    let branches = scheme.share_branches(m)?;
    let mut view: Option<CqState> = None;
    for (p, pack) in &branches {
        let mut classical = Vec::new();
        let mut qubits = Vec::new();
        for &party in subset {
            let share = pack.share_for(party)?;
            classical.extend_from_slice(&share.classical);
            qubits.extend(pack.party_qubits(party)?);
        }
        let reduced = pack.state.reduced_density(&qubits)?;
        let view = view.get_or_insert_with(|| CqState::new(qubits.len()));
        view.add(classical, *p, &reduced);
    }
    view.ok_or_else(|| Error::InvalidState("scheme produced no branches".into()))
}

/// Largest deviation from perfect hiding over all strict share subsets:
/// `max_subset distance(view(m0), view(m1))`. Exactly 0 means every strict
/// subset's distribution is identical for the two messages.
pub fn hiding_distance(scheme: &dyn UssScheme, m0: &Bits, m1: &Bits) -> Result<f64> {
    let n = scheme.parties();
    let mut worst: f64 = 0.0;
    for mask in 1..(1usize << n) - 1 {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let v0 = subset_view(scheme, m0, &subset)?;
        let v1 = subset_view(scheme, m1, &subset)?;
        worst = worst.max(v0.distance(&v1));
    }
    Ok(worst)
}

/// Trace distance between the honest joint state and the product of party
/// marginals, maximized over share branches. Zero for unentangled shares.
pub fn product_structure_defect(scheme: &dyn UssScheme, m: &Bits) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (_, pack) in scheme.share_branches(m)? {
        if pack.state.num_qubits() == 0 {
            continue;
        }
        let mut product: Option<DensityMatrix> = None;
        let mut order: Vec<usize> = Vec::new();
        for share in &pack.shares {
            let qubits = pack.party_qubits(share.party)?;
            if qubits.is_empty() {
                continue;
            }
            let marginal = pack.state.reduced_density(&qubits)?;
            product = Some(match product {
                None => marginal,
                Some(p) => p.tensor(&marginal)?,
            });
            order.extend(qubits);
        }
        if let Some(product) = product {
            let joint = pack.state.reduced_density(&order)?;
            worst = worst.max(crate::qsim::trace_distance(&joint, &product)?);
        }
    }
    Ok(worst)
}

/// XOR-split a message into `pieces` random strings recombining to `m`.
pub fn xor_split(m: &Bits, pieces: usize, rng: &mut dyn RngCore) -> Vec<Bits> {
    let mut out = Vec::with_capacity(pieces);
    let mut acc = m.clone();
    for _ in 0..pieces - 1 {
        let piece: Bits = (0..m.len()).map(|_| (rng.next_u32() & 1) == 1).collect();
        acc = bits::xor(&acc, &piece);
        out.push(piece);
    }
    out.push(acc);
    out
}
