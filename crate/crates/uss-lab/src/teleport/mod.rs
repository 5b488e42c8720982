//! Regular teleportation, gate teleportation and port-based teleportation.
//!
//! Bell outcomes are reported as [`PauliKey`]s in the crate's quantum
//! one-time-pad convention `X^a Z^b ρ Z^b X^a`: after a teleport with
//! outcome key `k`, applying `apply_qotp(remote, k)` recovers the source
//! state. The outcome-bit-to-key mapping was calibrated numerically against
//! that property once and frozen (`a` = bit-flip bit from the resource-half
//! measurement, `b` = phase bit from the source-qubit measurement).

pub mod port;

pub use port::{pbt_fidelity, port_teleport, PbtFidelity, PortEngine, PortOutcome, PortResource};

use rand::Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::pauli::PauliKey;
use crate::qsim::{gates, CMatrix, StateVector};

/// Outcome of teleporting a block of qubits: one `(a, b)` pad pair per qubit
/// and the indices of the register now holding the padded state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeleportOutcome {
    pub key: PauliKey,
    pub remote: Vec<usize>,
}

/// One exact teleportation branch. The post state keeps every qubit;
/// measured qubits (source and local resource halves) are collapsed.
#[derive(Debug, Clone)]
pub struct TeleportBranch {
    pub outcome: TeleportOutcome,
    pub probability: f64,
    pub post: StateVector,
}

/// `k` EPR pairs laid out `[locals..., remotes...]`.
pub fn epr_pairs(k: usize) -> StateVector {
    let mut amps = nalgebra::DVector::zeros(1usize << (2 * k));
    let d = 1usize << k;
    let w = crate::qsim::C64::from(1.0 / (d as f64).sqrt());
    for i in 0..d {
        amps[(i << k) | i] = w;
    }
    StateVector::from_raw(2 * k, amps)
}

/// A single resource pair `(I ⊗ G)·Φ` for gate teleportation of `G`.
pub fn pretwisted_pair(gate: &CMatrix) -> Result<StateVector> {
    gates::max_entangled(1).apply_unitary(gate, &[1])
}

/// Exact branch list for teleporting `source[j]` through the resource pair
/// `(local[j], remote[j])`. The resource must hold EPR pairs pre-twisted or
/// plain; every Bell outcome appears with its exact probability (¼ per qubit
/// on plain pairs).
pub fn teleport_branches(
    state: &StateVector,
    source: &[usize],
    local: &[usize],
    remote: &[usize],
) -> Result<Vec<TeleportBranch>> {
    if source.len() != local.len() || source.len() != remote.len() {
        return Err(Error::LengthMismatch {
            context: "teleport register sizes",
            got: local.len(),
            expected: source.len(),
        });
    }
    let mut s = state.clone();
    for (&sq, &lq) in source.iter().zip(local) {
        s = s
            .apply_unitary(&gates::cnot(), &[sq, lq])?
            .apply_unitary(&gates::h(), &[sq])?;
    }
    // measured bit order: (z_0, x_0, z_1, x_1, ...)
    let mut measured: Vec<usize> = Vec::with_capacity(2 * source.len());
    for (&sq, &lq) in source.iter().zip(local) {
        measured.push(sq);
        measured.push(lq);
    }
    let branches = s.measure_qubits_branches(&measured)?;
    Ok(branches
        .into_iter()
        .map(|(bits, probability, post)| {
            let key = key_from_bell_bits(&bits);
            TeleportBranch {
                outcome: TeleportOutcome {
                    key,
                    remote: remote.to_vec(),
                },
                probability,
                post,
            }
        })
        .collect())
}

/// Frozen calibration: measured `(z, x)` per qubit maps to pad `(a, b) =
/// (x, z)` so that the remote state is `X^a Z^b |ψ⟩`.
fn key_from_bell_bits(bits: &Bits) -> PauliKey {
    let pairs = bits.len() / 2;
    let mut a = Vec::with_capacity(pairs);
    let mut b = Vec::with_capacity(pairs);
    for j in 0..pairs {
        b.push(bits[2 * j]);
        a.push(bits[2 * j + 1]);
    }
    PauliKey { a, b }
}

/// Sample one teleportation outcome with the given RNG.
pub fn teleport(
    state: &StateVector,
    source: &[usize],
    local: &[usize],
    remote: &[usize],
    rng: &mut impl Rng,
) -> Result<(TeleportOutcome, StateVector)> {
    let branches = teleport_branches(state, source, local, remote)?;
    let mut draw = rng.gen::<f64>();
    for b in &branches {
        draw -= b.probability;
        if draw <= 0.0 {
            return Ok((b.outcome.clone(), b.post.clone()));
        }
    }
    let last = branches.last().expect("teleport produced no branches");
    Ok((last.outcome.clone(), last.post.clone()))
}

/// Gate teleportation: identical measurement flow, but run on a resource of
/// `(I ⊗ G)`-twisted pairs, leaving `G X^a Z^b |ψ⟩` on the remote side.
pub fn gate_teleport(
    state: &StateVector,
    source: &[usize],
    local: &[usize],
    remote: &[usize],
    rng: &mut impl Rng,
) -> Result<(TeleportOutcome, StateVector)> {
    teleport(state, source, local, remote, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::key::apply_qotp;
    use crate::pauli::update::{update_gate, GateUpdate};
    use crate::pauli::{Gate, GateKind};
    use crate::qsim::channel::random_pure_state;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Build `source ⊗ EPR` with the source in qubit 0, pair in (1, 2).
    fn with_pair(source: &StateVector) -> StateVector {
        source.tensor(&epr_pairs(1)).unwrap()
    }

    #[test]
    fn zero_key_branch_needs_no_correction() {
        let joint = with_pair(&StateVector::basis(1, 0));
        let branches = teleport_branches(&joint, &[0], &[1], &[2]).unwrap();
        let trivial = branches
            .iter()
            .find(|b| b.outcome.key.is_identity())
            .unwrap();
        let remote = trivial.post.reduced_density(&[2]).unwrap();
        assert_abs_diff_eq!(remote.matrix()[(0, 0)].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn all_outcomes_quarter_probability_and_correctable() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let psi = random_pure_state(1, &mut rng);
            let joint = with_pair(&psi);
            let branches = teleport_branches(&joint, &[0], &[1], &[2]).unwrap();
            assert_eq!(branches.len(), 4);
            for b in &branches {
                assert_abs_diff_eq!(b.probability, 0.25, epsilon = 1e-9);
                let corrected = apply_qotp(&b.post, &b.outcome.key, &[2]).unwrap();
                let remote = corrected.reduced_density(&[2]).unwrap();
                let target = psi.to_density();
                assert!(
                    crate::qsim::trace_distance(&remote, &target).unwrap() < 1e-9,
                    "correction failed for key {:?}",
                    b.outcome.key
                );
            }
        }
    }

    #[test]
    fn teleporting_epr_half_is_identity_channel() {
        // Choi-state comparison: teleport one half of an EPR pair and check
        // the corrected (reference, remote) state is that EPR pair again.
        let joint = epr_pairs(1).tensor(&epr_pairs(1)).unwrap();
        // qubits: 0 = reference, 1 = source (entangled with 0), (2, 3) = pair
        let branches = teleport_branches(&joint, &[1], &[2], &[3]).unwrap();
        let phi = gates::max_entangled(1).to_density();
        for b in &branches {
            let corrected = apply_qotp(&b.post, &b.outcome.key, &[3]).unwrap();
            let choi = corrected.reduced_density(&[0, 3]).unwrap();
            assert!(crate::qsim::trace_distance(&choi, &phi).unwrap() < 1e-9);
        }
    }

    #[test]
    fn sampled_teleport_is_deterministic_per_seed() {
        let psi = random_pure_state(1, &mut ChaCha8Rng::seed_from_u64(3));
        let joint = with_pair(&psi);
        let (o1, _) = teleport(&joint, &[0], &[1], &[2], &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let (o2, _) = teleport(&joint, &[0], &[1], &[2], &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(o1, o2);
    }

    #[test]
    fn register_size_mismatch() {
        let joint = with_pair(&StateVector::basis(1, 0));
        assert!(teleport_branches(&joint, &[0], &[1, 2], &[2]).is_err());
    }

    #[test]
    fn gate_teleport_identity_reduces_to_teleport() {
        let psi = random_pure_state(1, &mut ChaCha8Rng::seed_from_u64(4));
        let joint = psi
            .tensor(&pretwisted_pair(&gates::identity_gate(1)).unwrap())
            .unwrap();
        let branches = teleport_branches(&joint, &[0], &[1], &[2]).unwrap();
        for b in &branches {
            let corrected = apply_qotp(&b.post, &b.outcome.key, &[2]).unwrap();
            let remote = corrected.reduced_density(&[2]).unwrap();
            assert!(crate::qsim::trace_distance(&remote, &psi.to_density()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn gate_teleport_hadamard_trivial_branch() {
        // G = H, source |0⟩, key (0,0): remote holds |+⟩ uncorrected
        let joint = StateVector::basis(1, 0)
            .tensor(&pretwisted_pair(&gates::h()).unwrap())
            .unwrap();
        let branches = teleport_branches(&joint, &[0], &[1], &[2]).unwrap();
        let trivial = branches
            .iter()
            .find(|b| b.outcome.key.is_identity())
            .unwrap();
        let remote = trivial.post.reduced_density(&[2]).unwrap();
        let plus = gates::bb84_state(false, true).to_density();
        assert!(crate::qsim::trace_distance(&remote, &plus).unwrap() < 1e-9);
    }

    #[test]
    fn gate_teleport_frame_rule_recovers_gate_output() {
        // remote holds G·X^aZ^b|ψ⟩; applying QOTP(f_G(a,b)) recovers G|ψ⟩
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let cases = [(GateKind::H, gates::h()), (GateKind::P, gates::p())];
        for (kind, matrix) in cases {
            for _ in 0..10 {
                let psi = random_pure_state(1, &mut rng);
                let joint = psi.tensor(&pretwisted_pair(&matrix).unwrap()).unwrap();
                let target = psi.apply_unitary(&matrix, &[0]).unwrap().to_density();
                for b in teleport_branches(&joint, &[0], &[1], &[2]).unwrap() {
                    let gate = Gate::new(kind, vec![0]).unwrap();
                    let GateUpdate { key, residue } = update_gate(&b.outcome.key, &gate).unwrap();
                    assert!(residue.is_none());
                    let corrected = apply_qotp(&b.post, &key, &[2]).unwrap();
                    let remote = corrected.reduced_density(&[2]).unwrap();
                    assert!(crate::qsim::trace_distance(&remote, &target).unwrap() < 1e-9);
                }
            }
        }
        // spot value: G = H, source |0⟩, key (1,0) → remote = X^0 Z^1 H|0⟩ = |−⟩
        let joint = StateVector::basis(1, 0)
            .tensor(&pretwisted_pair(&gates::h()).unwrap())
            .unwrap();
        let branches = teleport_branches(&joint, &[0], &[1], &[2]).unwrap();
        let b = branches
            .iter()
            .find(|b| b.outcome.key == PauliKey::single(true, false))
            .unwrap();
        let remote = b.post.reduced_density(&[2]).unwrap();
        let minus = gates::bb84_state(true, true).to_density();
        assert!(crate::qsim::trace_distance(&remote, &minus).unwrap() < 1e-9);
    }
}
