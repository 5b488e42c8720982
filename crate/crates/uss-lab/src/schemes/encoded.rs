//! Wrapper that hands out every share fully quantum: classical bits are
//! encoded as computational-basis qubits at share time. Reconstruction
//! measures them back and delegates.

use rand::RngCore;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::pauli::Circuit;
use crate::qsim::{Povm, RegisterMap};

use super::{Share, SharePack, UssScheme};

pub struct QuantumEncoded<S: UssScheme>(pub S);

impl<S: UssScheme> QuantumEncoded<S> {
    fn encode_pack(&self, pack: SharePack) -> Result<SharePack> {
        let (state, per_party) = pack.encode_all_quantum()?;
        // the encoded layout appends classical qubits after all quantum
        // registers; rebuild a map with one register per party, reordering
        // so each party's qubits are contiguous
        let mut perm = Vec::new();
        let mut entries = Vec::new();
        let mut cursor = 0;
        for (i, qubits) in per_party.iter().enumerate() {
            perm.extend(qubits.iter().copied());
            entries.push((format!("p{}", i + 1), cursor..cursor + qubits.len()));
            cursor += qubits.len();
        }
        let state = permute_vector(&state, &perm)?;
        let shares = pack
            .shares
            .iter()
            .map(|s| Share {
                party: s.party,
                classical: Vec::new(),
                quantum: Some(format!("p{}", s.party)),
            })
            .collect();
        Ok(SharePack {
            scheme: format!("encoded({})", pack.scheme),
            shares,
            state,
            regs: RegisterMap::new(entries)?,
            oracle_rows: pack.oracle_rows,
        })
    }

    /// Rebuild the base pack by measuring the encoded classical qubits.
    /// Exact branch list (deterministic on honest packs).
    fn decode_branches(&self, pack: &SharePack) -> Result<Vec<(f64, SharePack)>> {
        use rand::SeedableRng;
        let mut shape_rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let template = self
            .0
            .share(&vec![false; self.0.message_bits()], &mut shape_rng)?;
        // classical widths and quantum widths per party in the base scheme
        let mut classical_qubits = Vec::new();
        let mut quantum_qubits = Vec::new();
        for share in &template.shares {
            let enc = pack.party_qubits(share.party)?;
            let q_len = match &share.quantum {
                Some(label) => template.regs.qubits(label)?.len(),
                None => 0,
            };
            quantum_qubits.push((share.party, enc[..q_len].to_vec()));
            classical_qubits.push((share.party, enc[q_len..].to_vec()));
        }
        let measured: Vec<usize> = classical_qubits
            .iter()
            .flat_map(|(_, q)| q.iter().copied())
            .collect();
        let mut out = Vec::new();
        for (bits, p, post) in pack.state.measure_qubits_branches(&measured)? {
            let mut shares = Vec::new();
            let mut cursor = 0;
            let mut entries = Vec::new();
            let mut state_order = Vec::new();
            let mut reg_cursor = 0;
            for ((party, cq), (_, qq)) in classical_qubits.iter().zip(&quantum_qubits) {
                let classical = bits[cursor..cursor + cq.len()].to_vec();
                cursor += cq.len();
                let tmpl_share = template.share_for(*party)?;
                let quantum = tmpl_share.quantum.clone();
                if let Some(label) = &quantum {
                    entries.push((label.clone(), reg_cursor..reg_cursor + qq.len()));
                    reg_cursor += qq.len();
                    state_order.extend(qq.iter().copied());
                }
                shares.push(Share {
                    party: *party,
                    classical,
                    quantum,
                });
            }
            let state = post.reduced_to_vector(&state_order)?;
            out.push((
                p,
                SharePack {
                    scheme: self.0.id(),
                    shares,
                    state,
                    regs: RegisterMap::new(entries)?,
                    oracle_rows: pack.oracle_rows.clone(),
                },
            ));
        }
        Ok(out)
    }
}

/// Reorder a pure state so that old qubit `perm[i]` becomes qubit `i`.
pub(crate) fn permute_vector(
    state: &crate::qsim::StateVector,
    perm: &[usize],
) -> Result<crate::qsim::StateVector> {
    if perm.len() != state.num_qubits() {
        return Err(Error::LengthMismatch {
            context: "permutation",
            got: perm.len(),
            expected: state.num_qubits(),
        });
    }
    let n = perm.len();
    let mut amps = nalgebra::DVector::zeros(state.dim());
    for new_idx in 0..state.dim() {
        let mut old_idx = 0;
        for (new_pos, &old_pos) in perm.iter().enumerate() {
            if new_idx >> (n - 1 - new_pos) & 1 == 1 {
                old_idx |= 1 << (n - 1 - old_pos);
            }
        }
        amps[new_idx] = state.amplitude(old_idx);
    }
    Ok(crate::qsim::StateVector::from_raw(n, amps))
}

impl<S: UssScheme> UssScheme for QuantumEncoded<S> {
    fn id(&self) -> String {
        format!("encoded({})", self.0.id())
    }

    fn parties(&self) -> usize {
        self.0.parties()
    }

    fn message_bits(&self) -> usize {
        self.0.message_bits()
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        self.0
            .share_branches(m)?
            .into_iter()
            .map(|(p, pack)| Ok((p, self.encode_pack(pack)?)))
            .collect()
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        self.encode_pack(self.0.share(m, rng)?)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let mut dist = Vec::new();
        for (p, base_pack) in self.decode_branches(pack)? {
            for (out, q) in self.0.reconstruct_dist(&base_pack)? {
                dist.push((out, p * q));
            }
        }
        Ok(super::chained::merge_outcomes(dist))
    }

    fn reconstruct_circuit(&self) -> Option<Circuit> {
        self.0.reconstruct_circuit()
    }

    fn reconstruct_povm(&self) -> Option<Povm> {
        self.0.reconstruct_povm()
    }
}
