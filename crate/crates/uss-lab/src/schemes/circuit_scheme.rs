//! A sharing scheme built from a user-supplied Clifford+T reconstruction
//! circuit (the CLI's `--circuit` flag). The circuit must map computational
//! basis states to computational basis states (no H gates, so CNOT, X, Z,
//! P and T only); the secret is the first output bit, and shares are the
//! preimage bits: one qubit per party, the last party's bit classical.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::{Circuit, GateKind};
use crate::qsim::povm::PovmElement;
use crate::qsim::{CMatrix, Povm, RegisterMap, StateVector};

use super::{Share, SharePack, UssScheme};

pub struct CircuitScheme {
    circuit: Circuit,
    /// `outputs[x]` = measured basis outcome of the circuit on `|x⟩`.
    outputs: Vec<usize>,
}

impl CircuitScheme {
    pub fn new(circuit: Circuit) -> Result<Self> {
        if circuit.num_qubits < 2 {
            return Err(Error::Config("circuit scheme needs at least 2 qubits".into()));
        }
        if circuit.num_qubits > 10 {
            return Err(Error::Capacity {
                qubits: circuit.num_qubits,
                max: 10,
            });
        }
        if circuit.gates.iter().any(|g| g.kind == GateKind::H) {
            return Err(Error::Config(
                "the attack test bed needs a basis-preserving circuit (no H gates)".into(),
            ));
        }
        let w = circuit.num_qubits;
        let mut outputs = Vec::with_capacity(1 << w);
        for x in 0..1usize << w {
            let out = circuit.apply(&StateVector::basis(w, x))?;
            let branches = out.measure_qubits_branches(&(0..w).collect::<Vec<_>>())?;
            debug_assert_eq!(branches.len(), 1);
            outputs.push(bits::bits_to_index(&branches[0].0));
        }
        // both secret values need preimages
        let preimages = |m: usize| {
            outputs
                .iter()
                .filter(|&&o| (o >> (w - 1)) & 1 == m)
                .count()
        };
        if preimages(0) == 0 || preimages(1) == 0 {
            return Err(Error::Config(
                "circuit's first output bit must take both values".into(),
            ));
        }
        Ok(Self { circuit, outputs })
    }

    fn width(&self) -> usize {
        self.circuit.num_qubits
    }

    fn preimages(&self, m: bool) -> Vec<usize> {
        let w = self.width();
        (0..1usize << w)
            .filter(|&x| (self.outputs[x] >> (w - 1)) & 1 == usize::from(m))
            .collect()
    }

    fn pack(&self, x: usize) -> Result<SharePack> {
        let w = self.width();
        let xs = bits::index_to_bits(x, w);
        let mut state = StateVector::zero(0);
        let mut widths = Vec::new();
        let mut shares = Vec::new();
        for (i, &bit) in xs.iter().take(w - 1).enumerate() {
            state = state.tensor(&StateVector::basis(1, usize::from(bit)))?;
            let label = format!("q{}", i + 1);
            widths.push((label.clone(), 1));
            shares.push(Share {
                party: i + 1,
                classical: Vec::new(),
                quantum: Some(label),
            });
        }
        shares.push(Share {
            party: w,
            classical: vec![xs[w - 1]],
            quantum: None,
        });
        let regs = RegisterMap::from_widths(
            &widths.iter().map(|(l, n)| (l.as_str(), *n)).collect::<Vec<_>>(),
        );
        Ok(SharePack {
            scheme: self.id(),
            shares,
            state,
            regs,
            oracle_rows: Vec::new(),
        })
    }
}

impl UssScheme for CircuitScheme {
    fn id(&self) -> String {
        format!("circuit(w={};t={})", self.width(), self.circuit.t_count())
    }

    fn parties(&self) -> usize {
        self.width()
    }

    fn message_bits(&self) -> usize {
        1
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        let pre = self.preimages(m[0]);
        let p = 1.0 / pre.len() as f64;
        pre.into_iter().map(|x| Ok((p, self.pack(x)?))).collect()
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        let pre = self.preimages(m[0]);
        let x = pre[(rng.next_u64() % pre.len() as u64) as usize];
        self.pack(x)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let w = self.width();
        let (encoded, _) = pack.encode_all_quantum()?;
        // classical bit lives at the end of the encoding; circuit order is
        // party order, so permute it back into slot w−1
        let mut perm: Vec<usize> = (0..w - 1).collect();
        perm.push(encoded.num_qubits() - 1);
        let state = super::encoded::permute_vector(&encoded, &perm)?;
        let evolved = self.circuit.apply(&state)?;
        let mut out = Vec::new();
        for (bitsv, p, _) in evolved.measure_qubits_branches(&[0])? {
            out.push((vec![bitsv[0]], p));
        }
        Ok(super::chained::merge_outcomes(out))
    }

    fn reconstruct_circuit(&self) -> Option<Circuit> {
        Some(self.circuit.clone())
    }

    fn reconstruct_povm(&self) -> Option<Povm> {
        let w = self.width();
        let dim = 1usize << w;
        let mut elements = vec![CMatrix::zeros(dim, dim); 2];
        for x in 0..dim {
            let m = (self.outputs[x] >> (w - 1)) & 1;
            elements[m][(x, x)] = crate::qsim::C64::from(1.0);
        }
        Povm::new(
            elements
                .into_iter()
                .enumerate()
                .map(|(label, operator)| PovmElement {
                    label: label as u64,
                    operator,
                })
                .collect(),
        )
        .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::{AbortMode, LowTAttack};
    use approx::assert_abs_diff_eq;

    #[test]
    fn parity_circuit_behaves_like_pad_scheme() {
        let circuit: Circuit = "CNOT 1 0\nT 0\nT 0\n".parse().unwrap();
        let scheme = CircuitScheme::new(circuit).unwrap();
        for m in [false, true] {
            for (_, pack) in scheme.share_branches(&vec![m]).unwrap() {
                assert_eq!(scheme.reconstruct_dist(&pack).unwrap(), vec![(vec![m], 1.0)]);
            }
        }
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        assert_abs_diff_eq!(attack.exact_win(&scheme, true).unwrap(), 0.25, epsilon = 1e-9);
    }

    #[test]
    fn hadamard_rejected() {
        let circuit: Circuit = "H 0\nCNOT 0 1\n".parse().unwrap();
        assert!(CircuitScheme::new(circuit).is_err());
    }

    #[test]
    fn affine_circuits_accepted() {
        // basis-preserving gates give invertible affine maps, so the first
        // output bit always takes both values
        let circuit: Circuit = "X 0\nCNOT 0 1\nP 1\n".parse().unwrap();
        assert!(CircuitScheme::new(circuit).is_ok());
    }
}
