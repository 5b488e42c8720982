//! The computational pad scheme used as the attack test bed: parties
//! `1…n−1` hold qubits `|x_i⟩` and party `n` holds a classical bit, with the
//! XOR of everything equal to the one-bit secret. Reconstruction is the
//! Clifford circuit folding all bits into qubit 0, optionally followed by
//! `κ` T gates on qubit 0 that leave the measured outcome untouched but
//! force a guess gadget each during homomorphic evaluation.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::{Circuit, Gate, GateKind};
use crate::qsim::povm::PovmElement;
use crate::qsim::{CMatrix, Povm, RegisterMap, StateVector};

use super::{Share, SharePack, UssScheme};

#[derive(Debug, Clone, Copy)]
pub struct PadScheme {
    pub n: usize,
    /// Number of T gates appended to the reconstruction circuit.
    pub kappa: usize,
}

impl PadScheme {
    pub fn new(n: usize, kappa: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config("pad scheme needs n ≥ 2".into()));
        }
        Ok(Self { n, kappa })
    }

    fn pack(&self, xs: &Bits) -> Result<SharePack> {
        let mut state = StateVector::zero(0);
        let mut widths = Vec::new();
        let mut shares = Vec::new();
        for i in 0..self.n - 1 {
            state = state.tensor(&StateVector::basis(1, usize::from(xs[i])))?;
            let label = format!("q{}", i + 1);
            widths.push((label.clone(), 1));
            shares.push(Share {
                party: i + 1,
                classical: Vec::new(),
                quantum: Some(label),
            });
        }
        shares.push(Share {
            party: self.n,
            classical: vec![xs[self.n - 1]],
            quantum: None,
        });
        let regs = RegisterMap::from_widths(
            &widths.iter().map(|(n, w)| (n.as_str(), *w)).collect::<Vec<_>>(),
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

impl UssScheme for PadScheme {
    fn id(&self) -> String {
        format!("pad(n={};kappa={})", self.n, self.kappa)
    }

    fn parties(&self) -> usize {
        self.n
    }

    fn message_bits(&self) -> usize {
        1
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        let free = self.n - 1;
        let p = 1.0 / (1usize << free) as f64;
        let mut out = Vec::new();
        for idx in 0..1usize << free {
            let mut xs = bits::index_to_bits(idx, free);
            xs.push(bits::parity(&xs) ^ m[0]);
            out.push((p, self.pack(&xs)?));
        }
        Ok(out)
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        let mut xs = bits::random_bits(self.n - 1, rng);
        xs.push(bits::parity(&xs) ^ m[0]);
        self.pack(&xs)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let acc = pack.share_for(self.n)?.classical.clone();
        if acc.len() != 1 {
            return Err(Error::MissingShare(self.n));
        }
        let mut qubits = Vec::new();
        for i in 1..self.n {
            let q = pack.party_qubits(i)?;
            if q.len() != 1 {
                return Err(Error::MissingShare(i));
            }
            qubits.push(q[0]);
        }
        let mut out = Vec::new();
        for (outcome, p, _) in pack.state.measure_qubits_branches(&qubits)? {
            out.push((vec![bits::parity(&outcome) ^ acc[0]], p));
        }
        Ok(super::chained::merge_outcomes(out))
    }

    fn reconstruct_circuit(&self) -> Option<Circuit> {
        // fully-quantum encoding: qubit i = party i+1's bit, party n's
        // classical bit encoded as qubit n−1
        let mut gates = Vec::new();
        for j in 1..self.n {
            gates.push(Gate::new(GateKind::Cnot, vec![j, 0]).ok()?);
        }
        for _ in 0..self.kappa {
            gates.push(Gate::new(GateKind::T, vec![0]).ok()?);
        }
        Circuit::new(self.n, gates).ok()
    }

    fn reconstruct_povm(&self) -> Option<Povm> {
        let dim = 1usize << self.n;
        let mut elements = vec![CMatrix::zeros(dim, dim); 2];
        for idx in 0..dim {
            let xs = bits::index_to_bits(idx, self.n);
            let m = usize::from(bits::parity(&xs));
            elements[m][(idx, idx)] = crate::qsim::C64::from(1.0);
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
    use crate::pauli::update::update_function;
    use crate::pauli::PauliKey;
    use crate::schemes::hiding_distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn round_trip_and_t_count() {
        for kappa in 0..4 {
            let scheme = PadScheme::new(2, kappa).unwrap();
            let circuit = scheme.reconstruct_circuit().unwrap();
            assert_eq!(circuit.t_count(), kappa);
            for m in [false, true] {
                for (_, pack) in scheme.share_branches(&vec![m]).unwrap() {
                    assert_eq!(
                        scheme.reconstruct_dist(&pack).unwrap(),
                        vec![(vec![m], 1.0)]
                    );
                }
            }
        }
    }

    #[test]
    fn circuit_route_agrees_with_dist() {
        // run the Clifford+T circuit on the encoded shares and read qubit 0
        for kappa in [0usize, 2] {
            let scheme = PadScheme::new(3, kappa).unwrap();
            let circuit = scheme.reconstruct_circuit().unwrap();
            for m in [false, true] {
                for (_, pack) in scheme.share_branches(&vec![m]).unwrap() {
                    let (encoded, _) = pack.encode_all_quantum().unwrap();
                    let evolved = circuit.apply(&encoded).unwrap();
                    let branches = evolved.measure_qubits_branches(&[0]).unwrap();
                    assert_eq!(branches.len(), 1);
                    assert_eq!(branches[0].0, vec![m]);
                }
            }
        }
    }

    #[test]
    fn circuit_update_function_is_clean_for_zero_key() {
        let scheme = PadScheme::new(2, 1).unwrap();
        let circuit = scheme.reconstruct_circuit().unwrap();
        let out = update_function(&circuit, &PauliKey::zero(2)).unwrap();
        assert_eq!(out.key().unwrap(), &PauliKey::zero(2));
    }

    #[test]
    fn hiding_exact() {
        for n in [2, 3] {
            let scheme = PadScheme::new(n, 1).unwrap();
            let d = hiding_distance(&scheme, &vec![false], &vec![true]).unwrap();
            assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn povm_matches_parity() {
        let scheme = PadScheme::new(2, 0).unwrap();
        let povm = scheme.reconstruct_povm().unwrap();
        for m in [false, true] {
            for (_, pack) in scheme.share_branches(&vec![m]).unwrap() {
                let (encoded, _) = pack.encode_all_quantum().unwrap();
                let probs = povm.probabilities(&encoded.to_density()).unwrap();
                assert_abs_diff_eq!(probs[usize::from(m)], 1.0, epsilon = 1e-12);
            }
        }
    }
}
