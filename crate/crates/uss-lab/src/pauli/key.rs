//! Per-qubit quantum one-time-pad keys.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{gates, StateVector};

/// X- and Z-pad bit vectors, one bit of each per qubit. The pad acts as
/// `X^a Z^b ρ Z^b X^a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PauliKey {
    pub a: Vec<bool>,
    pub b: Vec<bool>,
}

impl PauliKey {
    pub fn new(a: Vec<bool>, b: Vec<bool>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                context: "pauli key halves",
                got: b.len(),
                expected: a.len(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn zero(len: usize) -> Self {
        Self {
            a: vec![false; len],
            b: vec![false; len],
        }
    }

    pub fn single(a: bool, b: bool) -> Self {
        Self {
            a: vec![a],
            b: vec![b],
        }
    }

    pub fn random(len: usize, rng: &mut (impl RngCore + ?Sized)) -> Self {
        Self {
            a: (0..len).map(|_| rng.next_u32() & 1 == 1).collect(),
            b: (0..len).map(|_| rng.next_u32() & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        !self.a.iter().chain(&self.b).any(|&x| x)
    }

    /// Concatenate two keys (first key's qubits come first).
    pub fn concat(&self, other: &Self) -> Self {
        let mut a = self.a.clone();
        a.extend(&other.a);
        let mut b = self.b.clone();
        b.extend(&other.b);
        Self { a, b }
    }

    /// Pad with `(0,0)` entries on the right.
    pub fn extended(&self, extra: usize) -> Self {
        self.concat(&Self::zero(extra))
    }

    /// Interleaved `(a_0, b_0, a_1, b_1, …)` bit string, the wire format used
    /// when a key is XOR-masked against a classical secret key.
    pub fn to_bits(&self) -> Vec<bool> {
        self.a
            .iter()
            .zip(&self.b)
            .flat_map(|(&x, &z)| [x, z])
            .collect()
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.len() % 2 != 0 {
            return Err(Error::LengthMismatch {
                context: "interleaved pauli key bits",
                got: bits.len(),
                expected: bits.len() + 1,
            });
        }
        let a = bits.iter().step_by(2).copied().collect();
        let b = bits.iter().skip(1).step_by(2).copied().collect();
        Ok(Self { a, b })
    }
}

/// Conjugate the state by `⊗ X^{a_i} Z^{b_i}` on the listed target qubits.
/// Applying the same key twice is the identity channel (global phase aside).
pub fn apply_qotp(state: &StateVector, key: &PauliKey, targets: &[usize]) -> Result<StateVector> {
    if key.len() != targets.len() {
        return Err(Error::LengthMismatch {
            context: "qotp key vs targets",
            got: key.len(),
            expected: targets.len(),
        });
    }
    let mut s = state.clone();
    for (i, &t) in targets.iter().enumerate() {
        if key.a[i] || key.b[i] {
            s = s.apply_unitary(&gates::pauli_xz(key.a[i], key.b[i]), &[t])?;
        }
    }
    Ok(s)
}
