//! A desk-scale encryption with unclonable-style conjugate coding: bit `i`
//! is encoded as `H^{θ_i} |m_i ⊕ r_i⟩` under the uniform key
//! `sk = (θ_1, r_1, …, θ_ℓ, r_ℓ)`. Decryption is exact.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::qsim::{gates, StateVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeKey(pub Bits);

impl UeKey {
    /// `(θ_i, r_i)` for message bit `i`.
    pub fn pair(&self, i: usize) -> (bool, bool) {
        (self.0[2 * i], self.0[2 * i + 1])
    }
}

/// A quantum ciphertext with an optional classical tail.
#[derive(Debug, Clone)]
pub struct UeCiphertext {
    pub quantum: StateVector,
    pub classical: Bits,
}

/// The common shape of the toy scheme and the compiled ones.
pub trait UeScheme {
    fn id(&self) -> String;
    fn message_bits(&self) -> usize;
    fn key_bits(&self) -> usize;

    fn keygen(&self, rng: &mut dyn RngCore) -> UeKey {
        UeKey(bits::random_bits(self.key_bits(), rng))
    }

    /// Exact enumeration of encryption randomness (empty tail = pure case).
    fn enc_branches(&self, key: &UeKey, m: &Bits) -> Result<Vec<(f64, UeCiphertext)>>;

    fn enc(&self, key: &UeKey, m: &Bits, rng: &mut dyn RngCore) -> Result<UeCiphertext>;

    /// Exact decryption output distribution.
    fn dec_dist(&self, key: &UeKey, ct: &UeCiphertext) -> Result<Vec<(Bits, f64)>>;
}

/// Per-bit conjugate coding.
#[derive(Debug, Clone, Copy)]
pub struct ConjugateUe {
    pub message_bits: usize,
}

impl ConjugateUe {
    pub fn new(message_bits: usize) -> Self {
        Self { message_bits }
    }

    fn check_key(&self, key: &UeKey) -> Result<()> {
        if key.0.len() != self.key_bits() {
            return Err(Error::LengthMismatch {
                context: "ue key",
                got: key.0.len(),
                expected: self.key_bits(),
            });
        }
        Ok(())
    }

    fn encode(&self, key: &UeKey, m: &Bits) -> Result<StateVector> {
        if m.len() != self.message_bits {
            return Err(Error::LengthMismatch {
                context: "ue message",
                got: m.len(),
                expected: self.message_bits,
            });
        }
        self.check_key(key)?;
        let mut state = StateVector::zero(0);
        for (i, &mi) in m.iter().enumerate() {
            let (theta, r) = key.pair(i);
            state = state.tensor(&gates::bb84_state(mi ^ r, theta))?;
        }
        Ok(state)
    }
}

impl UeScheme for ConjugateUe {
    fn id(&self) -> String {
        format!("conjugate-ue({})", self.message_bits)
    }

    fn message_bits(&self) -> usize {
        self.message_bits
    }

    fn key_bits(&self) -> usize {
        2 * self.message_bits
    }

    fn enc_branches(&self, key: &UeKey, m: &Bits) -> Result<Vec<(f64, UeCiphertext)>> {
        Ok(vec![(
            1.0,
            UeCiphertext {
                quantum: self.encode(key, m)?,
                classical: Vec::new(),
            },
        )])
    }

    fn enc(&self, key: &UeKey, m: &Bits, _rng: &mut dyn RngCore) -> Result<UeCiphertext> {
        Ok(UeCiphertext {
            quantum: self.encode(key, m)?,
            classical: Vec::new(),
        })
    }

    fn dec_dist(&self, key: &UeKey, ct: &UeCiphertext) -> Result<Vec<(Bits, f64)>> {
        self.check_key(key)?;
        if ct.quantum.num_qubits() != self.message_bits {
            return Err(Error::LengthMismatch {
                context: "ue ciphertext qubits",
                got: ct.quantum.num_qubits(),
                expected: self.message_bits,
            });
        }
        // rotate each qubit out of its basis, then measure everything
        let mut state = ct.quantum.clone();
        for i in 0..self.message_bits {
            if key.pair(i).0 {
                state = state.apply_unitary(&gates::h(), &[i])?;
            }
        }
        let targets: Vec<usize> = (0..self.message_bits).collect();
        let mut out = Vec::new();
        for (outcome, p, _) in state.measure_qubits_branches(&targets)? {
            let m: Bits = outcome
                .iter()
                .enumerate()
                .map(|(i, &x)| x ^ key.pair(i).1)
                .collect();
            out.push((m, p));
        }
        Ok(out)
    }
}
