//! Basis-masked XOR sharing of one bit across `n + 1` parties: parties
//! `1…n` hold single-qubit conjugate-coded shares of random bits with parity
//! `m`, party `n + 1` holds the basis string.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::qsim::povm::PovmElement;
use crate::qsim::{gates, CMatrix, Povm, RegisterMap, StateVector};

use super::{Share, SharePack, UssScheme};

#[derive(Debug, Clone, Copy)]
pub struct Bb84Scheme {
    /// Number of quantum parties; the scheme has `n + 1` parties in total.
    pub n: usize,
}

impl Bb84Scheme {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Config("need at least one quantum party".into()));
        }
        Ok(Self { n })
    }

    fn pack(&self, r: &Bits, theta: &Bits) -> Result<SharePack> {
        let mut state = StateVector::zero(0);
        let mut widths = Vec::new();
        let mut shares = Vec::new();
        for i in 0..self.n {
            state = state.tensor(&gates::bb84_state(r[i], theta[i]))?;
            widths.push((format!("q{}", i + 1), 1));
            shares.push(Share {
                party: i + 1,
                classical: Vec::new(),
                quantum: Some(format!("q{}", i + 1)),
            });
        }
        shares.push(Share {
            party: self.n + 1,
            classical: theta.clone(),
            quantum: None,
        });
        let regs = RegisterMap::from_widths(
            &widths
                .iter()
                .map(|(n, w)| (n.as_str(), *w))
                .collect::<Vec<_>>(),
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

impl UssScheme for Bb84Scheme {
    fn id(&self) -> String {
        format!("bb84(n={})", self.n)
    }

    fn parties(&self) -> usize {
        self.n + 1
    }

    fn message_bits(&self) -> usize {
        1
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        if m.len() != 1 {
            return Err(Error::LengthMismatch {
                context: "bb84 message",
                got: m.len(),
                expected: 1,
            });
        }
        let mut out = Vec::new();
        let p = 1.0 / ((1usize << (self.n - 1)) * (1usize << self.n)) as f64;
        for r_idx in 0..1usize << self.n {
            let r = bits::index_to_bits(r_idx, self.n);
            if bits::parity(&r) != m[0] {
                continue;
            }
            for theta_idx in 0..1usize << self.n {
                let theta = bits::index_to_bits(theta_idx, self.n);
                out.push((p, self.pack(&r, &theta)?));
            }
        }
        Ok(out)
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        if m.len() != 1 {
            return Err(Error::LengthMismatch {
                context: "bb84 message",
                got: m.len(),
                expected: 1,
            });
        }
        let mut r = bits::random_bits(self.n - 1, rng);
        let parity = bits::parity(&r) ^ m[0];
        r.push(parity);
        let theta = bits::random_bits(self.n, rng);
        self.pack(&r, &theta)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let theta = &pack.share_for(self.n + 1)?.classical;
        if theta.len() != self.n {
            return Err(Error::LengthMismatch {
                context: "basis share",
                got: theta.len(),
                expected: self.n,
            });
        }
        let mut state = pack.state.clone();
        let mut qubits = Vec::new();
        for i in 0..self.n {
            let q = pack.party_qubits(i + 1)?;
            if q.len() != 1 {
                return Err(Error::MissingShare(i + 1));
            }
            if theta[i] {
                state = state.apply_unitary(&gates::h(), &[q[0]])?;
            }
            qubits.push(q[0]);
        }
        let mut out = Vec::new();
        for (outcome, p, _) in state.measure_qubits_branches(&qubits)? {
            out.push((vec![bits::parity(&outcome)], p));
        }
        Ok(out)
    }

    fn reconstruct_povm(&self) -> Option<Povm> {
        // On the fully-quantum encoding [q_1 … q_n, θ-qubits]: project the
        // basis register, rotate accordingly, read the parity.
        let n = self.n;
        let dim = 1usize << (2 * n);
        let mut elements = vec![CMatrix::zeros(dim, dim); 2];
        for theta_idx in 0..1usize << n {
            let theta = bits::index_to_bits(theta_idx, n);
            for r_idx in 0..1usize << n {
                let r = bits::index_to_bits(r_idx, n);
                let mut vec_state = StateVector::zero(0);
                for i in 0..n {
                    vec_state = vec_state.tensor(&gates::bb84_state(r[i], theta[i])).ok()?;
                }
                vec_state = vec_state
                    .tensor(&StateVector::from_bits(&theta))
                    .ok()?;
                let proj = vec_state.to_density();
                let m = usize::from(bits::parity(&r));
                elements[m] += proj.matrix();
            }
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
