//! Oracle-keyed sharing: the encryption key is the hash of all parties'
//! random strings, `sk = H(y_1‖…‖y_n)`; party 1 holds the ciphertext next to
//! `y_1`, everyone else holds only their `y_i`.

use std::cell::RefCell;

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::qsim::RegisterMap;

use super::oracle::RandomOracle;
use super::ue::{ConjugateUe, UeCiphertext, UeKey, UeScheme};
use super::{Share, SharePack, UssScheme};

pub struct QromScheme {
    pub n: usize,
    /// Bits per party string `y_i`.
    pub k: usize,
    pub message_bits: usize,
    ue: ConjugateUe,
    oracle: RefCell<RandomOracle>,
}

impl QromScheme {
    pub fn new(n: usize, k: usize, message_bits: usize, oracle_seed: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config("oracle-keyed sharing needs n ≥ 2".into()));
        }
        let ue = ConjugateUe::new(message_bits);
        Ok(Self {
            n,
            k,
            message_bits,
            ue,
            oracle: RefCell::new(RandomOracle::new(n * k, ue.key_bits(), oracle_seed)),
        })
    }

    pub fn with_oracle(n: usize, k: usize, message_bits: usize, oracle: RandomOracle) -> Result<Self> {
        let ue = ConjugateUe::new(message_bits);
        if oracle.input_len() != n * k || oracle.output_len() != ue.key_bits() {
            return Err(Error::LengthMismatch {
                context: "oracle geometry",
                got: oracle.input_len(),
                expected: n * k,
            });
        }
        Ok(Self {
            n,
            k,
            message_bits,
            ue,
            oracle: RefCell::new(oracle),
        })
    }

    pub fn oracle(&self) -> std::cell::Ref<'_, RandomOracle> {
        self.oracle.borrow()
    }

    pub fn oracle_mut(&self) -> std::cell::RefMut<'_, RandomOracle> {
        self.oracle.borrow_mut()
    }

    pub fn inner_ue(&self) -> ConjugateUe {
        self.ue
    }

    fn pack_from(&self, ys: &[Bits], sk: &UeKey, m: &Bits) -> Result<SharePack> {
        let ct = self.ue.enc_branches(sk, m)?.remove(0).1;
        let mut shares = vec![Share {
            party: 1,
            classical: ys[0].clone(),
            quantum: Some("ct".into()),
        }];
        for (i, y) in ys.iter().enumerate().skip(1) {
            shares.push(Share {
                party: i + 1,
                classical: y.clone(),
                quantum: None,
            });
        }
        let joined = ys.concat();
        Ok(SharePack {
            scheme: self.id(),
            shares,
            state: ct.quantum,
            regs: RegisterMap::from_widths(&[("ct", self.message_bits)]),
            oracle_rows: vec![(joined, sk.0.clone())],
        })
    }

    /// Decryption distribution when the oracle row for the pack's `y` values
    /// is forced to `sk` (used to enumerate unseen oracle rows exactly).
    pub fn reconstruct_dist_given_key(&self, pack: &SharePack, sk: &UeKey) -> Result<Vec<(Bits, f64)>> {
        let qubits = pack.party_qubits(1)?;
        let ct = UeCiphertext {
            quantum: pack.state.reduced_to_vector(&qubits)?,
            classical: Vec::new(),
        };
        self.ue.dec_dist(sk, &ct)
    }

    fn joined_ys(&self, pack: &SharePack) -> Result<Bits> {
        let mut joined = Vec::new();
        for i in 1..=self.n {
            let y = &pack.share_for(i)?.classical;
            if y.len() != self.k {
                return Err(Error::MissingShare(i));
            }
            joined.extend_from_slice(y);
        }
        Ok(joined)
    }
}

impl UssScheme for QromScheme {
    fn id(&self) -> String {
        format!("qrom(n={};k={})", self.n, self.k)
    }

    fn parties(&self) -> usize {
        self.n
    }

    fn message_bits(&self) -> usize {
        self.message_bits
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        let y_bits = self.n * self.k;
        let sk_bits = self.ue.key_bits();
        let total = (y_bits + sk_bits) as u64;
        if total > 20 {
            return Err(Error::EnumerationOverflow(1 << total.min(63)));
        }
        let p = 1.0 / (1u64 << total) as f64;
        let mut out = Vec::new();
        for y_idx in 0..1usize << y_bits {
            let joined = bits::index_to_bits(y_idx, y_bits);
            let ys: Vec<Bits> = joined.chunks(self.k).map(|c| c.to_vec()).collect();
            for sk_idx in 0..1usize << sk_bits {
                let sk = UeKey(bits::index_to_bits(sk_idx, sk_bits));
                out.push((p, self.pack_from(&ys, &sk, m)?));
            }
        }
        Ok(out)
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        let ys: Vec<Bits> = (0..self.n).map(|_| bits::random_bits(self.k, rng)).collect();
        let joined = ys.concat();
        let sk = UeKey(self.oracle.borrow_mut().query(&joined)?);
        self.pack_from(&ys, &sk, m)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let joined = self.joined_ys(pack)?;
        // use the row the pack carries when it matches, otherwise hit the
        // live oracle (tampered shares land on fresh lazily-sampled rows)
        let sk = match pack.oracle_rows.iter().find(|(input, _)| *input == joined) {
            Some((_, out)) => {
                self.oracle.borrow_mut().query(&joined)?;
                UeKey(out.clone())
            }
            None => UeKey(self.oracle.borrow_mut().query(&joined)?),
        };
        self.reconstruct_dist_given_key(pack, &sk)
    }
}
