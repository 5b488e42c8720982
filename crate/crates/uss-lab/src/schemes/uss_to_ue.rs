//! Compiling a 2-party sharing scheme into an encryption scheme.
//!
//! Padded variant: `ct = (ρ₁, X^a Z^b ρ₂ Z^b X^a, s)` with
//! `s = (a,b) ⊕ sk`; the second share travels quantum one-time padded and
//! the pad is masked by the key. Classical-mask variant (all shares but the
//! first classical): `ct = (ρ₁, s)` with `s = (y₂‖…‖y_n) ⊕ sk`.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::key::apply_qotp;
use crate::pauli::PauliKey;

use super::ue::{UeCiphertext, UeKey, UeScheme};
use super::{SharePack, UssScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskVariant {
    /// Quantum one-time pad the second share, mask the pad bits.
    PaddedShare,
    /// Mask the classical shares of parties `2…n` directly.
    ClassicalShares,
}

/// The compiled encryption scheme around a base sharing scheme.
pub struct UssCompiledUe<S: UssScheme> {
    pub base: S,
    pub variant: MaskVariant,
}

struct Layout {
    /// Qubits of the (encoded) share 2 in the packed state.
    share2: Vec<usize>,
}

impl<S: UssScheme> UssCompiledUe<S> {
    pub fn new(base: S, variant: MaskVariant) -> Result<Self> {
        if variant == MaskVariant::PaddedShare && base.parties() != 2 {
            return Err(Error::Config(
                "padded-share compilation needs a 2-party base scheme".into(),
            ));
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let probe = base.share(&vec![false; base.message_bits()], &mut rng)?;
        if !probe.share_for(1)?.classical.is_empty() {
            return Err(Error::Config(
                "compiled encryption expects a fully quantum first share".into(),
            ));
        }
        Ok(Self { base, variant })
    }

    /// Qubits of the padded second share within the ciphertext register.
    fn layout(&self, pack: &SharePack) -> Result<Layout> {
        let s1 = &pack.share_for(1)?;
        if !s1.classical.is_empty() {
            return Err(Error::Config(
                "compiled encryption expects a fully quantum first share".into(),
            ));
        }
        let (_, per_party) = pack.encode_all_quantum()?;
        Ok(Layout {
            share2: per_party[1].clone(),
        })
    }

    fn enc_from_pack(
        &self,
        key: &UeKey,
        pack: &SharePack,
        pad: &PauliKey,
    ) -> Result<UeCiphertext> {
        match self.variant {
            MaskVariant::PaddedShare => {
                let layout = self.layout(pack)?;
                let (encoded, _) = pack.encode_all_quantum()?;
                let padded = apply_qotp(&encoded, pad, &layout.share2)?;
                let s = bits::xor(&pad.to_bits(), &key.0);
                Ok(UeCiphertext {
                    quantum: padded,
                    classical: s,
                })
            }
            MaskVariant::ClassicalShares => {
                let mut ys = Vec::new();
                for party in 2..=self.base.parties() {
                    let share = pack.share_for(party)?;
                    if share.quantum.is_some() {
                        return Err(Error::Config(
                            "classical-mask compilation needs classical shares for parties ≥ 2"
                                .into(),
                        ));
                    }
                    ys.extend_from_slice(&share.classical);
                }
                let s = bits::xor(&ys, &key.0);
                Ok(UeCiphertext {
                    quantum: pack.state.reduced_to_vector(&pack.party_qubits(1)?)?,
                    classical: s,
                })
            }
        }
    }

    /// Rebuild a share pack from a ciphertext and key (the decryption path up
    /// to reconstruction).
    pub fn unpack(&self, key: &UeKey, ct: &UeCiphertext) -> Result<(SharePack, crate::qsim::StateVector)> {
        // build a reference pack to learn the shape of the base scheme
        let mut shape_rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        use rand::SeedableRng;
        let template = self
            .base
            .share(&vec![false; self.base.message_bits()], &mut shape_rng)?;
        match self.variant {
            MaskVariant::PaddedShare => {
                let layout = self.layout(&template)?;
                let pad_bits = bits::xor(&ct.classical, &key.0);
                let pad = PauliKey::from_bits(&pad_bits)?;
                let unpadded = apply_qotp(&ct.quantum, &pad, &layout.share2)?;
                Ok((template, unpadded))
            }
            MaskVariant::ClassicalShares => {
                let ys = bits::xor(&ct.classical, &key.0);
                let mut pack = template;
                let mut cursor = 0;
                for party in 2..=self.base.parties() {
                    let len = pack.share_for(party)?.classical.len();
                    let share = pack
                        .shares
                        .iter_mut()
                        .find(|s| s.party == party)
                        .ok_or(Error::MissingShare(party))?;
                    share.classical = ys[cursor..cursor + len].to_vec();
                    cursor += len;
                }
                if cursor != ys.len() {
                    return Err(Error::LengthMismatch {
                        context: "masked classical shares",
                        got: ys.len(),
                        expected: cursor,
                    });
                }
                pack.state = ct.quantum.clone();
                Ok((pack, ct.quantum.clone()))
            }
        }
    }
}

impl<S: UssScheme> UeScheme for UssCompiledUe<S> {
    fn id(&self) -> String {
        let v = match self.variant {
            MaskVariant::PaddedShare => "padded",
            MaskVariant::ClassicalShares => "classical",
        };
        format!("compiled-ue[{v}]({})", self.base.id())
    }

    fn message_bits(&self) -> usize {
        self.base.message_bits()
    }

    fn key_bits(&self) -> usize {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let pack = self
            .base
            .share(&vec![false; self.base.message_bits()], &mut rng)
            .expect("base scheme shares");
        match self.variant {
            MaskVariant::PaddedShare => {
                let (_, per_party) = pack.encode_all_quantum().expect("encoding");
                2 * per_party[1].len()
            }
            MaskVariant::ClassicalShares => (2..=self.base.parties())
                .map(|p| pack.share_for(p).map(|s| s.classical.len()).unwrap_or(0))
                .sum(),
        }
    }

    fn enc_branches(&self, key: &UeKey, m: &Bits) -> Result<Vec<(f64, UeCiphertext)>> {
        let mut out = Vec::new();
        for (p_share, pack) in self.base.share_branches(m)? {
            match self.variant {
                MaskVariant::PaddedShare => {
                    let pad_len = self.key_bits() / 2;
                    let pad_total = 1usize << (2 * pad_len);
                    for pad_idx in 0..pad_total {
                        let pad = PauliKey::from_bits(&bits::index_to_bits(pad_idx, 2 * pad_len))?;
                        out.push((
                            p_share / pad_total as f64,
                            self.enc_from_pack(key, &pack, &pad)?,
                        ));
                    }
                }
                MaskVariant::ClassicalShares => {
                    out.push((p_share, self.enc_from_pack(key, &pack, &PauliKey::zero(0))?));
                }
            }
        }
        Ok(out)
    }

    fn enc(&self, key: &UeKey, m: &Bits, rng: &mut dyn RngCore) -> Result<UeCiphertext> {
        let pack = self.base.share(m, rng)?;
        let pad = match self.variant {
            MaskVariant::PaddedShare => PauliKey::random(self.key_bits() / 2, rng),
            MaskVariant::ClassicalShares => PauliKey::zero(0),
        };
        self.enc_from_pack(key, &pack, &pad)
    }

    fn dec_dist(&self, key: &UeKey, ct: &UeCiphertext) -> Result<Vec<(Bits, f64)>> {
        if ct.classical.len() != self.key_bits() {
            return Err(Error::LengthMismatch {
                context: "ciphertext mask",
                got: ct.classical.len(),
                expected: self.key_bits(),
            });
        }
        let (template, state) = self.unpack(key, ct)?;
        match self.variant {
            MaskVariant::PaddedShare => {
                // measure back the encoded classical parts, then reconstruct
                let (_, per_party) = template.encode_all_quantum()?;
                let mut pack = template.clone();
                // share 1 register is untouched; share 2's encoded classical
                // bits (if any) sit after the quantum block
                let classical_len = pack.share_for(2)?.classical.len();
                let encoded2 = &per_party[1];
                let classical_qubits: Vec<usize> =
                    encoded2[encoded2.len() - classical_len..].to_vec();
                let mut dist = Vec::new();
                if classical_qubits.is_empty() {
                    pack.state = state;
                    for (out, p) in self.base.reconstruct_dist(&pack)? {
                        dist.push((out, p));
                    }
                } else {
                    for (outcome, p, post) in state.measure_qubits_branches(&classical_qubits)? {
                        let mut branch_pack = pack.clone();
                        let share = branch_pack
                            .shares
                            .iter_mut()
                            .find(|s| s.party == 2)
                            .ok_or(Error::MissingShare(2))?;
                        share.classical = outcome;
                        // drop the appended qubits back out of the state
                        branch_pack.state = post.reduced_to_vector(
                            &(0..template.state.num_qubits()).collect::<Vec<_>>(),
                        )?;
                        for (out, q) in self.base.reconstruct_dist(&branch_pack)? {
                            dist.push((out, p * q));
                        }
                    }
                }
                Ok(super::chained::merge_outcomes(dist))
            }
            MaskVariant::ClassicalShares => {
                let (pack, _) = self.unpack(key, ct)?;
                self.base.reconstruct_dist(&pack)
            }
        }
    }
}
