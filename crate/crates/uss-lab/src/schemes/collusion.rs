//! Pairwise combinator: lift any 2-party scheme to `n` parties with
//! `t`-collusion resistance by XOR-splitting the secret into one piece per
//! unordered pair and running the base scheme on each piece.

use rand::RngCore;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::qsim::{RegisterMap, StateVector};

use super::{Share, SharePack, UssScheme};

pub struct CollusionScheme<S: UssScheme> {
    pub base: S,
    pub n: usize,
    pub t: usize,
    pairs: Vec<(usize, usize)>,
}

impl<S: UssScheme> CollusionScheme<S> {
    pub fn new(base: S, n: usize, t: usize) -> Result<Self> {
        if base.parties() != 2 {
            return Err(Error::Config("combinator needs a 2-party base scheme".into()));
        }
        if n < 2 || t > n - 1 {
            return Err(Error::Config(format!(
                "need n ≥ 2 and t ≤ n−1, got n={n}, t={t}"
            )));
        }
        let mut pairs = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                pairs.push((u, v));
            }
        }
        Ok(Self { base, n, t, pairs })
    }

    pub fn num_instances(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn merge(&self, packs: Vec<SharePack>) -> Result<SharePack> {
        let mut state = StateVector::zero(0);
        let mut shares: Vec<Share> = (1..=self.n)
            .map(|party| Share {
                party,
                classical: Vec::new(),
                quantum: None,
            })
            .collect();
        let mut label_per_party: Vec<Vec<(String, usize)>> = vec![Vec::new(); self.n + 1];
        for (inst, pack) in packs.iter().enumerate() {
            let (u, v) = self.pairs[inst];
            for (base_party, merged_party) in [(1usize, u), (2usize, v)] {
                let share = pack.share_for(base_party)?;
                shares[merged_party - 1]
                    .classical
                    .extend_from_slice(&share.classical);
                let qubits = pack.party_qubits(base_party)?;
                if !qubits.is_empty() {
                    let label = format!("p{merged_party}i{inst}");
                    label_per_party[merged_party].push((label, qubits.len()));
                }
            }
            state = state.tensor(&pack.state)?;
        }
        // registers in instance order per pack tensor layout: rebuild the map
        // by walking the packs again in the same order
        let mut entries = Vec::new();
        let mut cursor = 0;
        for (inst, pack) in packs.iter().enumerate() {
            let (u, v) = self.pairs[inst];
            for (base_party, merged_party) in [(1usize, u), (2usize, v)] {
                let qubits = pack.party_qubits(base_party)?;
                if !qubits.is_empty() {
                    entries.push((format!("p{merged_party}i{inst}"), cursor..cursor + qubits.len()));
                    cursor += qubits.len();
                }
            }
        }
        let regs = RegisterMap::new(entries)?;
        // a party's quantum register label set: pick the first (schemes in
        // scope give each base party one register per instance); record all
        // in the label so lookups stay unambiguous
        for share in &mut shares {
            let labels = &label_per_party[share.party];
            share.quantum = match labels.len() {
                0 => None,
                _ => Some(labels[0].0.clone()),
            };
        }
        let pack = SharePack {
            scheme: self.id(),
            shares,
            state,
            regs,
            oracle_rows: Vec::new(),
        };
        Ok(pack)
    }

    /// Qubits of one merged party across all instances.
    pub fn party_qubits_all(&self, pack: &SharePack, party: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for inst in 0..self.pairs.len() {
            let label = format!("p{party}i{inst}");
            if let Ok(q) = pack.regs.qubits(&label) {
                out.extend(q);
            }
        }
        Ok(out)
    }

    fn split_pack(&self, pack: &SharePack, inst: usize) -> Result<SharePack> {
        // rebuild the base-scheme pack of one instance
        let (u, v) = self.pairs[inst];
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let template = self
            .base
            .share(&vec![false; self.base.message_bits()], &mut rng)?;
        let mut state = StateVector::zero(0);
        let mut entries = Vec::new();
        let mut cursor = 0;
        let mut shares = Vec::new();
        let mut classical_cursor = vec![0usize; self.n + 1];
        for i in 0..inst {
            let (pu, pv) = self.pairs[i];
            for (base_party, merged) in [(1usize, pu), (2usize, pv)] {
                classical_cursor[merged] += template.share_for(base_party)?.classical.len();
            }
        }
        for (base_party, merged) in [(1usize, u), (2usize, v)] {
            let tmpl_share = template.share_for(base_party)?;
            let c_len = tmpl_share.classical.len();
            let c_from = classical_cursor[merged];
            let classical =
                pack.share_for(merged)?.classical[c_from..c_from + c_len].to_vec();
            let label = format!("p{merged}i{inst}");
            let quantum = if pack.regs.qubits(&label).is_ok() {
                let qubits = pack.regs.qubits(&label)?;
                state = state.tensor(&pack.state.reduced_to_vector(&qubits)?)?;
                let tmpl_label = tmpl_share.quantum.clone().ok_or(Error::MissingShare(base_party))?;
                entries.push((tmpl_label.clone(), cursor..cursor + qubits.len()));
                cursor += qubits.len();
                Some(tmpl_label)
            } else {
                None
            };
            shares.push(Share {
                party: base_party,
                classical,
                quantum,
            });
        }
        Ok(SharePack {
            scheme: self.base.id(),
            shares,
            state,
            regs: RegisterMap::new(entries)?,
            oracle_rows: Vec::new(),
        })
    }
}

impl<S: UssScheme> UssScheme for CollusionScheme<S> {
    fn id(&self) -> String {
        format!("collusion(n={};t={};base={})", self.n, self.t, self.base.id())
    }

    fn parties(&self) -> usize {
        self.n
    }

    fn message_bits(&self) -> usize {
        self.base.message_bits()
    }

    fn share_branches(&self, m: &Bits) -> Result<Vec<(f64, SharePack)>> {
        let k = self.pairs.len();
        let mb = self.message_bits();
        // enumerate the XOR split, then the base randomness per instance
        let split_free = (k - 1) * mb;
        let mut out: Vec<(f64, Vec<SharePack>)> = Vec::new();
        for idx in 0..1usize << split_free {
            let flat = bits::index_to_bits(idx, split_free);
            let mut pieces: Vec<Bits> = flat.chunks(mb.max(1)).map(|c| c.to_vec()).collect();
            let mut last = m.clone();
            for p in &pieces {
                last = bits::xor(&last, p);
            }
            pieces.push(last);
            let mut partial: Vec<(f64, Vec<SharePack>)> =
                vec![(1.0 / (1usize << split_free) as f64, Vec::new())];
            for piece in &pieces {
                let mut next = Vec::new();
                for (p, packs) in &partial {
                    for (q, pack) in self.base.share_branches(piece)? {
                        let mut packs = packs.clone();
                        packs.push(pack);
                        next.push((p * q, packs));
                        if next.len() as u64 > 1 << 20 {
                            return Err(Error::EnumerationOverflow(next.len() as u64));
                        }
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        out.into_iter().map(|(p, packs)| Ok((p, self.merge(packs)?))).collect()
    }

    fn share(&self, m: &Bits, rng: &mut dyn RngCore) -> Result<SharePack> {
        let pieces = super::xor_split(m, self.pairs.len(), rng);
        let packs = pieces
            .iter()
            .map(|piece| self.base.share(piece, rng))
            .collect::<Result<Vec<_>>>()?;
        self.merge(packs)
    }

    fn reconstruct_dist(&self, pack: &SharePack) -> Result<Vec<(Bits, f64)>> {
        let mut dist: Vec<(Bits, f64)> = vec![(vec![false; self.message_bits()], 1.0)];
        for inst in 0..self.pairs.len() {
            let sub = self.split_pack(pack, inst)?;
            let piece_dist = self.base.reconstruct_dist(&sub)?;
            let mut next = Vec::new();
            for (acc, p) in &dist {
                for (piece, q) in &piece_dist {
                    next.push((bits::xor(acc, piece), p * q));
                }
            }
            dist = next;
        }
        Ok(super::chained::merge_outcomes(dist))
    }
}

/// Every partition of `{1..n}` into groups of size ≤ `t` leaves at least one
/// unordered pair split across two groups (checked exhaustively).
pub fn every_partition_splits_a_pair(n: usize, t: usize) -> bool {
    fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let first = items[0];
        let rest = &items[1..];
        let mut out = Vec::new();
        for mut partition in partitions(rest) {
            // first in its own block
            let mut with_own = partition.clone();
            with_own.push(vec![first]);
            out.push(with_own);
            // first joined to each existing block
            for i in 0..partition.len() {
                partition[i].push(first);
                out.push(partition.clone());
                partition[i].pop();
            }
        }
        out
    }
    let items: Vec<usize> = (1..=n).collect();
    partitions(&items)
        .into_iter()
        .filter(|blocks| blocks.iter().all(|b| b.len() <= t))
        .all(|blocks| {
            // some pair (u, v) lies in two different blocks
            let mut block_of = vec![0usize; n + 1];
            for (bi, block) in blocks.iter().enumerate() {
                for &x in block {
                    block_of[x] = bi;
                }
            }
            (1..=n).any(|u| (u + 1..=n).any(|v| block_of[u] != block_of[v]))
        })
}
