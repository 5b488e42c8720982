//! The teleport-and-guess attack on schemes whose reconstruction circuit is
//! Clifford+T with few T gates.
//!
//! Parties `1…n−1` teleport their (quantum-encoded) shares to party `n` and
//! broadcast the pad keys. Party `n` evaluates the reconstruction circuit on
//! the padded data, inserting a guess gadget `P^{s_j}` after the `j`-th T
//! gate for a fresh coin `s_j`, measures, and broadcasts the outcome plus
//! the modified circuit. The recoverers run the update function on the
//! broadcast circuit: if it survives they unmask the outcome and both output
//! the secret; on abort they fall back per [`AbortMode`].

use rand::{Rng, RngCore};

use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::pauli::update::{update_function, UpdateOutcome};
use crate::pauli::PauliKey;
use crate::schemes::{SharePack, UssScheme};
use crate::teleport::{epr_pairs, teleport_branches};

use super::graph::EntanglementGraph;
use super::AttackTranscript;

/// What the recoverers do when the update function aborts in the
/// distinguishing game. In the search game an abort always loses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbortMode {
    /// Both output one shared fresh coin (joint success ½ on abort).
    SharedCoin,
    /// Each outputs its own fresh coin (joint success ¼ on abort).
    IndependentCoins,
}

#[derive(Debug, Clone, Copy)]
pub struct LowTAttack {
    pub abort_mode: AbortMode,
}

impl LowTAttack {
    pub fn new(abort_mode: AbortMode) -> Self {
        Self { abort_mode }
    }

    /// The attack routes every teleport into party `n`; any connected
    /// entanglement graph supports that via chained teleports, so building
    /// the attack only checks connectivity.
    pub fn check_graph(&self, graph: &EntanglementGraph) -> Result<()> {
        if !graph.is_connected() {
            return Err(Error::Config(
                "low-T attack needs a connected entanglement graph".into(),
            ));
        }
        Ok(())
    }

    /// Exact attack success probability. `search = true` scores only exact
    /// secret recovery (abort loses); `search = false` scores the
    /// distinguishing game with the configured abort fallback.
    pub fn exact_win(&self, scheme: &dyn UssScheme, search: bool) -> Result<f64> {
        let mb = scheme.message_bits();
        let mut win = 0.0;
        let p_m = 1.0 / (1usize << mb) as f64;
        for m_idx in 0..1usize << mb {
            let m = bits::index_to_bits(m_idx, mb);
            for (p_pack, pack) in scheme.share_branches(&m)? {
                win += p_m
                    * p_pack
                    * self.pack_win(scheme, &pack, &m, search, None, &mut None)?;
            }
        }
        Ok(win)
    }

    /// Success probability on one pack, optionally restricted to a sampled
    /// path (used by [`Self::sample_run`]).
    fn pack_win(
        &self,
        scheme: &dyn UssScheme,
        pack: &SharePack,
        m: &Bits,
        search: bool,
        mut sample: Option<&mut dyn RngCore>,
        transcript: &mut Option<AttackTranscript>,
    ) -> Result<f64> {
        let circuit = scheme.reconstruct_circuit().ok_or_else(|| {
            Error::Config("scheme does not expose a Clifford+T reconstruction circuit".into())
        })?;
        let n = scheme.parties();
        let kappa = circuit.t_count();
        let (encoded, per_party) = pack.encode_all_quantum()?;
        if circuit.num_qubits != encoded.num_qubits() {
            return Err(Error::DimensionMismatch {
                context: "reconstruction circuit width",
                got: circuit.num_qubits,
                expected: encoded.num_qubits(),
            });
        }
        let tele: Vec<usize> = per_party[..n - 1].concat();
        let own = per_party[n - 1].clone();
        let k = tele.len();
        let base = encoded.num_qubits();
        let joint = encoded.tensor(&epr_pairs(k))?;
        let locals: Vec<usize> = (base..base + k).collect();
        let remotes: Vec<usize> = (base + k..base + 2 * k).collect();
        let mut eval: Vec<usize> = remotes.clone();
        eval.extend(&own);

        let mut tb_branches = teleport_branches(&joint, &tele, &locals, &remotes)?;
        if let Some(rng) = sample.as_deref_mut() {
            let probs: Vec<f64> = tb_branches.iter().map(|b| b.probability).collect();
            let pick = sample_index(&probs, rng);
            tb_branches = vec![tb_branches.swap_remove(pick)];
            tb_branches[0].probability = 1.0;
        }
        let mut win = 0.0;
        for tb in &tb_branches {
            let patterns: Vec<usize> = match sample.as_deref_mut() {
                Some(rng) => vec![rng.next_u32() as usize & ((1usize << kappa) - 1)],
                None => (0..1usize << kappa).collect(),
            };
            let p_pattern = if sample.is_some() {
                1.0
            } else {
                1.0 / (1usize << kappa) as f64
            };
            for &pattern_idx in &patterns {
                let pattern: Vec<bool> = (0..kappa).map(|j| pattern_idx >> j & 1 == 1).collect();
                let gadgeted = circuit.with_gadgets(&pattern)?;
                let mut state = tb.post.clone();
                for gate in &gadgeted.gates {
                    let targets: Vec<usize> = gate.targets.iter().map(|&t| eval[t]).collect();
                    state = state.apply_unitary(&gate.kind.matrix(), &targets)?;
                }
                // pads: teleported qubits carry the Bell keys, party n's own
                // qubits are clean
                let key0 = PauliKey {
                    a: tb.outcome.key.a.iter().copied().chain(vec![false; own.len()]).collect(),
                    b: tb.outcome.key.b.iter().copied().chain(vec![false; own.len()]).collect(),
                };
                let verdict = update_function(&gadgeted, &key0)?;
                let mut c_branches = state.measure_qubits_branches(&eval)?;
                if let Some(rng) = sample.as_deref_mut() {
                    let probs: Vec<f64> = c_branches.iter().map(|b| b.1).collect();
                    let pick = sample_index(&probs, rng);
                    c_branches = vec![c_branches.swap_remove(pick)];
                    c_branches[0].1 = 1.0;
                }
                for (c, p_c, _) in &c_branches {
                    let contribution = match &verdict {
                        UpdateOutcome::Key(kstar) => {
                            let guess: Bits = (0..scheme.message_bits())
                                .map(|j| c[j] ^ kstar.a[j])
                                .collect();
                            if let Some(t) = transcript.as_mut() {
                                t.teleport_keys = vec![(n, tb.outcome.key.to_bits())];
                                t.guesses = pattern.clone();
                                t.measured = c.clone();
                                t.modified_circuit = Some(gadgeted.to_text());
                                t.guess_b = Some(guess.clone());
                                t.guess_c = Some(guess.clone());
                            }
                            if &guess == m {
                                1.0
                            } else {
                                0.0
                            }
                        }
                        UpdateOutcome::Abort => {
                            if let Some(t) = transcript.as_mut() {
                                t.teleport_keys = vec![(n, tb.outcome.key.to_bits())];
                                t.guesses = pattern.clone();
                                t.measured = c.clone();
                                t.modified_circuit = Some(gadgeted.to_text());
                                t.guess_b = None;
                                t.guess_c = None;
                            }
                            if search {
                                0.0
                            } else {
                                match self.abort_mode {
                                    AbortMode::SharedCoin => 0.5,
                                    AbortMode::IndependentCoins => 0.25,
                                }
                            }
                        }
                    };
                    win += tb.probability * p_pattern * p_c * contribution;
                }
            }
        }
        Ok(win)
    }

    /// One seeded run, returning the serializable transcript.
    pub fn sample_run(
        &self,
        scheme: &dyn UssScheme,
        m: &Bits,
        rng: &mut impl Rng,
    ) -> Result<AttackTranscript> {
        let pack = scheme.share(m, rng)?;
        let mut transcript = Some(AttackTranscript {
            strategy: format!("low-t({:?})", self.abort_mode),
            ..Default::default()
        });
        let _ = self.pack_win(scheme, &pack, m, true, Some(rng), &mut transcript)?;
        Ok(transcript.unwrap())
    }
}

fn sample_index(probs: &[f64], rng: &mut dyn RngCore) -> usize {
    let total: f64 = probs.iter().sum();
    let unit = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let mut draw = unit * total;
    for (i, p) in probs.iter().enumerate() {
        draw -= p;
        if draw <= 0.0 {
            return i;
        }
    }
    probs.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::PadScheme;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn clifford_only_attack_wins_always() {
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        let scheme = PadScheme::new(2, 0).unwrap();
        assert_abs_diff_eq!(attack.exact_win(&scheme, true).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn search_success_halves_per_t_gate() {
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        for kappa in 0..=3usize {
            let scheme = PadScheme::new(2, kappa).unwrap();
            assert_abs_diff_eq!(
                attack.exact_win(&scheme, true).unwrap(),
                0.5f64.powi(kappa as i32),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn three_party_routing_matches() {
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        let scheme = PadScheme::new(3, 1).unwrap();
        assert_abs_diff_eq!(attack.exact_win(&scheme, true).unwrap(), 0.5, epsilon = 1e-9);
    }

    #[test]
    fn ind_game_abort_fallbacks() {
        let scheme = PadScheme::new(2, 1).unwrap();
        let shared = LowTAttack::new(AbortMode::SharedCoin);
        assert_abs_diff_eq!(shared.exact_win(&scheme, false).unwrap(), 0.75, epsilon = 1e-9);
        let indep = LowTAttack::new(AbortMode::IndependentCoins);
        assert_abs_diff_eq!(
            indep.exact_win(&scheme, false).unwrap(),
            0.5 + 0.25 / 2.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn exactly_matching_pattern_wins_conditionally() {
        // over the 2^κ patterns, exactly one leads both recoverers to the
        // secret, with probability 1 in that branch
        let scheme = PadScheme::new(2, 2).unwrap();
        let circuit = scheme.reconstruct_circuit().unwrap();
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        let win = attack.exact_win(&scheme, true).unwrap();
        assert_abs_diff_eq!(win, 0.25, epsilon = 1e-9);
        assert_eq!(circuit.t_count(), 2);
    }

    #[test]
    fn disconnected_graph_rejected() {
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        assert!(attack.check_graph(&EntanglementGraph::empty(3)).is_err());
        assert!(attack.check_graph(&EntanglementGraph::star(3, 3)).is_ok());
    }

    #[test]
    fn sampled_transcript_is_complete() {
        let attack = LowTAttack::new(AbortMode::SharedCoin);
        let scheme = PadScheme::new(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = attack.sample_run(&scheme, &vec![true], &mut rng).unwrap();
        assert_eq!(t.guesses.len(), 1);
        assert_eq!(t.measured.len(), 2);
        assert!(t.modified_circuit.is_some());
    }
}
