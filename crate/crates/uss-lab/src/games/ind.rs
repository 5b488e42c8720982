//! Indistinguishability games: the ciphertext-cloning game and the sharing
//! game. The adversary wins when both recoverers name the challenge bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversaries::dense::{joint_hit, split_ciphertext, split_shares};
use crate::adversaries::{Transcript, UeStrategy, UssStrategy};
use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::schemes::ue::{UeCiphertext, UeKey, UeScheme};
use crate::schemes::UssScheme;
use crate::teleport::{epr_pairs, teleport_branches};

use super::{mean_stderr, EvalMode, GameKind, GameResult, MAX_EXACT_BRANCHES};

/// The ciphertext-cloning distinguishing game: the strategy names a message
/// pair, the challenger encrypts one under a fresh uniform key, the strategy
/// splits the ciphertext, and both recoverers learn the key and guess the
/// bit.
pub fn run_ue_ind(
    scheme: &dyn UeScheme,
    strategy: &UeStrategy,
    mode: EvalMode,
) -> Result<GameResult> {
    let win = match mode {
        EvalMode::Exact => exact_ue_ind(scheme, strategy)?,
        EvalMode::MonteCarlo { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut samples = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                samples.push(sample_ue_ind(scheme, strategy, &mut rng)?);
            }
            let (mean, stderr) = mean_stderr(&samples);
            return Ok(GameResult::new(
                GameKind::UeInd,
                scheme.id(),
                strategy.name.clone(),
                mode,
                mean,
                stderr,
                0.5,
            ));
        }
    };
    Ok(GameResult::new(
        GameKind::UeInd,
        scheme.id(),
        strategy.name.clone(),
        mode,
        win,
        0.0,
        0.5,
    ))
}

fn exact_ue_ind(scheme: &dyn UeScheme, strategy: &UeStrategy) -> Result<f64> {
    let key_bits = scheme.key_bits();
    let key_count = 1u64 << key_bits;
    if key_count * 2 * strategy.coins.len() as u64 > MAX_EXACT_BRANCHES {
        return Err(Error::EnumerationOverflow(key_count * 2));
    }
    let mut win = 0.0;
    for b in [false, true] {
        for (p_coin, coin) in &strategy.coins {
            let (m0, m1) = (strategy.challenge)(coin);
            let m = if b { &m1 } else { &m0 };
            for key_idx in 0..key_count {
                let key = UeKey(bits::index_to_bits(key_idx as usize, key_bits));
                let p_key = 1.0 / key_count as f64;
                for (p_ct, ct) in scheme.enc_branches(&key, m)? {
                    for branch in split_ciphertext(strategy, coin, &ct)? {
                        let transcript = Transcript {
                            broadcasts: branch.broadcasts.clone(),
                            revealed: key.0.clone(),
                        };
                        let hit = joint_hit(
                            &branch,
                            &transcript,
                            &strategy.recover_b,
                            &strategy.recover_c,
                            &vec![b],
                        )?;
                        win += 0.5 * p_coin * p_key * p_ct * branch.probability * hit;
                    }
                }
            }
        }
    }
    Ok(win)
}

fn sample_ue_ind(
    scheme: &dyn UeScheme,
    strategy: &UeStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let b: bool = rng.gen();
    let coin = {
        let draw = rng.gen::<f64>();
        let mut acc = 0.0;
        let mut chosen = &strategy.coins[0].1;
        for (p, c) in &strategy.coins {
            acc += p;
            if draw <= acc {
                chosen = c;
                break;
            }
        }
        chosen.clone()
    };
    let (m0, m1) = (strategy.challenge)(&coin);
    let m = if b { m1 } else { m0 };
    let key = scheme.keygen(rng);
    let ct = scheme.enc(&key, &m, rng)?;
    let branches = split_ciphertext(strategy, &coin, &ct)?;
    let draw = rng.gen::<f64>();
    let mut acc = 0.0;
    for branch in &branches {
        acc += branch.probability;
        if draw <= acc {
            let transcript = Transcript {
                broadcasts: branch.broadcasts.clone(),
                revealed: key.0.clone(),
            };
            return joint_hit(
                branch,
                &transcript,
                &strategy.recover_b,
                &strategy.recover_c,
                &vec![b],
            );
        }
    }
    Ok(0.0)
}

/// The sharing distinguishing game over challenge messages `(0…0, 1…1)`.
pub fn run_uss_ind(
    scheme: &dyn UssScheme,
    strategy: &UssStrategy,
    mode: EvalMode,
) -> Result<GameResult> {
    let mb = scheme.message_bits();
    let challenge = (vec![false; mb], vec![true; mb]);
    let (win, stderr) = match (mode, strategy) {
        (EvalMode::Exact, UssStrategy::Dense(s)) => {
            (exact_uss_ind_dense(scheme, s, &challenge)?, 0.0)
        }
        (EvalMode::Exact, UssStrategy::LowT(a)) => (a.exact_win(scheme, false)?, 0.0),
        (EvalMode::Exact, UssStrategy::Pbt(a)) => (a.exact_win(scheme)?, 0.0),
        (EvalMode::Exact, UssStrategy::TeleportMask(s)) => {
            (exact_uss_ind_teleport_mask(scheme, s)?, 0.0)
        }
        (EvalMode::MonteCarlo { trials, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut samples = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                samples.push(sample_uss_ind(scheme, strategy, &challenge, &mut rng)?);
            }
            mean_stderr(&samples)
        }
    };
    let mut result = GameResult::new(
        GameKind::UssInd,
        scheme.id(),
        strategy.name(),
        mode,
        win,
        stderr,
        0.5,
    );
    result.components = Some(strategy.declared_graph(scheme.parties()).components());
    Ok(result)
}

fn exact_uss_ind_dense(
    scheme: &dyn UssScheme,
    strategy: &crate::adversaries::DenseStrategy,
    challenge: &(Bits, Bits),
) -> Result<f64> {
    let mut win = 0.0;
    for b in [false, true] {
        let m = if b { &challenge.1 } else { &challenge.0 };
        for (p_pack, pack) in scheme.share_branches(m)? {
            for branch in split_shares(strategy, &pack)? {
                let transcript = Transcript {
                    broadcasts: branch.broadcasts.clone(),
                    revealed: Bits::new(),
                };
                let hit = joint_hit(
                    &branch,
                    &transcript,
                    &strategy.recover_b,
                    &strategy.recover_c,
                    &vec![b],
                )?;
                win += 0.5 * p_pack * branch.probability * hit;
            }
        }
    }
    Ok(win)
}

/// The share-masking reduction run as a sharing-game strategy: party 2
/// teleports its encoded share to party 1, both pre-agree on a random mask,
/// party 1 runs the ciphertext-splitting strategy on the padded data, and
/// the recoverers get the masked pad as their "revealed key".
fn exact_uss_ind_teleport_mask(scheme: &dyn UssScheme, strategy: &UeStrategy) -> Result<f64> {
    if scheme.parties() != 2 {
        return Err(Error::Config(
            "the share-masking reduction needs a 2-party scheme".into(),
        ));
    }
    let mut win = 0.0;
    for b in [false, true] {
        let m = vec![b; scheme.message_bits()];
        for (p_pack, pack) in scheme.share_branches(&m)? {
            let (encoded, per_party) = pack.encode_all_quantum()?;
            let q1 = per_party[0].clone();
            let q2 = per_party[1].clone();
            let k = q2.len();
            let base = encoded.num_qubits();
            let joint = encoded.tensor(&epr_pairs(k))?;
            let locals: Vec<usize> = (base..base + k).collect();
            let remotes: Vec<usize> = (base + k..base + 2 * k).collect();
            for tb in teleport_branches(&joint, &q2, &locals, &remotes)? {
                // pre-agreed mask, enumerated
                let mask_bits = 2 * k;
                let p_mask = 1.0 / (1u64 << mask_bits) as f64;
                for mask_idx in 0..1usize << mask_bits {
                    let mask = bits::index_to_bits(mask_idx, mask_bits);
                    let mut ct_qubits = q1.clone();
                    ct_qubits.extend(&remotes);
                    let ct = UeCiphertext {
                        quantum: tb.post.reduced_to_vector(&ct_qubits)?,
                        classical: mask.clone(),
                    };
                    let revealed = bits::xor(&tb.outcome.key.to_bits(), &mask);
                    for (p_coin, coin) in &strategy.coins {
                        for branch in split_ciphertext(strategy, coin, &ct)? {
                            let transcript = Transcript {
                                broadcasts: branch.broadcasts.clone(),
                                revealed: revealed.clone(),
                            };
                            let hit = joint_hit(
                                &branch,
                                &transcript,
                                &strategy.recover_b,
                                &strategy.recover_c,
                                &vec![b],
                            )?;
                            win += 0.5
                                * p_pack
                                * tb.probability
                                * p_mask
                                * p_coin
                                * branch.probability
                                * hit;
                        }
                    }
                }
            }
        }
    }
    Ok(win)
}

fn sample_uss_ind(
    scheme: &dyn UssScheme,
    strategy: &UssStrategy,
    challenge: &(Bits, Bits),
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let b: bool = rng.gen();
    let m = if b { &challenge.1 } else { &challenge.0 };
    let pack = scheme.share(m, rng)?;
    match strategy {
        UssStrategy::Dense(s) => {
            let branches = split_shares(s, &pack)?;
            let draw = rng.gen::<f64>();
            let mut acc = 0.0;
            for branch in &branches {
                acc += branch.probability;
                if draw <= acc {
                    let transcript = Transcript {
                        broadcasts: branch.broadcasts.clone(),
                        revealed: Bits::new(),
                    };
                    return joint_hit(branch, &transcript, &s.recover_b, &s.recover_c, &vec![b]);
                }
            }
            Ok(0.0)
        }
        UssStrategy::LowT(a) => {
            // sampled run: exact conditional win on the sampled path
            let t = a.sample_run(scheme, m, rng)?;
            match (t.guess_b, t.guess_c) {
                (Some(gb), Some(gc)) => Ok(if gb == vec![b] && gc == vec![b] {
                    1.0
                } else {
                    0.0
                }),
                _ => Ok(match a.abort_mode {
                    crate::adversaries::AbortMode::SharedCoin => 0.5,
                    crate::adversaries::AbortMode::IndependentCoins => 0.25,
                }),
            }
        }
        UssStrategy::Pbt(a) => {
            let t = a.sample_run(scheme, m, rng)?;
            Ok(if t.guess_b.as_deref() == Some(&[b][..]) { 1.0 } else { 0.0 })
        }
        UssStrategy::TeleportMask(_) => Err(Error::Config(
            "sampled mode is not wired for the reduction strategy; use exact".into(),
        )),
    }
}
