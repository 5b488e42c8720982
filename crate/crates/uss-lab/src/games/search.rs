//! The search game: the secret is drawn uniformly and both recoverers must
//! reproduce it exactly. Baseline `2^{-|s|}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adversaries::dense::{joint_hit, split_shares};
use crate::adversaries::{Transcript, UssStrategy};
use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::schemes::UssScheme;

use super::{mean_stderr, EvalMode, GameKind, GameResult};

pub fn run_uss_search(
    scheme: &dyn UssScheme,
    strategy: &UssStrategy,
    mode: EvalMode,
) -> Result<GameResult> {
    let mb = scheme.message_bits();
    let baseline = 1.0 / (1u64 << mb) as f64;
    let (win, stderr) = match (mode, strategy) {
        (EvalMode::Exact, UssStrategy::Dense(s)) => (exact_search_dense(scheme, s)?, 0.0),
        (EvalMode::Exact, UssStrategy::LowT(a)) => (a.exact_win(scheme, true)?, 0.0),
        (EvalMode::Exact, UssStrategy::Pbt(a)) => (a.exact_win(scheme)?, 0.0),
        (EvalMode::Exact, UssStrategy::TeleportMask(_)) => {
            return Err(Error::Config(
                "the share-masking reduction targets the distinguishing game".into(),
            ))
        }
        (EvalMode::MonteCarlo { trials, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut samples = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                samples.push(sample_search(scheme, strategy, &mut rng)?);
            }
            mean_stderr(&samples)
        }
    };
    let mut result = GameResult::new(
        GameKind::UssSearch,
        scheme.id(),
        strategy.name(),
        mode,
        win,
        stderr,
        baseline,
    );
    result.components = Some(strategy.declared_graph(scheme.parties()).components());
    Ok(result)
}

fn exact_search_dense(
    scheme: &dyn UssScheme,
    strategy: &crate::adversaries::DenseStrategy,
) -> Result<f64> {
    let mb = scheme.message_bits();
    let p_m = 1.0 / (1u64 << mb) as f64;
    let mut win = 0.0;
    for m_idx in 0..1usize << mb {
        let m = bits::index_to_bits(m_idx, mb);
        for (p_pack, pack) in scheme.share_branches(&m)? {
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
                    &m,
                )?;
                win += p_m * p_pack * branch.probability * hit;
            }
        }
    }
    Ok(win)
}

fn sample_search(
    scheme: &dyn UssScheme,
    strategy: &UssStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    let mb = scheme.message_bits();
    let m = bits::random_bits(mb, rng);
    let pack = scheme.share(&m, rng)?;
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
                    return joint_hit(branch, &transcript, &s.recover_b, &s.recover_c, &m);
                }
            }
            Ok(0.0)
        }
        UssStrategy::LowT(a) => {
            let t = a.sample_run(scheme, &m, rng)?;
            Ok(match (t.guess_b, t.guess_c) {
                (Some(gb), Some(gc)) if gb == m && gc == m => 1.0,
                _ => 0.0,
            })
        }
        UssStrategy::Pbt(a) => {
            let t = a.sample_run(scheme, &m, rng)?;
            Ok(if t.guess_b.as_deref() == Some(&m[..]) { 1.0 } else { 0.0 })
        }
        UssStrategy::TeleportMask(_) => Err(Error::Config(
            "sampled mode is not wired for the reduction strategy; use exact".into(),
        )),
    }
}
