//! Strategy adapters across the scheme compilers.
//!
//! Direction one: a splitting strategy against the cipher-chained sharing
//! scheme, with no entanglement across the challenge boundary, becomes a
//! ciphertext-cloning adversary against the inner encryption with the same
//! exact winning probability. The adapted game below enumerates the
//! encryption game's own randomness (challenge bit, challenger key,
//! adapter coins) and evaluates the lifted adversary inside it.
//!
//! Direction two: a ciphertext-cloning strategy against the compiled
//! (share-masking) encryption becomes a sharing-game strategy via
//! teleportation, evaluated by [`super::ind::run_uss_ind`] under
//! [`crate::adversaries::UssStrategy::TeleportMask`].

use crate::adversaries::dense::{joint_hit, split_shares};
use crate::adversaries::{DenseStrategy, Transcript};
use crate::bits::{self, Bits};
use crate::error::{Error, Result};
use crate::schemes::ue::{UeKey, UeScheme};
use crate::schemes::{ChainedScheme, SharePack, UssScheme};

use super::{EvalMode, GameKind, GameResult};

/// The encryption-game value of the adversary obtained by lifting a
/// chained-scheme strategy through the reduction. The challenge ciphertext
/// is embedded at position `n` (the wrap-around key `sk_0 = sk_n` held by
/// party 1 is exactly the key the encryption challenger reveals), every
/// other share is self-built from the adapter's coins, and the recoverers
/// evaluate the original strategy on the variant matching the revealed key.
pub fn chained_strategy_as_ue(
    scheme: &ChainedScheme,
    strategy: &DenseStrategy,
    challenge: &(Bits, Bits),
) -> Result<GameResult> {
    if strategy.aux.is_some() {
        return Err(Error::Config(
            "the reduction needs no entanglement across the challenge boundary".into(),
        ));
    }
    let ue = scheme.inner_ue();
    let n = scheme.n;
    let mb = scheme.message_bits;
    let key_bits = ue.key_bits();
    let coin_r_bits = (n - 1) * mb;
    let coin_k_bits = (n - 1) * key_bits;
    let mut win = 0.0;
    for b in [false, true] {
        let m = if b { &challenge.1 } else { &challenge.0 };
        // adapter coins: the XOR pieces and every key except the challenge's
        let coins = 1u64 << (coin_r_bits + coin_k_bits);
        let p_coin = 1.0 / coins as f64;
        for coin_idx in 0..coins {
            let coin = bits::index_to_bits(coin_idx as usize, coin_r_bits + coin_k_bits);
            let rs: Vec<Bits> = coin[..coin_r_bits].chunks(mb).map(|c| c.to_vec()).collect();
            let own_keys: Vec<UeKey> = coin[coin_r_bits..]
                .chunks(key_bits)
                .map(|c| UeKey(c.to_vec()))
                .collect();
            // the piece carried by the challenge ciphertext
            let mut y_n = m.clone();
            for r in &rs {
                y_n = bits::xor(&y_n, r);
            }
            // the challenger draws the key and encrypts
            let p_key = 1.0 / (1u64 << key_bits) as f64;
            for key_idx in 0..1usize << key_bits {
                let challenge_key = UeKey(bits::index_to_bits(key_idx, key_bits));
                let pack = build_adapter_pack(scheme, &rs, &own_keys, &challenge_key, &y_n)?;
                for branch in split_shares(strategy, &pack)? {
                    let transcript = Transcript {
                        broadcasts: branch.broadcasts.clone(),
                        revealed: challenge_key.0.clone(),
                    };
                    let hit = joint_hit(
                        &branch,
                        &transcript,
                        &strategy.recover_b,
                        &strategy.recover_c,
                        &vec![b],
                    )?;
                    win += 0.5 * p_coin * p_key * branch.probability * hit;
                }
            }
        }
    }
    Ok(GameResult::new(
        GameKind::UeInd,
        format!("adapted({})", ue.id()),
        format!("lifted({})", strategy.name),
        EvalMode::Exact,
        win,
        0.0,
        0.5,
    ))
}

/// Shares exactly as the chained scheme deals them, with `ct_n` coming from
/// the challenger and party 1's classical part set to the (later revealed)
/// challenge key — the variant the recoverers will be handed.
fn build_adapter_pack(
    scheme: &ChainedScheme,
    rs: &[Bits],
    own_keys: &[UeKey],
    challenge_key: &UeKey,
    y_n: &Bits,
) -> Result<SharePack> {
    use crate::qsim::{RegisterMap, StateVector};
    use crate::schemes::Share;
    let ue = scheme.inner_ue();
    let n = scheme.n;
    let mut keys: Vec<UeKey> = own_keys.to_vec();
    keys.push(challenge_key.clone());
    let mut ys: Vec<Bits> = rs.to_vec();
    ys.push(y_n.clone());
    let mut state = StateVector::zero(0);
    let mut widths = Vec::new();
    let mut shares = Vec::new();
    for i in 0..n {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        use rand::SeedableRng;
        let ct = ue.enc(&keys[i], &ys[i], &mut rng)?;
        state = state.tensor(&ct.quantum)?;
        let label = format!("ct{}", i + 1);
        widths.push((label, scheme.message_bits));
        let prev = if i == 0 { n - 1 } else { i - 1 };
        shares.push(Share {
            party: i + 1,
            classical: keys[prev].0.clone(),
            quantum: Some(format!("ct{}", i + 1)),
        });
    }
    let regs = RegisterMap::from_widths(
        &widths.iter().map(|(l, w)| (l.as_str(), *w)).collect::<Vec<_>>(),
    );
    Ok(SharePack {
        scheme: scheme.id(),
        shares,
        state,
        regs,
        oracle_rows: Vec::new(),
    })
}
