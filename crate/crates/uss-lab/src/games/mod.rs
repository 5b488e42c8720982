//! The security-game harness.
//!
//! Every experiment runs in one of two modes: exact (enumerate the challenge
//! bit, the scheme randomness and every measurement branch, multiplying
//! probabilities — no sampling) or Monte Carlo with a mandatory seed.

pub mod ind;
pub mod pv;
pub mod reductions;
pub mod reprogram;
pub mod search;
pub mod xor_check;

pub use ind::{run_ue_ind, run_uss_ind};
pub use pv::{run_pv_from_uss, PvAttackTemplate, PvProver, PvProtocolState};
pub use reprogram::{reprogram_indistinguishability_test, QueryAdversary, QueryWeightReport};
pub use search::run_uss_search;
pub use xor_check::{xor_equality, xor_lemma_check, xor_report, Side, XorReport};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GameKind {
    UeInd,
    UssInd,
    UssSearch,
    Pv,
}

impl GameKind {
    pub fn label(&self) -> &'static str {
        match self {
            GameKind::UeInd => "ue-ind",
            GameKind::UssInd => "uss-ind",
            GameKind::UssSearch => "uss-search",
            GameKind::Pv => "pv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EvalMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

impl EvalMode {
    pub fn label(&self) -> &'static str {
        match self {
            EvalMode::Exact => "exact",
            EvalMode::MonteCarlo { .. } => "monte-carlo",
        }
    }
}

/// Cap on exact-mode branch counts.
pub const MAX_EXACT_BRANCHES: u64 = 1 << 20;

/// Winning probability of one experiment, with its baseline and, where the
/// strategy declares one, the entanglement-graph component count.
#[derive(Debug, Clone, Serialize)]
pub struct GameResult {
    pub game: String,
    pub scheme: String,
    pub strategy: String,
    pub mode: String,
    pub win_probability: f64,
    /// 0 for exact results.
    pub stderr: f64,
    pub baseline: f64,
    /// `win_probability − baseline`.
    pub advantage: f64,
    pub components: Option<usize>,
    pub seed: Option<u64>,
}

impl GameResult {
    pub fn new(
        kind: GameKind,
        scheme: String,
        strategy: String,
        mode: EvalMode,
        win: f64,
        stderr: f64,
        baseline: f64,
    ) -> Self {
        Self {
            game: kind.label().into(),
            scheme,
            strategy,
            mode: mode.label().into(),
            win_probability: win,
            stderr,
            baseline,
            advantage: win - baseline,
            components: None,
            seed: match mode {
                EvalMode::MonteCarlo { seed, .. } => Some(seed),
                EvalMode::Exact => None,
            },
        }
    }
}

/// Sample mean and standard error of a 0/1-ish payoff stream.
pub(crate) fn mean_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
