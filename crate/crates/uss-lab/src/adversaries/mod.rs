//! Cloning strategies and attacks.
//!
//! A strategy splits the shares into two register sets, one for each
//! recoverer, plus classical broadcasts that reach both. No quantum channel
//! exists between the two recoverers anywhere in these types: the only
//! shared data is the classical [`Transcript`].

pub mod dense;
pub mod graph;
pub mod low_t;
pub mod pbt;

pub use dense::{AuxState, DenseStrategy, PartyMap, SplitBranch, UeStrategy};
pub use graph::{entanglement_components, EntanglementGraph};
pub use low_t::{AbortMode, LowTAttack};
pub use pbt::PbtAttack;

use serde::Serialize;

use crate::bits::Bits;
use crate::error::Result;
use crate::qsim::{CMatrix, Povm};

/// Classical information available to the recoverers at challenge time.
#[derive(Debug, Clone, Default)]
pub struct Transcript {
    /// Per-party broadcast bits (classical share contents, measurement
    /// outcomes, teleport keys, …), sent to both recoverers.
    pub broadcasts: Vec<Bits>,
    /// Key revealed by the challenger (the secret key in encryption games).
    pub revealed: Bits,
}

/// A recoverer's decision rule.
pub enum Recoverer {
    /// Transcript → distribution over guesses; no quantum measurement.
    Classical(Box<dyn Fn(&Transcript) -> Vec<(Bits, f64)> + Send + Sync>),
    /// Transcript → POVM over this side's registers; outcome labels index
    /// guesses of the given bit width.
    Quantum {
        guess_bits: usize,
        povm: Box<dyn Fn(&Transcript) -> Result<Povm> + Send + Sync>,
    },
}

/// Either a probability (classical rule) or a POVM element (quantum rule)
/// standing for one guess value.
pub enum GuessWeight {
    Scalar(f64),
    Operator(CMatrix),
}

impl Recoverer {
    /// Weights for every guess the rule can emit, given the transcript.
    pub fn weights(&self, t: &Transcript) -> Result<Vec<(Bits, GuessWeight)>> {
        match self {
            Recoverer::Classical(rule) => Ok(rule(t)
                .into_iter()
                .map(|(g, p)| (g, GuessWeight::Scalar(p)))
                .collect()),
            Recoverer::Quantum { guess_bits, povm } => {
                let povm = povm(t)?;
                Ok(povm
                    .elements()
                    .iter()
                    .map(|e| {
                        (
                            crate::bits::index_to_bits(e.label as usize, *guess_bits),
                            GuessWeight::Operator(e.operator.clone()),
                        )
                    })
                    .collect())
            }
        }
    }

    /// A rule that always outputs the same string (achieves the game
    /// baseline when both recoverers use it).
    pub fn constant(guess: Bits) -> Self {
        Recoverer::Classical(Box::new(move |_| vec![(guess.clone(), 1.0)]))
    }

    /// Uniformly random independent guess over `bits` bits.
    pub fn uniform(bits: usize) -> Self {
        Recoverer::Classical(Box::new(move |_| {
            let p = 1.0 / (1usize << bits) as f64;
            crate::bits::enumerate(bits).map(|g| (g, p)).collect()
        }))
    }
}

/// Serializable record of one sampled attack run (`--dump-transcript`).
#[derive(Debug, Clone, Default, Serialize)]
pub struct AttackTranscript {
    pub strategy: String,
    /// Per teleporting party: interleaved pad bits `(a, b)` per qubit.
    pub teleport_keys: Vec<(usize, Bits)>,
    /// Port indices announced by the port-teleporting party.
    pub port_indices: Vec<usize>,
    /// Guess-gadget bits, one per T gate.
    pub guesses: Bits,
    /// Measured evaluation outcome.
    pub measured: Bits,
    /// Modified reconstruction circuit, in the one-gate-per-line format.
    pub modified_circuit: Option<String>,
    pub guess_b: Option<Bits>,
    pub guess_c: Option<Bits>,
}

/// A strategy against a sharing scheme, in one of the shapes the game
/// harness can evaluate exactly.
pub enum UssStrategy {
    Dense(DenseStrategy),
    LowT(LowTAttack),
    Pbt(PbtAttack),
    /// Product of the share-masking reduction: a ciphertext-splitting
    /// strategy lifted to the 2-party sharing game via teleportation.
    TeleportMask(Box<UeStrategy>),
}

impl UssStrategy {
    pub fn name(&self) -> String {
        match self {
            UssStrategy::Dense(s) => s.name.clone(),
            UssStrategy::LowT(a) => format!("low-t({:?})", a.abort_mode),
            UssStrategy::Pbt(a) => format!("pbt(N={})", a.num_ports),
            UssStrategy::TeleportMask(s) => format!("teleport-mask({})", s.name),
        }
    }

    /// The pre-shared entanglement structure the strategy declares.
    pub fn declared_graph(&self, parties: usize) -> EntanglementGraph {
        match self {
            UssStrategy::Dense(s) => match &s.aux {
                None => EntanglementGraph::empty(parties),
                Some(aux) => aux.graph().unwrap_or_else(|_| EntanglementGraph::empty(parties)),
            },
            UssStrategy::LowT(_) => EntanglementGraph::star(parties, parties),
            UssStrategy::Pbt(_) | UssStrategy::TeleportMask(_) => {
                EntanglementGraph::with_edges(parties, vec![(1, 2)])
            }
        }
    }
}
