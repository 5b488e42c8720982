//! Channel-based cloning strategies and their exact branch expansion.
//!
//! Each party applies a CPTP map taking its quantum share (plus any
//! auxiliary register) to `X_i ⊗ Y_i ⊗ M_i`; the `M_i` block is measured in
//! the computational basis and broadcast, `X_i` goes to the first recoverer
//! and `Y_i` to the second. Classical share bits may steer the choice of
//! map and can be re-broadcast verbatim through `announce`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::qsim::{
    gates, linalg, C64, Channel, CMatrix, CVector, DensityMatrix, Povm, StateVector,
};
use crate::schemes::{SharePack, UeCiphertext};

use super::graph::{entanglement_components, EntanglementGraph};
use super::{Recoverer, Transcript};

/// One party's splitting action.
pub struct PartyMap {
    /// CPTP map from the party's quantum share ⊗ aux register to
    /// `X ⊗ Y ⊗ M`.
    pub channel: Channel,
    pub x_qubits: usize,
    pub y_qubits: usize,
    pub m_qubits: usize,
    /// Classical bits broadcast verbatim before the measured `M` bits.
    pub announce: Bits,
}

impl PartyMap {
    /// Keep nothing, announce the given bits (classical-only party).
    pub fn announce_only(bits: Bits) -> Self {
        Self {
            channel: Channel::identity(1),
            x_qubits: 0,
            y_qubits: 0,
            m_qubits: 0,
            announce: bits,
        }
    }

    /// Forward the whole quantum share into one side's register.
    pub fn forward(qubits: usize, to_b: bool) -> Self {
        Self {
            channel: Channel::identity(1 << qubits),
            x_qubits: if to_b { qubits } else { 0 },
            y_qubits: if to_b { 0 } else { qubits },
            m_qubits: 0,
            announce: Bits::new(),
        }
    }

    /// Measure each qubit in the given orthonormal basis and broadcast the
    /// outcomes.
    pub fn measure_each(qubits: usize, basis: &[CVector; 2], announce: Bits) -> Result<Self> {
        let mut single = Vec::new();
        for o in 0..2usize {
            // |o⟩⟨basis_o|
            let mut k = CMatrix::zeros(2, 2);
            for c in 0..2 {
                k[(o, c)] = basis[o][c].conj();
            }
            single.push(k);
        }
        let mut kraus = vec![CMatrix::identity(1, 1)];
        for _ in 0..qubits {
            let mut next = Vec::new();
            for k in &kraus {
                for s in &single {
                    next.push(k.kronecker(s));
                }
            }
            kraus = next;
        }
        Ok(Self {
            channel: Channel::new(kraus)?,
            x_qubits: 0,
            y_qubits: 0,
            m_qubits: qubits,
            announce,
        })
    }

    /// Measure each qubit in a uniformly random basis (computational or
    /// Hadamard) and broadcast `(basis, outcome)` per qubit.
    pub fn measure_random_basis(qubits: usize) -> Result<Self> {
        let mut single = Vec::new();
        for phi in 0..2usize {
            for o in 0..2usize {
                // (1/√2) |phi,o⟩⟨v_{phi,o}|
                let v = gates::bb84_state(o == 1, phi == 1);
                let mut k = CMatrix::zeros(4, 2);
                for c in 0..2 {
                    k[(2 * phi + o, c)] = v.amplitude(c).conj() / C64::from(std::f64::consts::SQRT_2);
                }
                single.push(k);
            }
        }
        let mut kraus = vec![CMatrix::identity(1, 1)];
        for _ in 0..qubits {
            let mut next = Vec::new();
            for k in &kraus {
                for s in &single {
                    next.push(k.kronecker(s));
                }
            }
            kraus = next;
        }
        Ok(Self {
            channel: Channel::new(kraus)?,
            x_qubits: 0,
            y_qubits: 0,
            m_qubits: 2 * qubits,
            announce: Bits::new(),
        })
    }
}

/// A shared auxiliary state split into per-party registers.
pub struct AuxState {
    pub state: StateVector,
    /// Qubits per party, in party order; must sum to the state width.
    pub widths: Vec<usize>,
}

impl AuxState {
    pub fn party_qubits(&self, party: usize) -> Vec<usize> {
        let start: usize = self.widths[..party - 1].iter().sum();
        (start..start + self.widths[party - 1]).collect()
    }

    pub fn graph(&self) -> Result<EntanglementGraph> {
        let regs: Vec<Vec<usize>> = (1..=self.widths.len())
            .map(|p| self.party_qubits(p))
            .collect();
        Ok(entanglement_components(&self.state.to_density(), &regs)?.0)
    }
}

/// What a party sees when choosing its action.
pub struct PartyView<'a> {
    pub party: usize,
    pub classical: &'a Bits,
    /// Width of the quantum share plus any auxiliary register.
    pub qubits: usize,
}

/// A per-party channel strategy against a sharing scheme.
pub struct DenseStrategy {
    pub name: String,
    pub aux: Option<AuxState>,
    pub party: Box<dyn Fn(&PartyView) -> Result<PartyMap> + Send + Sync>,
    pub recover_b: Recoverer,
    pub recover_c: Recoverer,
}

/// A ciphertext-splitting strategy for encryption games. The challenge pair
/// may depend on the strategy's internal coins.
pub struct UeStrategy {
    pub name: String,
    /// Enumerable internal randomness, probabilities summing to 1.
    pub coins: Vec<(f64, Bits)>,
    /// `(coin, challenge messages) → (m0, m1)`.
    pub challenge: Box<dyn Fn(&Bits) -> (Bits, Bits) + Send + Sync>,
    /// `(coin, ciphertext classical tail) → action on the ciphertext qubits`.
    pub action: Box<dyn Fn(&Bits, &Bits) -> Result<PartyMap> + Send + Sync>,
    pub recover_b: Recoverer,
    pub recover_c: Recoverer,
}

impl UeStrategy {
    pub fn trivial_coins() -> Vec<(f64, Bits)> {
        vec![(1.0, Bits::new())]
    }
}

/// One exact branch after all parties have acted.
pub struct SplitBranch {
    pub probability: f64,
    /// Per-party broadcast bits (announce ‖ measured M outcomes).
    pub broadcasts: Vec<Bits>,
    /// Joint residual state over the X and Y registers.
    pub state: DensityMatrix,
    pub x_qubits: Vec<usize>,
    pub y_qubits: Vec<usize>,
}

/// Apply a rectangular channel to the listed qubits; the output state is
/// laid out `[channel output][remaining qubits in prior order]`. Returns the
/// new state and the new positions of the remaining qubits.
fn apply_channel_front(
    dm: &DensityMatrix,
    channel: &Channel,
    targets: &[usize],
) -> Result<(DensityMatrix, Vec<Option<usize>>)> {
    let n = dm.num_qubits();
    if channel.dim_in() != 1 << targets.len() {
        return Err(Error::DimensionMismatch {
            context: "channel input vs targets",
            got: channel.dim_in(),
            expected: 1 << targets.len(),
        });
    }
    let rest: Vec<usize> = (0..n).filter(|q| !targets.contains(q)).collect();
    let mut perm = targets.to_vec();
    perm.extend(&rest);
    let permuted = dm.permuted(&perm)?;
    let rest_dim = 1usize << rest.len();
    let out_qubits = channel.dim_out().trailing_zeros() as usize;
    let mut out = CMatrix::zeros(
        channel.dim_out() * rest_dim,
        channel.dim_out() * rest_dim,
    );
    let eye = CMatrix::identity(rest_dim, rest_dim);
    for k in channel.kraus() {
        let big = k.kronecker(&eye);
        out += &big * permuted.matrix() * big.adjoint();
    }
    let new_dm = DensityMatrix::from_raw(out_qubits + rest.len(), out);
    let mut mapping = vec![None; n];
    for (rank, &q) in rest.iter().enumerate() {
        mapping[q] = Some(out_qubits + rank);
    }
    Ok((new_dm, mapping))
}

/// Measure the listed qubits in the computational basis and drop them.
/// Returns `(outcome, probability, reduced state)` branches plus the new
/// positions of the remaining qubits (same for every branch).
fn measure_and_remove(
    dm: &DensityMatrix,
    targets: &[usize],
) -> Result<(Vec<(Bits, f64, DensityMatrix)>, Vec<Option<usize>>)> {
    let n = dm.num_qubits();
    let keep: Vec<usize> = (0..n).filter(|q| !targets.contains(q)).collect();
    let mut mapping = vec![None; n];
    for (rank, &q) in keep.iter().enumerate() {
        mapping[q] = Some(rank);
    }
    if targets.is_empty() {
        return Ok((vec![(Bits::new(), 1.0, dm.clone())], mapping));
    }
    let mut branches = Vec::new();
    for idx in 0..1usize << targets.len() {
        let bits = crate::bits::index_to_bits(idx, targets.len());
        // project, then reduce
        let proj = project_on_bits(dm, targets, &bits)?;
        let p = proj.diagonal().sum().re;
        if p <= 1e-14 {
            continue;
        }
        let projected = DensityMatrix::from_raw(n, proj / C64::from(p));
        let reduced = projected.partial_trace(&keep)?;
        branches.push((bits, p, reduced));
    }
    Ok((branches, mapping))
}

fn project_on_bits(dm: &DensityMatrix, targets: &[usize], bits: &Bits) -> Result<CMatrix> {
    let n = dm.num_qubits();
    let dim = dm.dim();
    let mut out = CMatrix::zeros(dim, dim);
    let matches = |idx: usize| {
        targets
            .iter()
            .zip(bits)
            .all(|(&q, &b)| (idx >> (n - 1 - q)) & 1 == usize::from(b))
    };
    for r in 0..dim {
        if !matches(r) {
            continue;
        }
        for c in 0..dim {
            if matches(c) {
                out[(r, c)] = dm.matrix()[(r, c)];
            }
        }
    }
    Ok(out)
}

/// Embed an operator acting on `targets` into the full register.
pub fn embed_operator(op: &CMatrix, targets: &[usize], total_qubits: usize) -> Result<CMatrix> {
    if op.nrows() != 1 << targets.len() {
        return Err(Error::DimensionMismatch {
            context: "embedded operator",
            got: op.nrows(),
            expected: 1 << targets.len(),
        });
    }
    let dim = 1usize << total_qubits;
    let rest: Vec<usize> = (0..total_qubits).filter(|q| !targets.contains(q)).collect();
    let t_index = |idx: usize| -> usize {
        targets.iter().fold(0, |acc, &q| {
            (acc << 1) | ((idx >> (total_qubits - 1 - q)) & 1)
        })
    };
    let r_index = |idx: usize| -> usize {
        rest.iter().fold(0, |acc, &q| {
            (acc << 1) | ((idx >> (total_qubits - 1 - q)) & 1)
        })
    };
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            if r_index(r) == r_index(c) {
                out[(r, c)] = op[(t_index(r), t_index(c))];
            }
        }
    }
    Ok(out)
}

struct Work {
    prob: f64,
    dm: DensityMatrix,
    share: Vec<Vec<usize>>,
    aux: Vec<Vec<usize>>,
    x: Vec<Vec<usize>>,
    y: Vec<Vec<usize>>,
    broadcasts: Vec<Bits>,
}

impl Work {
    fn remap(&mut self, mapping: &[Option<usize>]) {
        let fix = |list: &mut Vec<usize>| {
            for q in list.iter_mut() {
                *q = mapping[*q].expect("register consumed while still tracked");
            }
        };
        for list in self
            .share
            .iter_mut()
            .chain(self.aux.iter_mut())
            .chain(self.x.iter_mut())
            .chain(self.y.iter_mut())
        {
            fix(list);
        }
    }
}

/// Run every party's action on a share pack, exactly.
pub fn split_shares(strategy: &DenseStrategy, pack: &SharePack) -> Result<Vec<SplitBranch>> {
    let n_parties = pack.shares.len();
    let mut state = pack.state.clone();
    let mut share_pos: Vec<Vec<usize>> = Vec::new();
    for share in &pack.shares {
        share_pos.push(pack.party_qubits(share.party)?);
    }
    let mut aux_pos: Vec<Vec<usize>> = vec![Vec::new(); n_parties];
    if let Some(aux) = &strategy.aux {
        if aux.widths.len() != n_parties {
            return Err(Error::LengthMismatch {
                context: "aux widths vs parties",
                got: aux.widths.len(),
                expected: n_parties,
            });
        }
        let offset = state.num_qubits();
        state = state.tensor(&aux.state)?;
        for p in 1..=n_parties {
            aux_pos[p - 1] = aux.party_qubits(p).iter().map(|q| q + offset).collect();
        }
    }
    let mut work = vec![Work {
        prob: 1.0,
        dm: state.to_density(),
        share: share_pos,
        aux: aux_pos,
        x: vec![Vec::new(); n_parties],
        y: vec![Vec::new(); n_parties],
        broadcasts: Vec::new(),
    }];
    for party_idx in 0..n_parties {
        let party = pack.shares[party_idx].party;
        let classical = pack.shares[party_idx].classical.clone();
        let qubits = work
            .first()
            .map(|w| w.share[party_idx].len() + w.aux[party_idx].len())
            .unwrap_or(0);
        let map = (strategy.party)(&PartyView {
            party,
            classical: &classical,
            qubits,
        })?;
        let mut next = Vec::new();
        for mut w in work {
            let mut targets = w.share[party_idx].clone();
            targets.extend(w.aux[party_idx].iter().copied());
            if map.channel.dim_out() != 1 << (map.x_qubits + map.y_qubits + map.m_qubits) {
                return Err(Error::DimensionMismatch {
                    context: "party map output",
                    got: map.channel.dim_out(),
                    expected: 1 << (map.x_qubits + map.y_qubits + map.m_qubits),
                });
            }
            w.share[party_idx].clear();
            w.aux[party_idx].clear();
            let (dm, mapping) = apply_channel_front(&w.dm, &map.channel, &targets)?;
            w.remap(&mapping);
            w.x[party_idx] = (0..map.x_qubits).collect();
            w.y[party_idx] = (map.x_qubits..map.x_qubits + map.y_qubits).collect();
            let m_block: Vec<usize> = (map.x_qubits + map.y_qubits
                ..map.x_qubits + map.y_qubits + map.m_qubits)
                .collect();
            let (branches, post_mapping) = measure_and_remove(&dm, &m_block)?;
            for (bits, p, reduced) in branches {
                let mut bw = Work {
                    prob: w.prob * p,
                    dm: reduced,
                    share: w.share.clone(),
                    aux: w.aux.clone(),
                    x: w.x.clone(),
                    y: w.y.clone(),
                    broadcasts: w.broadcasts.clone(),
                };
                bw.remap(&post_mapping);
                let mut announced = map.announce.clone();
                announced.extend(bits);
                bw.broadcasts.push(announced);
                next.push(bw);
            }
        }
        work = next;
        if work.len() as u64 > 1 << 20 {
            return Err(Error::EnumerationOverflow(work.len() as u64));
        }
    }
    Ok(work
        .into_iter()
        .map(|w| SplitBranch {
            probability: w.prob,
            broadcasts: w.broadcasts,
            state: w.dm,
            x_qubits: w.x.concat(),
            y_qubits: w.y.concat(),
        })
        .collect())
}

/// Run a ciphertext-splitting action on one encryption-game ciphertext.
pub fn split_ciphertext(
    strategy: &UeStrategy,
    coin: &Bits,
    ct: &UeCiphertext,
) -> Result<Vec<SplitBranch>> {
    let map = (strategy.action)(coin, &ct.classical)?;
    let mut work = Work {
        prob: 1.0,
        dm: ct.quantum.to_density(),
        share: vec![(0..ct.quantum.num_qubits()).collect()],
        aux: vec![Vec::new()],
        x: vec![Vec::new()],
        y: vec![Vec::new()],
        broadcasts: Vec::new(),
    };
    let targets = work.share[0].clone();
    work.share[0].clear();
    let (dm, mapping) = apply_channel_front(&work.dm, &map.channel, &targets)?;
    work.remap(&mapping);
    work.dm = dm;
    work.x[0] = (0..map.x_qubits).collect();
    work.y[0] = (map.x_qubits..map.x_qubits + map.y_qubits).collect();
    let m_block: Vec<usize> =
        (map.x_qubits + map.y_qubits..map.x_qubits + map.y_qubits + map.m_qubits).collect();
    let (branches, post_mapping) = measure_and_remove(&work.dm, &m_block)?;
    Ok(branches
        .into_iter()
        .map(|(bits, p, reduced)| {
            let mut w = Work {
                prob: p,
                dm: reduced,
                share: work.share.clone(),
                aux: work.aux.clone(),
                x: work.x.clone(),
                y: work.y.clone(),
                broadcasts: Vec::new(),
            };
            w.remap(&post_mapping);
            let mut announced = map.announce.clone();
            announced.extend(bits);
            SplitBranch {
                probability: w.prob,
                broadcasts: vec![announced],
                state: w.dm,
                x_qubits: w.x.concat(),
                y_qubits: w.y.concat(),
            }
        })
        .collect())
}

/// Joint probability that the two recoverers both output `target` on one
/// branch.
pub fn joint_hit(
    branch: &SplitBranch,
    transcript: &Transcript,
    recover_b: &Recoverer,
    recover_c: &Recoverer,
    target: &Bits,
) -> Result<f64> {
    let total = branch.state.num_qubits();
    let collect = |r: &Recoverer, qubits: &[usize]| -> Result<Option<GuessTotal>> {
        let mut scalar = 0.0;
        let mut operator: Option<CMatrix> = None;
        let mut any = false;
        for (guess, weight) in r.weights(transcript)? {
            if &guess != target {
                continue;
            }
            any = true;
            match weight {
                super::GuessWeight::Scalar(p) => scalar += p,
                super::GuessWeight::Operator(op) => {
                    let emb = embed_operator(&op, qubits, total)?;
                    operator = Some(match operator {
                        None => emb,
                        Some(acc) => acc + emb,
                    });
                }
            }
        }
        if !any {
            return Ok(None);
        }
        Ok(Some(GuessTotal { scalar, operator }))
    };
    let b = collect(recover_b, &branch.x_qubits)?;
    let c = collect(recover_c, &branch.y_qubits)?;
    let (b, c) = match (b, c) {
        (Some(b), Some(c)) => (b, c),
        _ => return Ok(0.0),
    };
    let value = match (b.operator, c.operator) {
        (None, None) => b.scalar * c.scalar,
        (Some(ob), None) => c.scalar * linalg::trace_product(&ob, branch.state.matrix()).re,
        (None, Some(oc)) => b.scalar * linalg::trace_product(&oc, branch.state.matrix()).re,
        (Some(ob), Some(oc)) => {
            let prod = &ob * &oc;
            linalg::trace_product(&prod, branch.state.matrix()).re
        }
    };
    Ok(value)
}

struct GuessTotal {
    scalar: f64,
    operator: Option<CMatrix>,
}

// ---------------------------------------------------------------------------
// shipped strategies
// ---------------------------------------------------------------------------

/// Measure the single-qubit ciphertext in the intermediate (Breidbart)
/// basis, broadcast the outcome, and let both recoverers unmask it with the
/// revealed key. Wins the conjugate-coding game with probability
/// `½ + 1/(2√2)`.
pub fn breidbart_cloner() -> UeStrategy {
    single_qubit_cloner("breidbart", gates::breidbart_basis())
}

/// Same split with a computational-basis measurement: wins with ¾.
pub fn computational_cloner() -> UeStrategy {
    single_qubit_cloner(
        "computational",
        [
            CVector::from_vec(vec![C64::from(1.0), C64::from(0.0)]),
            CVector::from_vec(vec![C64::from(0.0), C64::from(1.0)]),
        ],
    )
}

fn single_qubit_cloner(name: &str, basis: [CVector; 2]) -> UeStrategy {
    let unmask = |t: &Transcript| -> Vec<(Bits, f64)> {
        let o = t.broadcasts[0][0];
        let r = t.revealed[1];
        vec![(vec![o ^ r], 1.0)]
    };
    UeStrategy {
        name: name.into(),
        coins: UeStrategy::trivial_coins(),
        challenge: Box::new(|_| (vec![false], vec![true])),
        action: Box::new(move |_, _| PartyMap::measure_each(1, &basis, Bits::new())),
        recover_b: Recoverer::Classical(Box::new(unmask)),
        recover_c: Recoverer::Classical(Box::new(unmask)),
    }
}

/// Forward the ciphertext qubit to the first recoverer, who decrypts
/// optimally with the revealed key; the second recoverer flips a coin.
pub fn forward_to_b_cloner() -> UeStrategy {
    UeStrategy {
        name: "forward-to-b".into(),
        coins: UeStrategy::trivial_coins(),
        challenge: Box::new(|_| (vec![false], vec![true])),
        action: Box::new(|_, _| Ok(PartyMap::forward(1, true))),
        recover_b: Recoverer::Quantum {
            guess_bits: 1,
            povm: Box::new(|t: &Transcript| {
                let theta = t.revealed[0];
                let r = t.revealed[1];
                let mut elements = Vec::new();
                for guess in 0..2usize {
                    let v = gates::bb84_state((guess == 1) ^ r, theta);
                    elements.push(crate::qsim::povm::PovmElement {
                        label: guess as u64,
                        operator: v.to_density().matrix().clone(),
                    });
                }
                Povm::new(elements)
            }),
        },
        recover_c: Recoverer::uniform(1),
    }
}

/// Each quantum party of the basis-masked XOR scheme measures its qubit in
/// a fresh random basis and broadcasts `(basis, outcome)`; the basis party
/// broadcasts the basis string. Both recoverers XOR the outcomes.
pub fn random_basis_forward(n: usize) -> DenseStrategy {
    let decide = move |t: &Transcript| -> Vec<(Bits, f64)> {
        let mut parity = false;
        for i in 0..n {
            parity ^= t.broadcasts[i][1];
        }
        vec![(vec![parity], 1.0)]
    };
    DenseStrategy {
        name: format!("random-basis(n={n})"),
        aux: None,
        party: Box::new(move |view: &PartyView| {
            if view.party <= n {
                PartyMap::measure_random_basis(1)
            } else {
                Ok(PartyMap::announce_only(view.classical.clone()))
            }
        }),
        recover_b: Recoverer::Classical(Box::new(decide)),
        recover_c: Recoverer::Classical(Box::new(decide)),
    }
}

/// Forward every quantum share of the basis-masked scheme to the first
/// recoverer, who reconstructs exactly; the second flips a coin.
pub fn forward_all_to_b(n: usize) -> DenseStrategy {
    DenseStrategy {
        name: format!("forward-all-to-b(n={n})"),
        aux: None,
        party: Box::new(move |view: &PartyView| {
            if view.party <= n {
                Ok(PartyMap::forward(1, true))
            } else {
                Ok(PartyMap::announce_only(view.classical.clone()))
            }
        }),
        recover_b: Recoverer::Quantum {
            guess_bits: 1,
            povm: Box::new(move |t: &Transcript| {
                let theta = &t.broadcasts[n];
                let dim = 1usize << n;
                let mut elements = vec![CMatrix::zeros(dim, dim); 2];
                for r_idx in 0..dim {
                    let r = crate::bits::index_to_bits(r_idx, n);
                    let mut v = StateVector::zero(0);
                    for i in 0..n {
                        v = v.tensor(&gates::bb84_state(r[i], theta[i]))?;
                    }
                    let m = usize::from(crate::bits::parity(&r));
                    elements[m] += v.to_density().matrix();
                }
                Povm::new(
                    elements
                        .into_iter()
                        .enumerate()
                        .map(|(label, operator)| crate::qsim::povm::PovmElement {
                            label: label as u64,
                            operator,
                        })
                        .collect(),
                )
            }),
        },
        recover_c: Recoverer::uniform(1),
    }
}

/// Discard everything; both recoverers output a constant. Achieves exactly
/// the game baseline.
pub fn constant_strategy(guess: Bits) -> DenseStrategy {
    DenseStrategy {
        name: "constant".into(),
        aux: None,
        party: Box::new(|view: &PartyView| {
            Ok(PartyMap {
                channel: Channel::discard(view.qubits),
                x_qubits: 0,
                y_qubits: 0,
                m_qubits: 0,
                announce: Bits::new(),
            })
        }),
        recover_b: Recoverer::constant(guess.clone()),
        recover_c: Recoverer::constant(guess),
    }
}

/// Discard everything; both recoverers guess independently and uniformly.
pub fn independent_uniform_strategy(guess_bits: usize) -> DenseStrategy {
    DenseStrategy {
        name: "independent-uniform".into(),
        aux: None,
        party: Box::new(|view: &PartyView| {
            Ok(PartyMap {
                channel: Channel::discard(view.qubits),
                x_qubits: 0,
                y_qubits: 0,
                m_qubits: 0,
                announce: Bits::new(),
            })
        }),
        recover_b: Recoverer::uniform(guess_bits),
        recover_c: Recoverer::uniform(guess_bits),
    }
}
