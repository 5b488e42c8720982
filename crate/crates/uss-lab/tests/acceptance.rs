//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured values. Run with
//!
//! ```text
//! cargo test -p uss-lab --test acceptance -- --nocapture
//! ```
//!
//! Criteria 4 and 6 document known defects: the basis-masked XOR scheme
//! leaks exactly 2^{-n/2} to the coalition of all qubit holders, and the
//! port-teleportation attack at four ports on a 4-dimensional payload tops
//! out near 0.59. Both tests assert the stated thresholds anyway and are
//! expected red; the analysis lives in the repository notes.

use std::time::Instant;

use approx::assert_abs_diff_eq;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uss_lab::adversaries::dense::{breidbart_cloner, computational_cloner, forward_to_b_cloner};
use uss_lab::adversaries::{AbortMode, LowTAttack, PbtAttack, UssStrategy};
use uss_lab::games::reductions::chained_strategy_as_ue;
use uss_lab::games::{
    reprogram_indistinguishability_test, run_pv_from_uss, run_ue_ind, run_uss_ind,
    run_uss_search, xor_lemma_check, EvalMode, PvProver, QueryAdversary, Side,
};
use uss_lab::pauli::update::verify_update_identity;
use uss_lab::pauli::{Gate, GateKind, PauliKey};
use uss_lab::qsim::channel::random_channel;
use uss_lab::schemes::{
    hiding_distance, Bb84Scheme, ChainedScheme, ConjugateUe, PadScheme, QromScheme,
    QuantumEncoded, UssScheme,
};
use uss_lab::teleport::pbt_fidelity;

fn budget(name: &str, started: Instant, limit_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < limit_s,
        "{name} took {elapsed:.1}s, budget {limit_s:.0}s"
    );
}

/// Exact reconstruction probability, enumerated over the scheme randomness.
fn exact_correctness(scheme: &dyn UssScheme, m: &[bool]) -> f64 {
    let mut win = 0.0;
    for (p, pack) in scheme.share_branches(&m.to_vec()).unwrap() {
        for (out, q) in scheme.reconstruct_dist(&pack).unwrap() {
            if out == m {
                win += p * q;
            }
        }
    }
    win
}

#[test]
fn c01_correctness() {
    let t0 = Instant::now();
    for n in 1..=4usize {
        let scheme = Bb84Scheme::new(n).unwrap();
        for m in [false, true] {
            let w = exact_correctness(&scheme, &[m]);
            assert_abs_diff_eq!(w, 1.0, epsilon = 1e-9);
        }
    }
    for n in 2..=3usize {
        let scheme = ChainedScheme::new(n, 1).unwrap();
        for m in [false, true] {
            let w = exact_correctness(&scheme, &[m]);
            assert_abs_diff_eq!(w, 1.0, epsilon = 1e-9);
        }
    }
    // k = 8 blocks are too wide to enumerate; the sharing randomness is
    // sampled per seed and the per-pack reconstruction distribution is exact
    for n in 2..=3usize {
        let scheme = QromScheme::new(n, 8, 1, 71).unwrap();
        for seed in [1u64, 2, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for m in [false, true] {
                let pack = scheme.share(&vec![m], &mut rng).unwrap();
                let dist = scheme.reconstruct_dist(&pack).unwrap();
                assert_eq!(dist.len(), 1);
                assert_eq!(dist[0].0, vec![m]);
                assert_abs_diff_eq!(dist[0].1, 1.0, epsilon = 1e-9);
            }
        }
    }
    budget("c01", t0, 5.0);
    println!("acceptance 01 correctness: PASS (bb84 n<=4, chained n<=3, qrom n<=3 k=8 all exactly 1)");
}

#[test]
fn c02_single_qubit_cloning_value() {
    let t0 = Instant::now();
    let ue = ConjugateUe::new(1);
    let breidbart = run_ue_ind(&ue, &breidbart_cloner(), EvalMode::Exact).unwrap();
    let expected = 0.5 + 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    assert_abs_diff_eq!(breidbart.win_probability, expected, epsilon = 1e-6);
    let mut worst: f64 = 0.0;
    for s in [breidbart_cloner(), computational_cloner(), forward_to_b_cloner()] {
        let r = run_ue_ind(&ue, &s, EvalMode::Exact).unwrap();
        worst = worst.max(r.win_probability);
        assert!(
            r.win_probability <= 0.855 + 1e-6,
            "{} exceeded the cloning bound: {}",
            s.name,
            r.win_probability
        );
    }
    budget("c02", t0, 1.0);
    println!(
        "acceptance 02 single-qubit cloning: PASS (breidbart {:.7} = 1/2+1/(2sqrt2), worst shipped {:.7} <= 0.855)",
        breidbart.win_probability, worst
    );
}

#[test]
fn c03_xor_equality() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(31415);
    let mut tuples = 0usize;
    let mut worst: f64 = 0.0;
    'outer: loop {
        for n in [2usize, 3, 4] {
            let channels: Vec<_> = (0..n)
                .map(|_| random_channel(1, 2, 1 + (tuples % 3), &mut rng))
                .collect();
            for side in [Side::B, Side::C] {
                let (lhs, rhs) = xor_lemma_check(&channels, side).unwrap();
                let diff = (lhs - rhs).abs();
                worst = worst.max(diff);
                assert!(diff <= 1e-9, "tuple {tuples}: |{lhs} - {rhs}| = {diff}");
            }
            tuples += 1;
            if tuples >= 50 {
                break 'outer;
            }
        }
    }
    budget("c03", t0, 30.0);
    println!("acceptance 03 xor equality: PASS (50 seeded tuples over n in 2..4, worst |lhs-rhs| = {worst:.2e})");
}

#[test]
fn c04_hiding() {
    let t0 = Instant::now();
    let m0 = vec![false];
    let m1 = vec![true];
    let mut failures = Vec::new();
    let mut report = Vec::new();
    for n in 1..=3usize {
        let scheme = Bb84Scheme::new(n).unwrap();
        let d = hiding_distance(&scheme, &m0, &m1).unwrap();
        report.push(format!("bb84(n={n}) {d:.6}"));
        if d > 1e-9 {
            failures.push(format!("bb84(n={n}): worst subset distance {d:.6}"));
        }
    }
    for n in 2..=3usize {
        let scheme = ChainedScheme::new(n, 1).unwrap();
        let d = hiding_distance(&scheme, &m0, &m1).unwrap();
        report.push(format!("chained(n={n}) {d:.2e}"));
        if d > 1e-9 {
            failures.push(format!("chained(n={n}): {d}"));
        }
    }
    for n in 2..=3usize {
        let scheme = QromScheme::new(n, 4, 1, 5).unwrap();
        let d = hiding_distance(&scheme, &m0, &m1).unwrap();
        report.push(format!("qrom(n={n};k=4) {d:.2e}"));
        if d > 1e-9 {
            failures.push(format!("qrom(n={n}): {d}"));
        }
    }
    budget("c04", t0, 30.0);
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("acceptance 04 hiding: {verdict} ({})", report.join(", "));
    assert!(
        failures.is_empty(),
        "strict-subset hiding violated: {} — the conjugate-coded parity shares leak exactly \
         2^(-n/2) to the coalition of all qubit holders; see the repository notes",
        failures.join("; ")
    );
}

#[test]
fn c05_low_t_attack() {
    let t0 = Instant::now();
    let mut line = String::new();
    for kappa in 0..=3usize {
        let scheme = PadScheme::new(2, kappa).unwrap();
        let attack = UssStrategy::LowT(LowTAttack::new(AbortMode::SharedCoin));
        let r = run_uss_search(&scheme, &attack, EvalMode::Exact).unwrap();
        assert_abs_diff_eq!(r.win_probability, 0.5f64.powi(kappa as i32), epsilon = 1e-9);
        line.push_str(&format!("2^-{kappa}={:.4} ", r.win_probability));
    }
    let scheme = PadScheme::new(2, 1).unwrap();
    let attack = UssStrategy::LowT(LowTAttack::new(AbortMode::SharedCoin));
    let ind = run_uss_ind(&scheme, &attack, EvalMode::Exact).unwrap();
    assert_abs_diff_eq!(ind.win_probability, 0.75, epsilon = 1e-9);
    budget("c05", t0, 60.0);
    println!(
        "acceptance 05 low-T attack: PASS (search {line}; shared-coin distinguish at kappa=1 = {:.4})",
        ind.win_probability
    );
}

#[test]
fn c06_pbt_attack() {
    let t0 = Instant::now();
    let scheme = QuantumEncoded(PadScheme::new(2, 0).unwrap());
    let mut wins = Vec::new();
    for n in [1usize, 2, 4] {
        let r = run_uss_search(&scheme, &UssStrategy::Pbt(PbtAttack::new(n)), EvalMode::Exact)
            .unwrap();
        wins.push((n, r.win_probability));
    }
    for pair in wins.windows(2) {
        assert!(
            pair[1].1 >= pair[0].1 - 1e-9,
            "success not monotone: {:?}",
            wins
        );
    }
    budget("c06", t0, 300.0);
    let summary: Vec<String> = wins.iter().map(|(n, w)| format!("N={n}:{w:.4}")).collect();
    let final_win = wins.last().unwrap().1;
    let verdict = if final_win >= 0.7 { "PASS" } else { "FAIL" };
    println!(
        "acceptance 06 pbt attack: {verdict} (monotone {}; threshold 0.7 at N=4 {})",
        summary.join(" "),
        if final_win >= 0.7 { "met" } else { "missed" }
    );
    assert!(
        final_win >= 0.7,
        "port attack at N=4 reaches {final_win:.4} < 0.7: the standard port-teleportation \
         channel at d=4, N=4 has entanglement fidelity ~0.24, capping the attack at \
         1/2 + q/2 ~ 0.59; see the repository notes"
    );
}

#[test]
fn c07_pbt_fidelity() {
    let t0 = Instant::now();
    let mut last = 0.0;
    let mut values = Vec::new();
    for n in 1..=6usize {
        let f = pbt_fidelity(n, 2).unwrap().entanglement;
        assert!(f >= last - 1e-9, "fidelity dropped at N={n}: {f} < {last}");
        values.push(format!("{f:.4}"));
        last = f;
    }
    let f1 = pbt_fidelity(1, 2).unwrap().entanglement;
    assert_abs_diff_eq!(f1, 0.25, epsilon = 1e-9);
    budget("c07", t0, 120.0);
    println!(
        "acceptance 07 pbt fidelity: PASS (d=2, F_e over N=1..6: {}; F(1)=0.25 exactly)",
        values.join(" ")
    );
}

#[test]
fn c08_reduction_fidelity() {
    let t0 = Instant::now();
    // lifting chained-scheme strategies into the encryption game
    let mut checked = 0;
    for n in [2usize, 3] {
        let scheme = ChainedScheme::new(n, 1).unwrap();
        for build in [
            strategies::chained_measure_broadcast,
            strategies::chained_forward_to_b,
            strategies::chained_breidbart,
        ] {
            if n == 3 && checked >= 4 {
                continue;
            }
            let uss = run_uss_ind(&scheme, &UssStrategy::Dense(build(n)), EvalMode::Exact)
                .unwrap()
                .win_probability;
            let ue = chained_strategy_as_ue(&scheme, &build(n), &(vec![false], vec![true]))
                .unwrap()
                .win_probability;
            assert_abs_diff_eq!(uss, ue, epsilon = 1e-9);
            checked += 1;
        }
    }
    // lifting ciphertext strategies into the sharing game via teleportation
    let base = Bb84Scheme::new(1).unwrap();
    let compiled = uss_lab::schemes::UssCompiledUe::new(
        Bb84Scheme::new(1).unwrap(),
        uss_lab::schemes::MaskVariant::PaddedShare,
    )
    .unwrap();
    for build in [
        strategies::masked_measure_broadcast,
        strategies::masked_forward_to_b,
        strategies::masked_breidbart,
    ] {
        let ue = run_ue_ind(&compiled, &build(), EvalMode::Exact)
            .unwrap()
            .win_probability;
        let uss = run_uss_ind(
            &base,
            &UssStrategy::TeleportMask(Box::new(build())),
            EvalMode::Exact,
        )
        .unwrap()
        .win_probability;
        assert_abs_diff_eq!(ue, uss, epsilon = 1e-9);
        checked += 1;
    }
    budget("c08", t0, 60.0);
    println!("acceptance 08 reduction fidelity: PASS ({checked} adapter pairs agree to 1e-9)");
}

#[test]
fn c09_reprogramming() {
    let t0 = Instant::now();
    let (_, adv) =
        reprogram_indistinguishability_test(2, 8, QueryAdversary::Never, 1, 17).unwrap();
    assert!(adv.abs() <= 1e-12, "never-query advantage {adv}");
    let trials = 100_000u64;
    let (report, measured) = reprogram_indistinguishability_test(
        2,
        8,
        QueryAdversary::RandomPoints { q: 4 },
        trials,
        17,
    )
    .unwrap();
    let bound = report.direct_bound;
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    assert!(
        measured <= bound + 3.0 * sigma,
        "measured {measured} above {bound} + 3 sigma"
    );
    budget("c09", t0, 120.0);
    println!(
        "acceptance 09 reprogramming: PASS (never-query exactly 0; q=4 measured {measured:.6} <= {bound:.6} + 3s over {trials} trials)"
    );
}

#[test]
fn c10_pv_reduction() {
    let t0 = Instant::now();
    // honest prover
    for scheme in [PadScheme::new(2, 0).unwrap(), PadScheme::new(2, 2).unwrap()] {
        let honest = run_pv_from_uss(&scheme, PvProver::Honest).unwrap();
        assert_abs_diff_eq!(honest.win_probability, 1.0, epsilon = 1e-12);
    }
    let bb84 = Bb84Scheme::new(1).unwrap();
    assert_abs_diff_eq!(
        run_pv_from_uss(&bb84, PvProver::Honest).unwrap().win_probability,
        1.0,
        epsilon = 1e-12
    );
    // every shipped attack: the runner itself asserts acceptance equals the
    // mapped search value to 1e-9 and errors out otherwise
    let mut checked = 0;
    for kappa in [0usize, 1, 2] {
        let scheme = PadScheme::new(2, kappa).unwrap();
        let r = run_pv_from_uss(
            &scheme,
            PvProver::Strategy(UssStrategy::LowT(LowTAttack::new(AbortMode::SharedCoin))),
        )
        .unwrap();
        assert_abs_diff_eq!(r.win_probability, 0.5f64.powi(kappa as i32), epsilon = 1e-9);
        checked += 1;
    }
    let encoded = QuantumEncoded(PadScheme::new(2, 0).unwrap());
    let r = run_pv_from_uss(&encoded, PvProver::Strategy(UssStrategy::Pbt(PbtAttack::new(2))))
        .unwrap();
    assert!(r.win_probability < 1.0);
    checked += 1;
    // a generic one-round template
    let template = uss_lab::games::PvAttackTemplate {
        name: "forward-share".into(),
        aux: None,
        unitaries: [
            uss_lab::qsim::gates::identity_gate(1),
            uss_lab::qsim::gates::identity_gate(0),
        ],
        to_v0: [0, 0],
        povm0: uss_lab::adversaries::Recoverer::uniform(1),
        povm1: uss_lab::adversaries::Recoverer::Quantum {
            guess_bits: 1,
            povm: Box::new(|t: &uss_lab::adversaries::Transcript| {
                let theta = t.broadcasts[1][0];
                let mut elements = Vec::new();
                for guess in 0..2usize {
                    let v = uss_lab::qsim::gates::bb84_state(guess == 1, theta);
                    elements.push(uss_lab::qsim::povm::PovmElement {
                        label: guess as u64,
                        operator: v.to_density().matrix().clone(),
                    });
                }
                uss_lab::qsim::Povm::new(elements)
            }),
        },
    };
    let r = run_pv_from_uss(&bb84, PvProver::Template(Box::new(template))).unwrap();
    assert!(r.win_probability < 1.0);
    checked += 1;
    budget("c10", t0, 60.0);
    println!(
        "acceptance 10 pv reduction: PASS (honest accepts 1.0; {checked} attack acceptances equal their mapped search values)"
    );
}

#[test]
fn c11_pauli_frame_calculus() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    let mut checked = 0;
    for kind in [GateKind::X, GateKind::Z, GateKind::H, GateKind::P, GateKind::T] {
        for a in [false, true] {
            for b in [false, true] {
                let ok = verify_update_identity(
                    &Gate::new(kind, vec![0]).unwrap(),
                    &PauliKey::single(a, b),
                    6,
                    &mut rng,
                )
                .unwrap();
                assert!(ok, "{kind} failed at ({a},{b})");
                checked += 1;
            }
        }
    }
    for key_bits in 0..16u8 {
        let key = PauliKey::new(
            vec![key_bits & 1 == 1, key_bits & 2 == 2],
            vec![key_bits & 4 == 4, key_bits & 8 == 8],
        )
        .unwrap();
        let ok = verify_update_identity(
            &Gate::new(GateKind::Cnot, vec![0, 1]).unwrap(),
            &key,
            6,
            &mut rng,
        )
        .unwrap();
        assert!(ok, "CNOT failed at {key_bits:04b}");
        checked += 1;
    }
    budget("c11", t0, 10.0);
    println!(
        "acceptance 11 pauli frame: PASS ({checked} rule instances match numerical conjugation to 1e-9)"
    );
}

/// The strategy builders shared with the integration tests.
mod strategies {
    use uss_lab::adversaries::dense::{DenseStrategy, PartyMap, PartyView};
    use uss_lab::adversaries::{Recoverer, Transcript, UeStrategy};
    use uss_lab::bits::Bits;
    use uss_lab::qsim::gates;
    use uss_lab::schemes::{Bb84Scheme, UssScheme};

    fn computational_basis() -> [nalgebra::DVector<num_complex::Complex64>; 2] {
        [
            nalgebra::DVector::from_vec(vec![
                num_complex::Complex64::from(1.0),
                num_complex::Complex64::from(0.0),
            ]),
            nalgebra::DVector::from_vec(vec![
                num_complex::Complex64::from(0.0),
                num_complex::Complex64::from(1.0),
            ]),
        ]
    }

    fn chained_decode(n: usize) -> impl Fn(&Transcript) -> Vec<(Bits, f64)> + Clone {
        move |t: &Transcript| {
            let mut m = false;
            for i in 0..n {
                let holder = if i + 1 == n { 0 } else { i + 1 };
                let key = &t.broadcasts[holder][..2];
                let outcome = *t.broadcasts[i].last().unwrap();
                m ^= outcome ^ key[1];
            }
            vec![(vec![m], 1.0)]
        }
    }

    pub fn chained_measure_broadcast(n: usize) -> DenseStrategy {
        let decode = chained_decode(n);
        let decode2 = decode.clone();
        DenseStrategy {
            name: format!("chained-measure-broadcast(n={n})"),
            aux: None,
            party: Box::new(|view: &PartyView| {
                PartyMap::measure_each(view.qubits, &computational_basis(), view.classical.clone())
            }),
            recover_b: Recoverer::Classical(Box::new(decode)),
            recover_c: Recoverer::Classical(Box::new(decode2)),
        }
    }

    pub fn chained_breidbart(n: usize) -> DenseStrategy {
        let decode = chained_decode(n);
        let decode2 = decode.clone();
        DenseStrategy {
            name: format!("chained-breidbart(n={n})"),
            aux: None,
            party: Box::new(|view: &PartyView| {
                PartyMap::measure_each(view.qubits, &gates::breidbart_basis(), view.classical.clone())
            }),
            recover_b: Recoverer::Classical(Box::new(decode)),
            recover_c: Recoverer::Classical(Box::new(decode2)),
        }
    }

    pub fn chained_forward_to_b(n: usize) -> DenseStrategy {
        DenseStrategy {
            name: format!("chained-forward-to-b(n={n})"),
            aux: None,
            party: Box::new(|view: &PartyView| {
                Ok(PartyMap {
                    channel: uss_lab::qsim::Channel::identity(1 << view.qubits),
                    x_qubits: view.qubits,
                    y_qubits: 0,
                    m_qubits: 0,
                    announce: view.classical.clone(),
                })
            }),
            recover_b: Recoverer::Quantum {
                guess_bits: 1,
                povm: Box::new(move |t: &Transcript| {
                    let dim = 1usize << n;
                    let mut elements = vec![uss_lab::qsim::CMatrix::zeros(dim, dim); 2];
                    for pattern in 0..dim {
                        let outcome = uss_lab::bits::index_to_bits(pattern, n);
                        let mut v = uss_lab::qsim::StateVector::zero(0);
                        let mut m = false;
                        for i in 0..n {
                            let holder = if i + 1 == n { 0 } else { i + 1 };
                            let key = &t.broadcasts[holder][..2];
                            v = v.tensor(&gates::bb84_state(outcome[i], key[0])).unwrap();
                            m ^= outcome[i] ^ key[1];
                        }
                        elements[usize::from(m)] += v.to_density().matrix();
                    }
                    uss_lab::qsim::Povm::new(
                        elements
                            .into_iter()
                            .enumerate()
                            .map(|(label, operator)| uss_lab::qsim::povm::PovmElement {
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

    pub fn masked_measure_broadcast() -> UeStrategy {
        let decode = |t: &Transcript| -> Vec<(Bits, f64)> {
            let b0 = &t.broadcasts[0];
            let q1 = b0[b0.len() - 2];
            vec![(vec![q1], 1.0)]
        };
        UeStrategy {
            name: "masked-measure-broadcast".into(),
            coins: UeStrategy::trivial_coins(),
            challenge: Box::new(|_| (vec![false], vec![true])),
            action: Box::new(|_, classical| {
                PartyMap::measure_each(2, &computational_basis(), classical.to_vec())
            }),
            recover_b: Recoverer::Classical(Box::new(decode)),
            recover_c: Recoverer::Classical(Box::new(decode)),
        }
    }

    pub fn masked_forward_to_b() -> UeStrategy {
        UeStrategy {
            name: "masked-forward-to-b".into(),
            coins: UeStrategy::trivial_coins(),
            challenge: Box::new(|_| (vec![false], vec![true])),
            action: Box::new(|_, classical| {
                Ok(PartyMap {
                    channel: uss_lab::qsim::Channel::identity(4),
                    x_qubits: 2,
                    y_qubits: 0,
                    m_qubits: 0,
                    announce: classical.to_vec(),
                })
            }),
            recover_b: Recoverer::Quantum {
                guess_bits: 1,
                povm: Box::new(|t: &Transcript| {
                    let s = &t.broadcasts[0][..2];
                    let pad_bits = uss_lab::bits::xor(s, &t.revealed);
                    let (a, bpad) = (pad_bits[0], pad_bits[1]);
                    let recon = Bb84Scheme::new(1).unwrap().reconstruct_povm().unwrap();
                    let pad = uss_lab::adversaries::dense::embed_operator(
                        &gates::pauli_xz(a, bpad),
                        &[1],
                        2,
                    )?;
                    let elements = recon
                        .elements()
                        .iter()
                        .map(|e| uss_lab::qsim::povm::PovmElement {
                            label: e.label,
                            operator: &pad * &e.operator * pad.adjoint(),
                        })
                        .collect();
                    uss_lab::qsim::Povm::new(elements)
                }),
            },
            recover_c: Recoverer::uniform(1),
        }
    }

    pub fn masked_breidbart() -> UeStrategy {
        let decode = |t: &Transcript| -> Vec<(Bits, f64)> {
            let b0 = &t.broadcasts[0];
            vec![(vec![b0[b0.len() - 2]], 1.0)]
        };
        UeStrategy {
            name: "masked-breidbart".into(),
            coins: UeStrategy::trivial_coins(),
            challenge: Box::new(|_| (vec![false], vec![true])),
            action: Box::new(|_, classical| {
                PartyMap::measure_each(2, &gates::breidbart_basis(), classical.to_vec())
            }),
            recover_b: Recoverer::Classical(Box::new(decode)),
            recover_c: Recoverer::Classical(Box::new(decode)),
        }
    }
}
