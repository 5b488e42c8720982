//! Key-update rules for pushing a quantum one-time pad through Clifford+T
//! gates, and the guess-gadget update function with its abort rule.
//!
//! With the state in the form `X^a Z^b |ψ⟩`, applying a gate G leaves
//! `X^{a'} Z^{b'} [residue] G |ψ⟩` where, ignoring global phase,
//!
//! ```text
//! X:    (a, b) → (a, b)
//! Z:    (a, b) → (a, b)
//! H:    (a, b) → (b, a)
//! P:    (a, b) → (a, a⊕b)
//! CNOT: (a₁,b₁),(a₂,b₂) → (a₁, b₁⊕b₂), (a₁⊕a₂, b₂)   (1 = control)
//! T:    (a, b) → (a, b⊕a)  with residue P^a pending
//! ```
//!
//! A T gate followed by its correct guess gadget `P^{a}` composes to the
//! clean rule `(a, b) → (a, b⊕a)` with no residue: the gadget cancels the
//! pending `P^a`, absorbing `P² = Z` into the Z-pad.

use rand::Rng;

use crate::error::{Error, Result};
use crate::qsim::channel::random_pure_state;
use crate::qsim::{gates, TOL_STRUCT};

use super::circuit::{Circuit, Gate, GateKind};
use super::key::{apply_qotp, PauliKey};

/// A pending phase-gate residue `P^exponent` on one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    pub qubit: usize,
    pub exponent: bool,
}

/// Result of pushing the pad through a single gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateUpdate {
    pub key: PauliKey,
    /// `Some` exactly for T gates; the caller must cancel it.
    pub residue: Option<Residue>,
}

/// Push a full-register key through one gate.
pub fn update_gate(key: &PauliKey, gate: &Gate) -> Result<GateUpdate> {
    let mut out = key.clone();
    for &t in &gate.targets {
        if t >= key.len() {
            return Err(Error::QubitOutOfRange {
                index: t,
                num_qubits: key.len(),
            });
        }
    }
    let residue = match gate.kind {
        GateKind::X | GateKind::Z => None,
        GateKind::H => {
            let t = gate.targets[0];
            out.a.swap(t, t); // no-op, kept for symmetry with the rule table
            std::mem::swap(&mut out.a[t], &mut out.b[t]);
            None
        }
        GateKind::P => {
            let t = gate.targets[0];
            out.b[t] ^= out.a[t];
            None
        }
        GateKind::Cnot => {
            let (c, t) = (gate.targets[0], gate.targets[1]);
            out.b[c] ^= key.b[t];
            out.a[t] ^= key.a[c];
            None
        }
        GateKind::T => {
            let t = gate.targets[0];
            out.b[t] ^= out.a[t];
            Some(Residue {
                qubit: t,
                exponent: key.a[t],
            })
        }
    };
    Ok(GateUpdate { key: out, residue })
}

/// Outcome of walking a whole circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpdateOutcome {
    /// Final correction key `(a*, b*)`.
    Key(PauliKey),
    /// Some T gate's guess gadget did not match the pad bit at that point.
    Abort,
}

impl UpdateOutcome {
    pub fn key(&self) -> Option<&PauliKey> {
        match self {
            UpdateOutcome::Key(k) => Some(k),
            UpdateOutcome::Abort => None,
        }
    }

    pub fn is_abort(&self) -> bool {
        matches!(self, UpdateOutcome::Abort)
    }
}

/// Every guess gadget must sit immediately after a T gate on the same qubit.
fn validate_gadget_placement(circuit: &Circuit) -> Result<()> {
    for (i, g) in circuit.gates.iter().enumerate() {
        if !g.guess_gadget {
            continue;
        }
        let ok = i > 0
            && circuit.gates[i - 1].kind == GateKind::T
            && circuit.gates[i - 1].targets[0] == g.targets[0];
        if !ok {
            return Err(Error::MalformedCircuit(format!(
                "guess gadget at gate {i} does not immediately follow a T on qubit {}",
                g.targets[0]
            )));
        }
    }
    Ok(())
}

/// Walk the circuit pushing `key0` through. At each T gate with current pad
/// bit `a'`, the immediately following gate must be the gadget `P^{a'}`
/// (present iff `a' = 1`); on a match the combined rule `(a', b') → (a',
/// b'⊕a')` applies, otherwise the walk aborts. Structural problems (a gadget
/// not attached to a T) are errors, not aborts.
pub fn update_function(circuit: &Circuit, key0: &PauliKey) -> Result<UpdateOutcome> {
    if key0.len() != circuit.num_qubits {
        return Err(Error::LengthMismatch {
            context: "key vs circuit width",
            got: key0.len(),
            expected: circuit.num_qubits,
        });
    }
    validate_gadget_placement(circuit)?;
    let mut key = key0.clone();
    let mut i = 0;
    while i < circuit.gates.len() {
        let gate = &circuit.gates[i];
        match gate.kind {
            GateKind::T => {
                let t = gate.targets[0];
                let guessed_one = circuit
                    .gates
                    .get(i + 1)
                    .is_some_and(|n| n.guess_gadget && n.targets[0] == t);
                if guessed_one != key.a[t] {
                    return Ok(UpdateOutcome::Abort);
                }
                key.b[t] ^= key.a[t];
                i += if guessed_one { 2 } else { 1 };
            }
            _ => {
                key = update_gate(&key, gate)?.key;
                i += 1;
            }
        }
    }
    Ok(UpdateOutcome::Key(key))
}

/// Numerically certify one update rule: for random states, check
/// `G · QOTP(key) |ψ⟩ = QOTP(key') · P^e · G |ψ⟩` up to global phase.
pub fn verify_update_identity(
    gate: &Gate,
    key: &PauliKey,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool> {
    let n = key.len();
    let targets: Vec<usize> = (0..n).collect();
    let update = update_gate(key, gate)?;
    for _ in 0..trials.max(1) {
        let psi = random_pure_state(n, rng);
        let lhs = apply_qotp(&psi, key, &targets)?.apply_unitary(&gate.kind.matrix(), &gate.targets)?;
        let mut rhs = psi.apply_unitary(&gate.kind.matrix(), &gate.targets)?;
        if let Some(res) = update.residue {
            if res.exponent {
                rhs = rhs.apply_unitary(&gates::p(), &[res.qubit])?;
            }
        }
        rhs = apply_qotp(&rhs, &update.key, &targets)?;
        if (lhs.fidelity(&rhs) - 1.0).abs() > TOL_STRUCT {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn key1(a: u8, b: u8) -> PauliKey {
        PauliKey::single(a == 1, b == 1)
    }

    #[test]
    fn h_rule() {
        let up = update_gate(&key1(1, 0), &Gate::new(GateKind::H, vec![0]).unwrap()).unwrap();
        assert_eq!(up.key, key1(0, 1));
        assert_eq!(up.residue, None);
    }

    #[test]
    fn p_rule() {
        let up = update_gate(&key1(1, 1), &Gate::new(GateKind::P, vec![0]).unwrap()).unwrap();
        assert_eq!(up.key, key1(1, 0));
    }

    #[test]
    fn cnot_rule() {
        let key = PauliKey::new(vec![true, false], vec![false, true]).unwrap();
        let up = update_gate(&key, &Gate::new(GateKind::Cnot, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(up.key, PauliKey::new(vec![true, true], vec![true, true]).unwrap());
    }

    #[test]
    fn t_rule_with_residue() {
        let up = update_gate(&key1(1, 0), &Gate::new(GateKind::T, vec![0]).unwrap()).unwrap();
        assert_eq!(up.key, key1(1, 1));
        assert_eq!(
            up.residue,
            Some(Residue {
                qubit: 0,
                exponent: true
            })
        );
    }

    #[test]
    fn all_rules_match_numerics_exhaustively() {
        // every Clifford gate, all 4 (or 16) key values, plus T with residue
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for kind in [GateKind::X, GateKind::Z, GateKind::H, GateKind::P, GateKind::T] {
            let gate = Gate::new(kind, vec![0]).unwrap();
            for a in [false, true] {
                for b in [false, true] {
                    let key = PauliKey::single(a, b);
                    assert!(
                        verify_update_identity(&gate, &key, 4, &mut rng).unwrap(),
                        "{kind} failed at key ({a},{b})"
                    );
                }
            }
        }
        let gate = Gate::new(GateKind::Cnot, vec![0, 1]).unwrap();
        for bits in 0..16u8 {
            let key = PauliKey::new(
                vec![bits & 1 == 1, bits & 2 == 2],
                vec![bits & 4 == 4, bits & 8 == 8],
            )
            .unwrap();
            assert!(
                verify_update_identity(&gate, &key, 4, &mut rng).unwrap(),
                "CNOT failed at key {bits:04b}"
            );
        }
    }

    #[test]
    fn t_without_residue_fails_when_a_is_one() {
        // the identity only holds with the P residue in place
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let gate = Gate::new(GateKind::T, vec![0]).unwrap();
        let key = key1(1, 0);
        let update = update_gate(&key, &gate).unwrap();
        let psi = random_pure_state(1, &mut rng);
        let lhs = apply_qotp(&psi, &key, &[0])
            .unwrap()
            .apply_unitary(&gates::t(), &[0])
            .unwrap();
        let rhs_no_residue = apply_qotp(
            &psi.apply_unitary(&gates::t(), &[0]).unwrap(),
            &update.key,
            &[0],
        )
        .unwrap();
        assert!((lhs.fidelity(&rhs_no_residue) - 1.0).abs() > 1e-3);
    }

    #[test]
    fn clifford_only_circuit_never_aborts() {
        let c: Circuit = "H 0\nCNOT 0 1\nP 1\nZ 0\n".parse().unwrap();
        for bits in 0..16u8 {
            let key = PauliKey::new(
                vec![bits & 1 == 1, bits & 2 == 2],
                vec![bits & 4 == 4, bits & 8 == 8],
            )
            .unwrap();
            let out = update_function(&c, &key).unwrap();
            assert!(out.key().is_some());
        }
    }

    #[test]
    fn update_function_equals_gate_fold_on_cliffords() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let kinds = [GateKind::X, GateKind::Z, GateKind::H, GateKind::P, GateKind::Cnot];
        for _ in 0..50 {
            let mut gates_list = Vec::new();
            for _ in 0..8 {
                let kind = kinds[rng.gen_range(0..kinds.len())];
                let gate = if kind == GateKind::Cnot {
                    let c = rng.gen_range(0..3);
                    let mut t = rng.gen_range(0..3);
                    while t == c {
                        t = rng.gen_range(0..3);
                    }
                    Gate::new(kind, vec![c, t]).unwrap()
                } else {
                    Gate::new(kind, vec![rng.gen_range(0..3)]).unwrap()
                };
                gates_list.push(gate);
            }
            let circuit = Circuit::new(3, gates_list.clone()).unwrap();
            let key0 = PauliKey::random(3, &mut rng);
            let walked = update_function(&circuit, &key0).unwrap();
            let folded = gates_list
                .iter()
                .fold(key0, |k, g| update_gate(&k, g).unwrap().key);
            assert_eq!(walked.key().unwrap(), &folded);
        }
    }

    #[test]
    fn gadgeted_t_success_and_abort() {
        // [T, gadget-P] with key (1,0): success, final key (1,1)
        let c = Circuit::new(
            1,
            vec![Gate::new(GateKind::T, vec![0]).unwrap(), Gate::gadget(0)],
        )
        .unwrap();
        assert_eq!(
            update_function(&c, &key1(1, 0)).unwrap(),
            UpdateOutcome::Key(key1(1, 1))
        );
        // [T] alone with key (1,0): abort
        let bare = Circuit::new(1, vec![Gate::new(GateKind::T, vec![0]).unwrap()]).unwrap();
        assert_eq!(update_function(&bare, &key1(1, 0)).unwrap(), UpdateOutcome::Abort);
        // [T] alone with key (0,b): fine
        assert_eq!(
            update_function(&bare, &key1(0, 1)).unwrap(),
            UpdateOutcome::Key(key1(0, 1))
        );
        // gadget present but pad bit is 0: abort
        assert_eq!(update_function(&c, &key1(0, 0)).unwrap(), UpdateOutcome::Abort);
    }

    #[test]
    fn stray_gadget_is_malformed() {
        let c = Circuit::new(1, vec![Gate::gadget(0)]).unwrap();
        assert!(matches!(
            update_function(&c, &PauliKey::zero(1)),
            Err(Error::MalformedCircuit(_))
        ));
        let c2 = Circuit::new(
            2,
            vec![Gate::new(GateKind::T, vec![0]).unwrap(), Gate::gadget(1)],
        )
        .unwrap();
        assert!(update_function(&c2, &PauliKey::zero(2)).is_err());
    }

    #[test]
    fn exactly_one_gadget_pattern_accepted() {
        // exhaustively for κ ≤ 4: exactly 1 of the 2^κ patterns survives
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for kappa in 1..=4usize {
            let mut gates_list = vec![Gate::new(GateKind::H, vec![0]).unwrap()];
            for j in 0..kappa {
                gates_list.push(Gate::new(GateKind::T, vec![j % 2]).unwrap());
                gates_list.push(Gate::new(GateKind::Cnot, vec![0, 1]).unwrap());
            }
            let base = Circuit::new(2, gates_list).unwrap();
            let key0 = PauliKey::random(2, &mut rng);
            let mut accepted = 0;
            for pattern_bits in 0..1u32 << kappa {
                let pattern: Vec<bool> =
                    (0..kappa).map(|j| (pattern_bits >> j) & 1 == 1).collect();
                let gadgeted = base.with_gadgets(&pattern).unwrap();
                if update_function(&gadgeted, &key0).unwrap().key().is_some() {
                    accepted += 1;
                }
            }
            assert_eq!(accepted, 1, "κ = {kappa}");
        }
    }

    #[test]
    fn gadgeted_circuit_identity_holds_numerically() {
        // on the accepted pattern, the final key corrects the evaluated state
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base: Circuit = "H 0\nT 0\nCNOT 0 1\nT 1\nH 1\n".parse().unwrap();
        let key0 = PauliKey::random(2, &mut rng);
        for pattern_bits in 0..4u32 {
            let pattern = vec![pattern_bits & 1 == 1, pattern_bits & 2 == 2];
            let gadgeted = base.with_gadgets(&pattern).unwrap();
            if let UpdateOutcome::Key(kstar) = update_function(&gadgeted, &key0).unwrap() {
                let psi = random_pure_state(2, &mut rng);
                let lhs = gadgeted.apply(&apply_qotp(&psi, &key0, &[0, 1]).unwrap()).unwrap();
                let rhs = apply_qotp(&base.apply(&psi).unwrap(), &kstar, &[0, 1]).unwrap();
                assert!((lhs.fidelity(&rhs) - 1.0).abs() < 1e-9);
            }
        }
    }
}
