//! Clifford+T gates and circuits, with the one-gate-per-line text format
//! used by the CLI's `--circuit` flag:
//!
//! ```text
//! H 3
//! CNOT 0 1
//! T 2
//! P 2 # guess=1
//! ```
//!
//! A `P` line carrying `# guess=1` is a guess gadget inserted immediately
//! after a `T` gate by the homomorphic-evaluation attack; the update
//! function treats it differently from a structural `P`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::{gates, CMatrix, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Z,
    H,
    P,
    Cnot,
    T,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }

    pub fn matrix(self) -> CMatrix {
        match self {
            GateKind::X => gates::x(),
            GateKind::Z => gates::z(),
            GateKind::H => gates::h(),
            GateKind::P => gates::p(),
            GateKind::Cnot => gates::cnot(),
            GateKind::T => gates::t(),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::P => "P",
            GateKind::Cnot => "CNOT",
            GateKind::T => "T",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    /// One target, or `[control, target]` for CNOT.
    pub targets: Vec<usize>,
    /// Marks an inserted `P` guess gadget.
    pub guess_gadget: bool,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        Self::build(kind, targets, false)
    }

    /// The annotated `P` gadget standing for a guess of 1 on the preceding T.
    pub fn gadget(target: usize) -> Self {
        Self {
            kind: GateKind::P,
            targets: vec![target],
            guess_gadget: true,
        }
    }

    fn build(kind: GateKind, targets: Vec<usize>, guess_gadget: bool) -> Result<Self> {
        if targets.len() != kind.arity() {
            return Err(Error::MalformedCircuit(format!(
                "{kind} takes {} target(s), got {}",
                kind.arity(),
                targets.len()
            )));
        }
        if kind == GateKind::Cnot && targets[0] == targets[1] {
            return Err(Error::MalformedCircuit(
                "CNOT targets must be distinct".into(),
            ));
        }
        if guess_gadget && kind != GateKind::P {
            return Err(Error::MalformedCircuit(
                "only P gates can carry a guess annotation".into(),
            ));
        }
        Ok(Self {
            kind,
            targets,
            guess_gadget,
        })
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        if self.guess_gadget {
            write!(f, " # guess=1")?;
        }
        Ok(())
    }
}

/// An ordered gate list on a fixed-width register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            for &t in &g.targets {
                if t >= num_qubits {
                    return Err(Error::QubitOutOfRange {
                        index: t,
                        num_qubits,
                    });
                }
            }
        }
        Ok(Self { num_qubits, gates })
    }

    /// Number of T gates, recomputed from the gate list.
    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind == GateKind::T).count()
    }

    /// Apply the whole circuit to a state (global phases kept as-is).
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let mut s = state.clone();
        for g in &self.gates {
            s = s.apply_unitary(&g.kind.matrix(), &g.targets)?;
        }
        Ok(s)
    }

    /// Insert a guess gadget after the `j`-th T gate for every set bit of
    /// `pattern` (bit `j` ↔ T gate `j` in circuit order).
    pub fn with_gadgets(&self, pattern: &[bool]) -> Result<Circuit> {
        if pattern.len() != self.t_count() {
            return Err(Error::LengthMismatch {
                context: "gadget pattern vs T count",
                got: pattern.len(),
                expected: self.t_count(),
            });
        }
        let mut gates = Vec::with_capacity(self.gates.len() + pattern.len());
        let mut j = 0;
        for g in &self.gates {
            gates.push(g.clone());
            if g.kind == GateKind::T {
                if pattern[j] {
                    gates.push(Gate::gadget(g.targets[0]));
                }
                j += 1;
            }
        }
        Circuit::new(self.num_qubits, gates)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut gates = Vec::new();
        let mut max_qubit = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (body, annotation) = match line.split_once('#') {
                Some((b, a)) => (b.trim(), Some(a.trim())),
                None => (line, None),
            };
            let mut tokens = body.split_whitespace();
            let kind = match tokens.next() {
                Some("X") => GateKind::X,
                Some("Z") => GateKind::Z,
                Some("H") => GateKind::H,
                Some("P") => GateKind::P,
                Some("CNOT") => GateKind::Cnot,
                Some("T") => GateKind::T,
                Some(other) => {
                    return Err(Error::CircuitParse {
                        line: lineno + 1,
                        message: format!("unknown gate kind {other}"),
                    })
                }
                None => continue,
            };
            let targets: Vec<usize> = tokens
                .map(|t| {
                    t.parse().map_err(|_| Error::CircuitParse {
                        line: lineno + 1,
                        message: format!("bad qubit index {t}"),
                    })
                })
                .collect::<Result<_>>()?;
            let guess_gadget = match annotation {
                None => false,
                Some("guess=1") => true,
                Some(other) => {
                    return Err(Error::CircuitParse {
                        line: lineno + 1,
                        message: format!("unknown annotation {other}"),
                    })
                }
            };
            for &t in &targets {
                max_qubit = max_qubit.max(t + 1);
            }
            gates.push(Gate::build(kind, targets, guess_gadget).map_err(|e| {
                Error::CircuitParse {
                    line: lineno + 1,
                    message: e.to_string(),
                }
            })?);
        }
        Circuit::new(max_qubit, gates)
    }
}
