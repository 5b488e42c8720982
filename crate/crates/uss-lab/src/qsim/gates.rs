//! Standard gate matrices and state constructors.
//!
//! `CNOT` maps `|a,b⟩` to `|a, b⊕a⟩`: the first (more significant) target is
//! the control.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8};

use super::{C64, CMatrix, CVector};

pub fn identity_gate(qubits: usize) -> CMatrix {
    let dim = 1 << qubits;
    CMatrix::identity(dim, dim)
}

pub fn x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::from(0.0), C64::from(1.0), C64::from(1.0), C64::from(0.0)])
}

pub fn y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::from(0.0),
            -C64::i(),
            C64::i(),
            C64::from(0.0),
        ],
    )
}

pub fn z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::from(1.0), C64::from(0.0), C64::from(0.0), C64::from(-1.0)])
}

pub fn h() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::from(FRAC_1_SQRT_2),
            C64::from(FRAC_1_SQRT_2),
            C64::from(FRAC_1_SQRT_2),
            C64::from(-FRAC_1_SQRT_2),
        ],
    )
}

/// Phase gate `diag(1, i)`.
pub fn p() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::from(1.0), C64::from(0.0), C64::from(0.0), C64::i()])
}

/// `diag(1, e^{iπ/4})`.
pub fn t() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            C64::from(1.0),
            C64::from(0.0),
            C64::from(0.0),
            C64::from_polar(1.0, FRAC_PI_4),
        ],
    )
}

pub fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0b00, 0b00)] = C64::from(1.0);
    m[(0b01, 0b01)] = C64::from(1.0);
    m[(0b10, 0b11)] = C64::from(1.0);
    m[(0b11, 0b10)] = C64::from(1.0);
    m
}

/// `X^a Z^b` as a single-qubit operator.
pub fn pauli_xz(a: bool, b: bool) -> CMatrix {
    let mut m = identity_gate(1);
    if b {
        m = z() * m;
    }
    if a {
        m = x() * m;
    }
    m
}

/// The Breidbart basis, the midpoint between computational and Hadamard
/// bases: `{cos(π/8)|0⟩ + sin(π/8)|1⟩, −sin(π/8)|0⟩ + cos(π/8)|1⟩}`.
pub fn breidbart_basis() -> [CVector; 2] {
    let c = FRAC_PI_8.cos();
    let s = FRAC_PI_8.sin();
    [
        CVector::from_vec(vec![C64::from(c), C64::from(s)]),
        CVector::from_vec(vec![C64::from(-s), C64::from(c)]),
    ]
}

/// `(1/√d) Σ_i |i⟩|i⟩` over two `qubits_per_side`-qubit registers.
pub fn max_entangled(qubits_per_side: usize) -> super::StateVector {
    let d = 1usize << qubits_per_side;
    let mut amps = CVector::zeros(d * d);
    let w = C64::from(1.0 / (d as f64).sqrt());
    for i in 0..d {
        amps[i * d + i] = w;
    }
    super::StateVector::from_raw(2 * qubits_per_side, amps)
}

/// A single-qubit BB84 state `H^θ |x⟩`.
pub fn bb84_state(x: bool, theta: bool) -> super::StateVector {
    let s = super::StateVector::basis(1, usize::from(x));
    if theta {
        s.apply_unitary(&h(), &[0]).unwrap()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn p_squared_is_z() {
        let p2 = p() * p();
        assert_abs_diff_eq!(super::super::linalg::max_abs_diff(&p2, &z()), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn t_squared_is_p() {
        let t2 = t() * t();
        assert_abs_diff_eq!(super::super::linalg::max_abs_diff(&t2, &p()), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn epr_matches_circuit() {
        let circuit = super::super::StateVector::zero(2)
            .apply_unitary(&h(), &[0])
            .unwrap()
            .apply_unitary(&cnot(), &[0, 1])
            .unwrap();
        assert_abs_diff_eq!(max_entangled(1).fidelity(&circuit), 1.0, epsilon = 1e-12);
    }
}
