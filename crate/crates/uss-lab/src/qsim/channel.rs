//! CPTP maps in Kraus form, plus seeded random generators for states,
//! unitaries and channels.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::linalg;
use super::state::DensityMatrix;
use super::{C64, CMatrix, CVector, StateVector, TOL_STRUCT};

/// A completely positive trace-preserving map given by Kraus operators.
/// Input and output dimensions may differ.
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<CMatrix>,
    dim_in: usize,
    dim_out: usize,
}

impl Channel {
    /// Build from Kraus operators, checking `Σ K†K = I` to [`TOL_STRUCT`].
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let (dim_out, dim_in) = (first.nrows(), first.ncols());
        let mut sum = CMatrix::zeros(dim_in, dim_in);
        for k in &kraus {
            if k.nrows() != dim_out || k.ncols() != dim_in {
                return Err(Error::InvalidChannel(
                    "Kraus operators have mixed dimensions".into(),
                ));
            }
            sum += k.adjoint() * k;
        }
        if linalg::max_abs_diff(&sum, &linalg::identity(dim_in)) > TOL_STRUCT {
            return Err(Error::InvalidChannel(
                "Kraus operators are not trace preserving".into(),
            ));
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
        })
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Identity channel on `dim`.
    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![linalg::identity(dim)],
            dim_in: dim,
            dim_out: dim,
        }
    }

    /// Channel applying a single isometry or unitary.
    pub fn from_isometry(v: CMatrix) -> Result<Self> {
        Self::new(vec![v])
    }

    /// Trace out the input and prepare `replacement`.
    pub fn replace_with(replacement: &DensityMatrix, dim_in: usize) -> Self {
        // Kraus ops √λ_j |v_j⟩⟨i|: one per (eigenvector, input basis state).
        let (values, vectors) = linalg::hermitian_eigen(replacement.matrix());
        let mut kraus = Vec::new();
        for (j, &l) in values.iter().enumerate() {
            if l <= 0.0 {
                continue;
            }
            for i in 0..dim_in {
                let mut k = CMatrix::zeros(replacement.dim(), dim_in);
                for r in 0..replacement.dim() {
                    k[(r, i)] = C64::from(l.sqrt()) * vectors[(r, j)];
                }
                kraus.push(k);
            }
        }
        Self {
            kraus,
            dim_in,
            dim_out: replacement.dim(),
        }
    }

    /// Trace out the whole input register (output dimension 1).
    pub fn discard(in_qubits: usize) -> Self {
        let dim = 1usize << in_qubits;
        let kraus = (0..dim)
            .map(|i| {
                let mut k = CMatrix::zeros(1, dim);
                k[(0, i)] = C64::from(1.0);
                k
            })
            .collect();
        Self {
            kraus,
            dim_in: dim,
            dim_out: 1,
        }
    }

    /// Measure in the computational basis and keep the outcome as a basis
    /// state (a fully dephasing channel).
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| {
                let mut k = CMatrix::zeros(dim, dim);
                k[(i, i)] = C64::from(1.0);
                k
            })
            .collect();
        Self {
            kraus,
            dim_in: dim,
            dim_out: dim,
        }
    }

    /// Apply to a full density matrix of matching dimension.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                context: "channel input",
                got: rho.dim(),
                expected: self.dim_in,
            });
        }
        let mut out = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out += k * rho.matrix() * k.adjoint();
        }
        let qubits = self.dim_out.trailing_zeros() as usize;
        Ok(DensityMatrix::from_raw(qubits, out))
    }
}

/// Sample a complex matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-random unitary via QR of a Ginibre matrix with phase fixing.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = ginibre(dim, dim, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..dim {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::from(1.0) };
        for row in 0..dim {
            q[(row, c)] *= phase;
        }
    }
    q
}

/// Haar-random pure state on `num_qubits`.
pub fn random_pure_state(num_qubits: usize, rng: &mut impl Rng) -> StateVector {
    let dim = 1usize << num_qubits;
    let g = ginibre(dim, 1, rng);
    let v = CVector::from_iterator(dim, g.iter().cloned());
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_raw(num_qubits, v / C64::from(n))
}

/// Random full-rank density matrix (Hilbert-Schmidt-ish ensemble).
pub fn random_density(num_qubits: usize, rng: &mut impl Rng) -> DensityMatrix {
    let dim = 1usize << num_qubits;
    let g = ginibre(dim, dim, rng);
    let m = &g * g.adjoint();
    let tr = linalg::trace(&m).re;
    DensityMatrix::from_raw(num_qubits, m / C64::from(tr))
}

/// Random CPTP map from `in_qubits` to `out_qubits` via a Stinespring
/// isometry with `env_dim`-dimensional environment.
pub fn random_channel(
    in_qubits: usize,
    out_qubits: usize,
    env_dim: usize,
    rng: &mut impl Rng,
) -> Channel {
    let din = 1usize << in_qubits;
    let dout = 1usize << out_qubits;
    // Isometry din → dout·env from the first din columns of a Haar unitary.
    let u = random_unitary(dout * env_dim, rng);
    let v = u.columns(0, din).into_owned();
    // Kraus operators K_e[i, j] = V[(i, e), j]
    let kraus = (0..env_dim)
        .map(|e| CMatrix::from_fn(dout, din, |i, j| v[(i * env_dim + e, j)]))
        .collect();
    Channel::new(kraus).expect("stinespring dilation is trace preserving")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(4, &mut rng);
        let id = linalg::identity(4);
        assert!(linalg::max_abs_diff(&(&u * u.adjoint()), &id) < 1e-10);
    }

    #[test]
    fn random_channel_preserves_trace_and_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..25 {
            let ch = random_channel(1, 2, 1 + trial % 4, &mut rng);
            let rho = random_density(1, &mut rng);
            let out = ch.apply(&rho).unwrap();
            assert_abs_diff_eq!(out.trace(), 1.0, epsilon = 1e-9);
            let (vals, _) = linalg::hermitian_eigen(out.matrix());
            assert!(*vals.last().unwrap() > -1e-9);
        }
    }

    #[test]
    fn replace_channel_outputs_replacement() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let target = random_density(1, &mut rng);
        let ch = Channel::replace_with(&target, 4);
        let rho = random_density(2, &mut rng);
        let out = ch.apply(&rho).unwrap();
        assert!(linalg::max_abs_diff(out.matrix(), target.matrix()) < 1e-10);
    }

    #[test]
    fn non_tp_rejected() {
        let k = CMatrix::from_row_slice(2, 2, &[
            C64::from(1.0),
            C64::from(0.0),
            C64::from(0.0),
            C64::from(0.5),
        ]);
        assert!(Channel::new(vec![k]).is_err());
    }
}
