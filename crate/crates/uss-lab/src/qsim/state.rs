//! Pure states and density matrices over ordered qubit registers.

use serde::Serialize;

use crate::bits::{self, Bits};
use crate::error::{Error, Result};

use super::linalg;
use super::{C64, CMatrix, CVector, MAX_DENSITY_QUBITS, MAX_VECTOR_QUBITS, TOL_STRUCT};

/// A pure state on `num_qubits` qubits, `2^num_qubits` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: CVector,
}

/// A mixed state on `num_qubits` qubits, a `2^n × 2^n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    mat: CMatrix,
}

/// Offsets of the sub-register basis states inside the full index space.
/// `offsets[a]` is the full-register index pattern with the target qubits set
/// according to `a` (gate-MSB-first) and all other qubits zero.
fn target_offsets(num_qubits: usize, targets: &[usize]) -> Result<(Vec<usize>, usize)> {
    let k = targets.len();
    for (i, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: t,
                num_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    let shifts: Vec<usize> = targets.iter().map(|&t| num_qubits - 1 - t).collect();
    let mask: usize = shifts.iter().map(|&s| 1usize << s).sum();
    let mut offsets = vec![0usize; 1 << k];
    for (a, offset) in offsets.iter_mut().enumerate() {
        for (j, &s) in shifts.iter().enumerate() {
            if (a >> (k - 1 - j)) & 1 == 1 {
                *offset |= 1 << s;
            }
        }
    }
    Ok((offsets, mask))
}

/// Apply an arbitrary `2^k × 2^k` matrix to the listed target qubits of a raw
/// amplitude vector. Not restricted to unitaries; callers that apply Kraus or
/// POVM-branch operators renormalize afterwards.
pub(crate) fn apply_matrix_raw(
    amps: &mut CVector,
    num_qubits: usize,
    m: &CMatrix,
    targets: &[usize],
) -> Result<()> {
    let k = targets.len();
    let dim_k = 1usize << k;
    if m.nrows() != dim_k || m.ncols() != dim_k {
        return Err(Error::DimensionMismatch {
            context: "operator dimension vs target count",
            got: m.nrows(),
            expected: dim_k,
        });
    }
    let (offsets, mask) = target_offsets(num_qubits, targets)?;
    let dim = 1usize << num_qubits;
    let mut gathered = vec![C64::default(); dim_k];
    for base in 0..dim {
        if base & mask != 0 {
            continue;
        }
        for (a, &off) in offsets.iter().enumerate() {
            gathered[a] = amps[base | off];
        }
        for (r, &off) in offsets.iter().enumerate() {
            let mut acc = C64::default();
            for c in 0..dim_k {
                acc += m[(r, c)] * gathered[c];
            }
            amps[base | off] = acc;
        }
    }
    Ok(())
}

impl StateVector {
    /// Build from raw amplitudes, checking length and normalization.
    pub fn new(num_qubits: usize, amps: CVector) -> Result<Self> {
        if num_qubits > MAX_VECTOR_QUBITS {
            return Err(Error::Capacity {
                qubits: num_qubits,
                max: MAX_VECTOR_QUBITS,
            });
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch {
                context: "amplitude count",
                got: amps.len(),
                expected: 1 << num_qubits,
            });
        }
        let state = Self { num_qubits, amps };
        if (state.norm_sqr() - 1.0).abs() > TOL_STRUCT {
            return Err(Error::InvalidState(format!(
                "squared-amplitude sum {} is not 1",
                state.norm_sqr()
            )));
        }
        Ok(state)
    }

    pub(crate) fn from_raw(num_qubits: usize, amps: CVector) -> Self {
        debug_assert_eq!(amps.len(), 1 << num_qubits);
        Self { num_qubits, amps }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = CVector::zeros(1 << num_qubits);
        amps[index] = C64::from(1.0);
        Self { num_qubits, amps }
    }

    /// Basis state from classical bits (bit 0 = qubit 0 = MSB).
    pub fn from_bits(bits: &[bool]) -> Self {
        Self::basis(bits.len(), bits::bits_to_index(bits))
    }

    /// `|0…0⟩` on `n` qubits. `n = 0` gives the trivial 1-dimensional state.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`; global-phase insensitive comparison for pure states.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Apply a `2^k`-dimensional unitary to the ordered target qubits.
    /// Preserves the norm whenever the operator is unitary.
    pub fn apply_unitary(&self, unitary: &CMatrix, targets: &[usize]) -> Result<Self> {
        let mut amps = self.amps.clone();
        apply_matrix_raw(&mut amps, self.num_qubits, unitary, targets)?;
        Ok(Self::from_raw(self.num_qubits, amps))
    }

    /// Apply an arbitrary operator on targets without renormalizing.
    pub fn apply_operator(&self, m: &CMatrix, targets: &[usize]) -> Result<Self> {
        self.apply_unitary(m, targets)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n <= TOL_STRUCT {
            return Err(Error::InvalidState("cannot normalize zero vector".into()));
        }
        Ok(Self::from_raw(self.num_qubits, &self.amps / C64::from(n)))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let total = self.num_qubits + other.num_qubits;
        if total > MAX_VECTOR_QUBITS {
            return Err(Error::Capacity {
                qubits: total,
                max: MAX_VECTOR_QUBITS,
            });
        }
        Ok(Self::from_raw(total, self.amps.kronecker(&other.amps)))
    }

    /// Exact probability of each computational outcome on the target qubits.
    pub fn outcome_probabilities(&self, targets: &[usize]) -> Result<Vec<f64>> {
        let k = targets.len();
        let (offsets, mask) = target_offsets(self.num_qubits, targets)?;
        let mut probs = vec![0.0; 1 << k];
        for base in 0..self.dim() {
            if base & mask != 0 {
                continue;
            }
            for (a, &off) in offsets.iter().enumerate() {
                probs[a] += self.amps[base | off].norm_sqr();
            }
        }
        Ok(probs)
    }

    /// Exact branch list for a computational-basis measurement of the target
    /// qubits. Measured qubits stay in the register, collapsed. Zero-probability
    /// branches are dropped.
    pub fn measure_qubits_branches(&self, targets: &[usize]) -> Result<Vec<(Bits, f64, Self)>> {
        let k = targets.len();
        let (offsets, mask) = target_offsets(self.num_qubits, targets)?;
        let mut out = Vec::new();
        for (a, &off) in offsets.iter().enumerate() {
            let mut amps = CVector::zeros(self.dim());
            let mut prob = 0.0;
            for base in 0..self.dim() {
                if base & mask != 0 {
                    continue;
                }
                let idx = base | off;
                prob += self.amps[idx].norm_sqr();
                amps[idx] = self.amps[idx];
            }
            if prob > 1e-15 {
                let post = Self::from_raw(self.num_qubits, amps / C64::from(prob.sqrt()));
                out.push((bits::index_to_bits(a, k), prob, post));
            }
        }
        Ok(out)
    }

    /// Reduced density matrix on `keep`, in the order listed.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (keep_offsets, keep_mask) = target_offsets(self.num_qubits, keep)?;
        let kd = 1usize << keep.len();
        let rest: Vec<usize> = (0..self.num_qubits)
            .filter(|q| !keep.contains(q))
            .collect();
        let (rest_offsets, _) = target_offsets(self.num_qubits, &rest)?;
        let _ = keep_mask;
        let mut mat = CMatrix::zeros(kd, kd);
        for &r_off in &rest_offsets {
            for i in 0..kd {
                let zi = self.amps[keep_offsets[i] | r_off];
                if zi == C64::default() {
                    continue;
                }
                for j in 0..kd {
                    mat[(i, j)] += zi * self.amps[keep_offsets[j] | r_off].conj();
                }
            }
        }
        Ok(DensityMatrix::from_raw(keep.len(), mat))
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_raw(self.num_qubits, linalg::outer(&self.amps, &self.amps))
    }

    /// Extract a sub-register as a pure state; errors if it is entangled
    /// with (or classically correlated to) the rest of the register.
    pub fn reduced_to_vector(&self, targets: &[usize]) -> Result<StateVector> {
        let reduced = self.reduced_density(targets)?;
        let (values, vectors) = linalg::hermitian_eigen(reduced.matrix());
        if (values[0] - 1.0).abs() > TOL_STRUCT {
            return Err(Error::InvalidState(format!(
                "sub-register is not pure (top eigenvalue {})",
                values[0]
            )));
        }
        Ok(Self::from_raw(targets.len(), vectors.column(0).into_owned()))
    }

    /// JSON dump as an array of `[re, im]` pairs, row-major.
    pub fn dump_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.amps
                .iter()
                .map(|z| serde_json::json!([z.re, z.im]))
                .collect(),
        )
    }
}

/// Serializes as the `[re, im]` pair array used in debug dumps.
impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amps.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

impl DensityMatrix {
    /// Build from a raw matrix, checking hermiticity, unit trace and
    /// positivity (eigenvalues ≥ −1e-9).
    pub fn new(num_qubits: usize, mat: CMatrix) -> Result<Self> {
        if num_qubits > MAX_DENSITY_QUBITS {
            return Err(Error::Capacity {
                qubits: num_qubits,
                max: MAX_DENSITY_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                context: "density matrix dimension",
                got: mat.nrows(),
                expected: dim,
            });
        }
        if linalg::max_abs_diff(&mat, &mat.adjoint()) > TOL_STRUCT {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = linalg::trace(&mat);
        if (tr.re - 1.0).abs() > TOL_STRUCT || tr.im.abs() > TOL_STRUCT {
            return Err(Error::InvalidState(format!("trace {} is not 1", tr)));
        }
        let (values, _) = linalg::hermitian_eigen(&mat);
        if let Some(&min) = values.last() {
            if min < -TOL_STRUCT {
                return Err(Error::InvalidState(format!(
                    "negative eigenvalue {min} beyond tolerance"
                )));
            }
        }
        Ok(Self { num_qubits, mat })
    }

    pub(crate) fn from_raw(num_qubits: usize, mat: CMatrix) -> Self {
        debug_assert_eq!(mat.nrows(), 1 << num_qubits);
        Self { num_qubits, mat }
    }

    pub fn from_pure(state: &StateVector) -> Self {
        state.to_density()
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        Self::from_pure(&StateVector::basis(num_qubits, index))
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self::from_raw(
            num_qubits,
            CMatrix::identity(dim, dim) / C64::from(dim as f64),
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.mat).re
    }

    /// Kronecker product; capacity error above [`MAX_DENSITY_QUBITS`] qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let total = self.num_qubits + other.num_qubits;
        if total > MAX_DENSITY_QUBITS {
            return Err(Error::Capacity {
                qubits: total,
                max: MAX_DENSITY_QUBITS,
            });
        }
        Ok(Self::from_raw(total, self.mat.kronecker(&other.mat)))
    }

    /// Conjugate by a unitary on the ordered target qubits.
    pub fn apply_unitary(&self, unitary: &CMatrix, targets: &[usize]) -> Result<Self> {
        // U ρ: apply to the row index of every column, then repeat on the
        // adjoint to pick up the right-hand U†.
        let dim = self.dim();
        let mut a = CMatrix::zeros(dim, dim);
        let mut col = CVector::zeros(dim);
        for c in 0..dim {
            col.copy_from(&self.mat.column(c));
            apply_matrix_raw(&mut col, self.num_qubits, unitary, targets)?;
            a.set_column(c, &col);
        }
        let mut out = CMatrix::zeros(dim, dim);
        let adj = a.adjoint();
        for c in 0..dim {
            col.copy_from(&adj.column(c));
            apply_matrix_raw(&mut col, self.num_qubits, unitary, targets)?;
            out.set_column(c, &col);
        }
        Ok(Self::from_raw(self.num_qubits, out.adjoint()))
    }

    /// Partial trace keeping the listed qubits, in the order listed.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let (keep_offsets, _) = target_offsets(self.num_qubits, keep)?;
        let rest: Vec<usize> = (0..self.num_qubits)
            .filter(|q| !keep.contains(q))
            .collect();
        let (rest_offsets, _) = target_offsets(self.num_qubits, &rest)?;
        let kd = 1usize << keep.len();
        let mut out = CMatrix::zeros(kd, kd);
        for &r_off in &rest_offsets {
            for i in 0..kd {
                for j in 0..kd {
                    out[(i, j)] += self.mat[(keep_offsets[i] | r_off, keep_offsets[j] | r_off)];
                }
            }
        }
        Ok(Self::from_raw(keep.len(), out))
    }

    /// Reorder qubits so that qubit `perm[i]` of `self` becomes qubit `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_qubits {
            return Err(Error::LengthMismatch {
                context: "permutation length",
                got: perm.len(),
                expected: self.num_qubits,
            });
        }
        let (offsets, _) = target_offsets(self.num_qubits, perm)?;
        let dim = self.dim();
        let mut out = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] = self.mat[(offsets[i], offsets[j])];
            }
        }
        Ok(Self::from_raw(self.num_qubits, out))
    }

    pub fn is_valid(&self) -> bool {
        Self::new(self.num_qubits, self.mat.clone()).is_ok()
    }
}
