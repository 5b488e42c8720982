//! Trace distance, the Helstrom distinguisher and the pretty-good
//! (square-root) measurement.

use crate::error::{Error, Result};

use super::linalg;
use super::povm::{Povm, PovmElement};
use super::state::DensityMatrix;
use super::{CMatrix, PGM_CUTOFF};
#[cfg(test)]
use super::C64;

/// `½ Σ |eig(a − b)|`, in `[0, 1]` for states.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            context: "trace distance operands",
            got: b.dim(),
            expected: a.dim(),
        });
    }
    Ok(trace_norm(&(a.matrix() - b.matrix())) / 2.0)
}

/// Trace norm `Σ |eig|` of a Hermitian matrix.
pub fn trace_norm(hermitian: &CMatrix) -> f64 {
    let (values, _) = linalg::hermitian_eigen(hermitian);
    values.iter().map(|v| v.abs()).sum()
}

/// Optimal two-outcome POVM for distinguishing `a` from `b` under equal
/// priors, and its success probability `½ + ½·TD(a, b)` computed by direct
/// evaluation. Outcome 0 means "state was `a`"; the zero eigenspace of
/// `a − b` is assigned to outcome 0.
pub fn helstrom_distinguisher(a: &DensityMatrix, b: &DensityMatrix) -> Result<(Povm, f64)> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            context: "helstrom operands",
            got: b.dim(),
            expected: a.dim(),
        });
    }
    let diff = a.matrix() - b.matrix();
    let (values, vectors) = linalg::hermitian_eigen(&diff);
    let dim = a.dim();
    let mut e0 = CMatrix::zeros(dim, dim);
    for (i, &v) in values.iter().enumerate() {
        if v >= 0.0 {
            let col = vectors.column(i).into_owned();
            e0 += linalg::outer(&col, &col);
        }
    }
    let e1 = linalg::identity(dim) - &e0;
    let povm = Povm::new(vec![
        PovmElement {
            label: 0,
            operator: e0.clone(),
        },
        PovmElement {
            label: 1,
            operator: e1.clone(),
        },
    ])?;
    let success = 0.5 * linalg::trace_product(&e0, a.matrix()).re
        + 0.5 * linalg::trace_product(&e1, b.matrix()).re;
    Ok((povm, success))
}

/// Pretty-good measurement over the signal operators: `E_i = S^{-1/2} σ_i
/// S^{-1/2}` with `S = Σ σ_i` pseudo-inverted on its support (cutoff 1e-12).
/// Any remainder `I − Σ E_i` off the support is folded into the first
/// element. Labels are the signal indices.
pub fn pretty_good_measurement(signals: &[CMatrix]) -> Result<Povm> {
    let elements = pgm_elements(signals)?;
    let mut elements: Vec<PovmElement> = elements
        .into_iter()
        .enumerate()
        .map(|(i, operator)| PovmElement {
            label: i as u64,
            operator,
        })
        .collect();
    let dim = elements[0].operator.nrows();
    let mut sum = CMatrix::zeros(dim, dim);
    for e in &elements {
        sum += &e.operator;
    }
    let remainder = linalg::identity(dim) - sum;
    elements[0].operator += remainder;
    Povm::new(elements)
}

/// The raw PGM elements without completion; used where the remainder must be
/// kept as its own outcome.
pub fn pgm_elements(signals: &[CMatrix]) -> Result<Vec<CMatrix>> {
    let dim = signals
        .first()
        .map(CMatrix::nrows)
        .ok_or_else(|| Error::InvalidPovm("no signal operators".into()))?;
    let mut s = CMatrix::zeros(dim, dim);
    for sig in signals {
        if sig.nrows() != dim || sig.ncols() != dim {
            return Err(Error::DimensionMismatch {
                context: "signal operators",
                got: sig.nrows(),
                expected: dim,
            });
        }
        s += sig;
    }
    if linalg::trace(&s).re <= PGM_CUTOFF {
        return Err(Error::InvalidPovm("all-zero signal list".into()));
    }
    let isqrt = linalg::pseudo_inverse_sqrt(&s, PGM_CUTOFF);
    Ok(signals.iter().map(|sig| &isqrt * sig * &isqrt).collect())
}
