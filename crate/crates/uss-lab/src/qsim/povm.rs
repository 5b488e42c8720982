//! POVMs with labeled outcomes, exact measurement branching and seeded
//! sampling.

use rand::Rng;

use crate::error::{Error, Result};

use super::linalg;
use super::state::DensityMatrix;
use super::{CMatrix, C64, TOL_STRUCT};

/// One POVM element with its outcome label.
#[derive(Debug, Clone)]
pub struct PovmElement {
    pub label: u64,
    pub operator: CMatrix,
}

/// A positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<PovmElement>,
    dim: usize,
}

impl Povm {
    pub fn new(elements: Vec<PovmElement>) -> Result<Self> {
        let dim = elements
            .first()
            .map(|e| e.operator.nrows())
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let mut sum = CMatrix::zeros(dim, dim);
        for e in &elements {
            if e.operator.nrows() != dim || e.operator.ncols() != dim {
                return Err(Error::InvalidPovm("elements have mixed dimensions".into()));
            }
            if linalg::max_abs_diff(&e.operator, &e.operator.adjoint()) > TOL_STRUCT {
                return Err(Error::InvalidPovm("element is not Hermitian".into()));
            }
            let (vals, _) = linalg::hermitian_eigen(&e.operator);
            if let Some(&min) = vals.last() {
                if min < -TOL_STRUCT {
                    return Err(Error::InvalidPovm(format!(
                        "element has negative eigenvalue {min}"
                    )));
                }
            }
            sum += &e.operator;
        }
        if linalg::max_abs_diff(&sum, &linalg::identity(dim)) > TOL_STRUCT {
            return Err(Error::InvalidPovm("elements do not sum to identity".into()));
        }
        Ok(Self { elements, dim })
    }

    /// Computational-basis measurement on `qubits` qubits; labels are basis
    /// indices.
    pub fn computational(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        let elements = (0..dim)
            .map(|i| {
                let mut m = CMatrix::zeros(dim, dim);
                m[(i, i)] = C64::from(1.0);
                PovmElement {
                    label: i as u64,
                    operator: m,
                }
            })
            .collect();
        Self { elements, dim }
    }

    /// Projective measurement onto an orthonormal basis given as vectors.
    pub fn from_basis(basis: &[super::CVector]) -> Result<Self> {
        let elements = basis
            .iter()
            .enumerate()
            .map(|(i, v)| PovmElement {
                label: i as u64,
                operator: linalg::outer(v, v),
            })
            .collect();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_outcomes(&self) -> usize {
        self.elements.len()
    }

    /// Exact outcome probabilities on a state of matching dimension.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                context: "POVM vs state",
                got: rho.dim(),
                expected: self.dim,
            });
        }
        Ok(self
            .elements
            .iter()
            .map(|e| linalg::trace_product(&e.operator, rho.matrix()).re)
            .collect())
    }
}

/// One exact measurement branch: outcome label, probability, renormalized
/// post-measurement state under the square-root (Lüders) instrument.
#[derive(Debug, Clone)]
pub struct MeasureBranch {
    pub label: u64,
    pub probability: f64,
    pub post: DensityMatrix,
}

/// All measurement branches with nonzero probability.
pub fn measure_branches(rho: &DensityMatrix, povm: &Povm) -> Result<Vec<MeasureBranch>> {
    let probs = povm.probabilities(rho)?;
    let mut out = Vec::new();
    for (e, &p) in povm.elements().iter().zip(&probs) {
        if p <= 1e-15 {
            continue;
        }
        let sqrt = linalg::psd_sqrt(&e.operator);
        let post = &sqrt * rho.matrix() * sqrt.adjoint();
        out.push(MeasureBranch {
            label: e.label,
            probability: p,
            post: DensityMatrix::from_raw(rho.num_qubits(), post / C64::from(p)),
        });
    }
    Ok(out)
}

/// Sample one outcome with the given RNG. Deterministic for a fixed seed.
pub fn measure(
    rho: &DensityMatrix,
    povm: &Povm,
    rng: &mut impl Rng,
) -> Result<(u64, DensityMatrix, f64)> {
    let branches = measure_branches(rho, povm)?;
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    if (total - 1.0).abs() > TOL_STRUCT {
        return Err(Error::InvalidPovm(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    let mut draw = rng.gen::<f64>() * total;
    for b in &branches {
        draw -= b.probability;
        if draw <= 0.0 {
            return Ok((b.label, b.post.clone(), b.probability));
        }
    }
    let last = branches.last().expect("nonempty branch list");
    Ok((last.label, last.post.clone(), last.probability))
}
