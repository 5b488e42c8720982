//! Shared dense linear-algebra helpers: Hermitian eigendecomposition with a
//! deterministic ordering, operator square roots and pseudo-inverses.

use nalgebra::linalg::SymmetricEigen;

use super::{C64, CMatrix, CVector};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
/// ties broken by first occurrence. Returns `(eigenvalues, eigenvectors)`
/// with eigenvectors as columns, matching the eigenvalue order.
pub fn hermitian_eigen(mat: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(mat.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap()
            .then(i.cmp(&j))
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let dim = mat.nrows();
    let mut vectors = CMatrix::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Rebuild `Σ f(λ_i) v_i v_i†` from a Hermitian eigendecomposition.
pub fn hermitian_function(mat: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(mat);
    let dim = mat.nrows();
    let mut out = CMatrix::zeros(dim, dim);
    for (i, &v) in values.iter().enumerate() {
        let fv = f(v);
        if fv == 0.0 {
            continue;
        }
        let col = vectors.column(i);
        for r in 0..dim {
            for c in 0..dim {
                out[(r, c)] += C64::from(fv) * col[r] * col[c].conj();
            }
        }
    }
    out
}

/// Square root of a positive semidefinite matrix. Small negative eigenvalues
/// from roundoff are clamped to zero.
pub fn psd_sqrt(mat: &CMatrix) -> CMatrix {
    hermitian_function(mat, |v| if v > 0.0 { v.sqrt() } else { 0.0 })
}

/// `S^{-1/2}` on the support of `S`, treating eigenvalues below `cutoff`
/// as zero.
pub fn pseudo_inverse_sqrt(mat: &CMatrix, cutoff: f64) -> CMatrix {
    hermitian_function(mat, |v| if v > cutoff { 1.0 / v.sqrt() } else { 0.0 })
}

/// Trace as a complex number.
pub fn trace(mat: &CMatrix) -> C64 {
    mat.diagonal().sum()
}

/// `Tr[a b]` without materializing the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let mut acc = C64::default();
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Outer product `v w†`.
pub fn outer(v: &CVector, w: &CVector) -> CMatrix {
    let mut out = CMatrix::zeros(v.len(), w.len());
    for r in 0..v.len() {
        for c in 0..w.len() {
            out[(r, c)] = v[r] * w[c].conj();
        }
    }
    out
}
