//! Dense complex linear algebra with explicit tolerances.
//!
//! Everything above this module decides rank, equality and containment through
//! the helpers here, so the cutoffs live in one place. Matrices are
//! [`nalgebra`] dense matrices over `Complex<f64>`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("tolerance {0} outside the open interval (0, 1e-3)")]
    InvalidTolerance(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix or vector contains a non-finite entry")]
    NonFinite,
}

/// Numerical tolerance shared by rank cutoffs and equality tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self, NumericsError> {
        if eps.is_finite() && eps > 0.0 && eps < 1e-3 {
            Ok(Self { eps })
        } else {
            Err(NumericsError::InvalidTolerance(eps))
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Threshold for projector equality and containment in ambient dimension
    /// `dim`: `10·eps·√dim`.
    pub fn comparison(&self, dim: usize) -> f64 {
        10.0 * self.eps * (dim.max(1) as f64).sqrt()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

pub fn is_finite_matrix(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn is_finite_vector(v: &ComplexVector) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Modified Gram-Schmidt with one re-orthogonalisation pass.
///
/// Vectors whose residual after projecting out the accepted ones falls below
/// `eps·max(1, ‖v‖)` are treated as dependent and dropped.
pub fn orthonormalize(
    vectors: &[ComplexVector],
    tol: Tolerance,
) -> Result<Vec<ComplexVector>, NumericsError> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let dim = first.len();
    let mut basis: Vec<ComplexVector> = Vec::with_capacity(vectors.len().min(dim));
    for v in vectors {
        if v.len() != dim {
            return Err(NumericsError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        if !is_finite_vector(v) {
            return Err(NumericsError::NonFinite);
        }
        let scale = v.norm().max(1.0);
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.dotc(&w);
                w.axpy(-overlap, b, Complex64::new(1.0, 0.0));
            }
        }
        let norm = w.norm();
        if norm > tol.eps() * scale {
            basis.push(w.unscale(norm));
        }
    }
    Ok(basis)
}

/// Orthonormal basis of the kernel of a Hermitian positive semidefinite matrix.
///
/// Singular values at or below `eps·max(σ_max, 1)` count as zero. SVD is used
/// rather than a symmetric eigensolver, which can pair eigenvalues with the
/// wrong eigenvectors when the spectrum is degenerate.
pub fn null_space(m: &ComplexMatrix, tol: Tolerance) -> Result<Vec<ComplexVector>, NumericsError> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(NumericsError::NotSquare { rows, cols });
    }
    if !is_finite_matrix(m) {
        return Err(NumericsError::NonFinite);
    }
    if rows == 0 {
        return Ok(Vec::new());
    }
    let hermitian = (m + m.adjoint()).scale(0.5);
    let svd = hermitian.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let largest = svd
        .singular_values
        .iter()
        .fold(0.0_f64, |acc, &s| acc.max(s));
    let cutoff = tol.eps() * largest.max(1.0);
    let kernel: Vec<ComplexVector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect();
    orthonormalize(&kernel, tol)
}

/// Frobenius norm of `a - b`.
pub fn projector_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, NumericsError> {
    if a.shape() != b.shape() {
        return Err(NumericsError::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok((a - b).norm())
}

/// `Σ v·v†` over the given vectors.
pub fn outer_sum(dim: usize, vectors: &[ComplexVector]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(dim, dim);
    for v in vectors {
        out += v * v.adjoint();
    }
    out
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real vector lifted to the complex field.
pub fn real_vector(entries: &[f64]) -> ComplexVector {
    ComplexVector::from_iterator(entries.len(), entries.iter().map(|&x| c(x, 0.0)))
}

/// Standard basis vector `e_index` of `C^dim` (zero-based index).
pub fn basis_vector(dim: usize, index: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[index] = c(1.0, 0.0);
    v
}
