//! Closed subspaces of `C^d` and their lattice operations.
//!
//! A subspace is stored as its orthogonal projector; two subspaces are equal
//! when their projectors are within [`Tolerance::comparison`] in Frobenius
//! norm. Set intersection and lattice meet coincide for closed subspaces in
//! finite dimension, so [`Subspace::meet`] serves both.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{
    self, identity, is_finite_matrix, null_space, orthonormalize, outer_sum, projector_distance,
    ComplexMatrix, ComplexVector, NumericsError, Tolerance,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension must be positive")]
    EmptyDimension,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not idempotent (residual {residual:.3e})")]
    NotIdempotent { residual: f64 },
    #[error("the zero vector is not a state")]
    ZeroState,
    #[error("state is not normalised (norm {norm:.12})")]
    NotNormalized { norm: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn check_same_dim(left: usize, right: usize) -> Result<(), SubspaceError> {
    if left == right {
        Ok(())
    } else {
        Err(SubspaceError::DimensionMismatch { left, right })
    }
}

/// Hermitian idempotent matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
}

impl Projector {
    /// Validates Hermiticity and idempotency, each within `eps`.
    pub fn new(matrix: ComplexMatrix, tol: Tolerance) -> Result<Self, SubspaceError> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(SubspaceError::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(SubspaceError::EmptyDimension);
        }
        if !is_finite_matrix(&matrix) {
            return Err(SubspaceError::NonFinite);
        }
        let hermitian = projector_distance(&matrix, &matrix.adjoint())?;
        if hermitian > tol.eps() {
            return Err(SubspaceError::NotHermitian {
                residual: hermitian,
            });
        }
        let idempotent = projector_distance(&(&matrix * &matrix), &matrix)?;
        if idempotent > tol.eps() {
            return Err(SubspaceError::NotIdempotent {
                residual: idempotent,
            });
        }
        Ok(Self { matrix })
    }

    /// Projector onto the span of arbitrary (not necessarily orthonormal) vectors.
    pub fn from_span(
        dim: usize,
        vectors: &[ComplexVector],
        tol: Tolerance,
    ) -> Result<Self, SubspaceError> {
        if dim == 0 {
            return Err(SubspaceError::EmptyDimension);
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(SubspaceError::DimensionMismatch {
                left: dim,
                right: v.len(),
            });
        }
        let basis = orthonormalize(vectors, tol)?;
        Ok(Self::from_orthonormal(dim, &basis))
    }

    pub(crate) fn from_orthonormal(dim: usize, basis: &[ComplexVector]) -> Self {
        Self::hermitize(outer_sum(dim, basis))
    }

    /// Wraps a matrix known to be a projector up to rounding, symmetrising it.
    pub(crate) fn hermitize(matrix: ComplexMatrix) -> Self {
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        Self { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Rank, read off the trace.
    pub fn rank(&self) -> usize {
        self.matrix.trace().re.round().max(0.0) as usize
    }

    pub fn complement(&self) -> Self {
        Self {
            matrix: identity(self.dim()) - &self.matrix,
        }
    }

    pub fn kron(&self, other: &Projector) -> Self {
        Self {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn distance(&self, other: &Projector) -> Result<f64, SubspaceError> {
        Ok(projector_distance(&self.matrix, &other.matrix)?)
    }

    pub fn approx_eq(&self, other: &Projector, tol: Tolerance) -> Result<bool, SubspaceError> {
        Ok(self.distance(other)? <= tol.comparison(self.dim()))
    }

    /// Frobenius norm of `P·Q − Q·P`.
    pub fn commutator_norm(&self, other: &Projector) -> Result<f64, SubspaceError> {
        check_same_dim(self.dim(), other.dim())?;
        let pq = &self.matrix * &other.matrix;
        let qp = &other.matrix * &self.matrix;
        Ok((pq - qp).norm())
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        &self.matrix * v
    }
}

/// Unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: ComplexVector,
}

impl StateVector {
    /// Accepts only vectors whose norm is 1 within `10·eps·√d`.
    pub fn new(amplitudes: ComplexVector, tol: Tolerance) -> Result<Self, SubspaceError> {
        if amplitudes.is_empty() {
            return Err(SubspaceError::EmptyDimension);
        }
        if !numerics::is_finite_vector(&amplitudes) {
            return Err(SubspaceError::NonFinite);
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(SubspaceError::ZeroState);
        }
        if (norm - 1.0).abs() > tol.comparison(amplitudes.len()) {
            return Err(SubspaceError::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales any nonzero vector to unit norm.
    pub fn normalized(amplitudes: ComplexVector) -> Result<Self, SubspaceError> {
        if amplitudes.is_empty() {
            return Err(SubspaceError::EmptyDimension);
        }
        if !numerics::is_finite_vector(&amplitudes) {
            return Err(SubspaceError::NonFinite);
        }
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(SubspaceError::ZeroState);
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        Self {
            amplitudes: numerics::basis_vector(dim, index),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        Self {
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    pub fn with_phase(&self, theta: f64) -> StateVector {
        Self {
            amplitudes: &self.amplitudes * Complex64::from_polar(1.0, theta),
        }
    }
}

/// Closed linear subspace, represented by its projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    projector: Projector,
    rank: usize,
}

impl From<Projector> for Subspace {
    fn from(projector: Projector) -> Self {
        let rank = projector.rank();
        Self { projector, rank }
    }
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Projector::zero(dim).into()
    }

    pub fn whole(dim: usize) -> Self {
        Projector::identity(dim).into()
    }

    /// Ray spanned by a state, `|ψ⟩⟨ψ|`.
    pub fn span_of(state: &StateVector) -> Self {
        let v = state.amplitudes();
        let v = v.unscale(v.norm());
        Projector::from_orthonormal(v.len(), &[v]).into()
    }

    pub fn from_span(
        dim: usize,
        vectors: &[ComplexVector],
        tol: Tolerance,
    ) -> Result<Self, SubspaceError> {
        Ok(Projector::from_span(dim, vectors, tol)?.into())
    }

    pub fn dim(&self) -> usize {
        self.projector.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn projector(&self) -> &Projector {
        &self.projector
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_whole(&self) -> bool {
        self.rank == self.dim()
    }

    /// Orthonormal basis of the subspace (eigenvectors of the projector with eigenvalue 1).
    pub fn basis(&self, tol: Tolerance) -> Result<Vec<ComplexVector>, SubspaceError> {
        Ok(null_space(self.projector.complement().matrix(), tol)?)
    }

    pub fn complement(&self) -> Subspace {
        Subspace {
            projector: self.projector.complement(),
            rank: self.dim() - self.rank,
        }
    }

    /// Intersection, as the kernel of `(1 − Q_A) + (1 − Q_B)`.
    pub fn meet(&self, other: &Subspace, tol: Tolerance) -> Result<Subspace, SubspaceError> {
        check_same_dim(self.dim(), other.dim())?;
        let dim = self.dim();
        let sum = self.projector.complement().matrix + other.projector.complement().matrix;
        let basis = null_space(&sum, tol)?;
        Ok(Subspace {
            projector: Projector::from_orthonormal(dim, &basis),
            rank: basis.len(),
        })
    }

    /// Closed span of both, as `(A^⊥ ∧ B^⊥)^⊥`.
    pub fn join(&self, other: &Subspace, tol: Tolerance) -> Result<Subspace, SubspaceError> {
        Ok(self
            .complement()
            .meet(&other.complement(), tol)?
            .complement())
    }

    /// `other ⊆ self`, tested as `Q_self·Q_other ≈ Q_other`.
    pub fn contains(&self, other: &Subspace, tol: Tolerance) -> Result<bool, SubspaceError> {
        check_same_dim(self.dim(), other.dim())?;
        let product = self.projector.matrix() * other.projector.matrix();
        Ok(projector_distance(&product, other.projector.matrix())? <= tol.comparison(self.dim()))
    }

    pub fn contains_vector(
        &self,
        v: &ComplexVector,
        tol: Tolerance,
    ) -> Result<bool, SubspaceError> {
        check_same_dim(self.dim(), v.len())?;
        let residual = (self.projector.apply(v) - v).norm();
        Ok(residual <= tol.comparison(self.dim()) * v.norm().max(1.0))
    }

    /// Commutability in the set-theoretic form
    /// `A ∩ (A ∩ B^⊥)^⊥ ⊆ B`.
    pub fn commutes(&self, other: &Subspace, tol: Tolerance) -> Result<bool, SubspaceError> {
        check_same_dim(self.dim(), other.dim())?;
        let inner = self.meet(&other.complement(), tol)?;
        let lhs = self.meet(&inner.complement(), tol)?;
        other.contains(&lhs, tol)
    }

    /// Subspace of `C^{d1·d2}` with projector `Q_A ⊗ Q_B`.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        Subspace {
            projector: self.projector.kron(&other.projector),
            rank: self.rank * other.rank,
        }
    }

    pub fn distance(&self, other: &Subspace) -> Result<f64, SubspaceError> {
        check_same_dim(self.dim(), other.dim())?;
        self.projector.distance(&other.projector)
    }

    pub fn approx_eq(&self, other: &Subspace, tol: Tolerance) -> Result<bool, SubspaceError> {
        Ok(self.distance(other)? <= tol.comparison(self.dim()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{basis_vector, c, real_vector};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn ray(entries: &[f64]) -> Subspace {
        Subspace::span_of(&StateVector::normalized(real_vector(entries)).unwrap())
    }

    fn span(dim: usize, indices: &[usize]) -> Subspace {
        let vs: Vec<_> = indices.iter().map(|&i| basis_vector(dim, i)).collect();
        Subspace::from_span(dim, &vs, tol()).unwrap()
    }

    #[test]
    fn projector_validation() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            Projector::new(m, tol()),
            Err(SubspaceError::NotHermitian { .. })
        ));
        let m = identity(2).scale(2.0);
        assert!(matches!(
            Projector::new(m, tol()),
            Err(SubspaceError::NotIdempotent { .. })
        ));
        assert!(Projector::new(identity(3), tol()).is_ok());
        assert!(matches!(
            Projector::new(ComplexMatrix::zeros(2, 3), tol()),
            Err(SubspaceError::NotSquare { .. })
        ));
    }

    #[test]
    fn states_reject_zero_and_unnormalised() {
        assert_eq!(
            StateVector::new(real_vector(&[0.0, 0.0]), tol()),
            Err(SubspaceError::ZeroState)
        );
        assert!(matches!(
            StateVector::new(real_vector(&[1.0, 1.0]), tol()),
            Err(SubspaceError::NotNormalized { .. })
        ));
        assert!(StateVector::normalized(real_vector(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn span_of_examples() {
        let e1 = StateVector::basis(2, 0);
        let s = Subspace::span_of(&e1);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.projector().matrix()[(0, 0)], c(1.0, 0.0));
        assert_eq!(s.projector().matrix()[(1, 1)], c(0.0, 0.0));

        let plus = ray(&[1.0, 1.0]);
        for z in plus.projector().matrix().iter() {
            assert_relative_eq!(z.re, 0.5, epsilon = 1e-15);
            assert_relative_eq!(z.im, 0.0, epsilon = 1e-15);
        }

        for theta in [0.3, 1.7, -2.2] {
            let rotated = Subspace::span_of(&e1.with_phase(theta));
            assert!(rotated.approx_eq(&s, tol()).unwrap());
        }
    }

    #[test]
    fn complement_examples() {
        assert!(Subspace::zero(2).complement().is_whole());
        assert!(span(2, &[0])
            .complement()
            .approx_eq(&span(2, &[1]), tol())
            .unwrap());
        let minus = ray(&[1.0, -1.0]);
        assert!(ray(&[1.0, 1.0])
            .complement()
            .approx_eq(&minus, tol())
            .unwrap());
    }

    #[test]
    fn meet_examples() {
        let e1 = span(2, &[0]);
        let plus = ray(&[1.0, 1.0]);
        assert!(e1.meet(&plus, tol()).unwrap().is_zero());
        assert!(e1.meet(&e1, tol()).unwrap().approx_eq(&e1, tol()).unwrap());
        let m = span(3, &[0, 1]).meet(&span(3, &[1, 2]), tol()).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.approx_eq(&span(3, &[1]), tol()).unwrap());
        assert!(matches!(
            e1.meet(&span(3, &[0]), tol()),
            Err(SubspaceError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn join_examples() {
        assert!(span(2, &[0])
            .join(&span(2, &[1]), tol())
            .unwrap()
            .is_whole());
        let a = ray(&[0.3, 0.9, -0.1]);
        assert!(a
            .join(&Subspace::zero(3), tol())
            .unwrap()
            .approx_eq(&a, tol())
            .unwrap());
        // Column-space oracle: the span of both generating vectors.
        let joined = span(2, &[0]).join(&ray(&[1.0, 1.0]), tol()).unwrap();
        let direct = Subspace::from_span(
            2,
            &[
                basis_vector(2, 0),
                real_vector(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]),
            ],
            tol(),
        )
        .unwrap();
        assert!(joined.approx_eq(&direct, tol()).unwrap());
        assert!(joined.is_whole());
    }

    #[test]
    fn contains_examples() {
        let e1 = span(2, &[0]);
        assert!(Subspace::whole(2).contains(&e1, tol()).unwrap());
        assert!(!e1.contains(&ray(&[1.0, 1.0]), tol()).unwrap());
        assert!(e1.contains(&Subspace::zero(2), tol()).unwrap());
    }

    #[test]
    fn commutes_examples() {
        let a = span(3, &[0]);
        let b = span(3, &[0, 1]);
        assert!(a.commutes(&b, tol()).unwrap());
        assert!(b.commutes(&a, tol()).unwrap());
        assert!(span(2, &[0]).commutes(&span(2, &[1]), tol()).unwrap());

        let e1 = span(2, &[0]);
        let plus = ray(&[1.0, 1.0]);
        assert!(!e1.commutes(&plus, tol()).unwrap());
        assert!(!plus.commutes(&e1, tol()).unwrap());
        assert!(e1.projector().commutator_norm(plus.projector()).unwrap() > 0.1);
    }

    #[test]
    fn tensor_examples() {
        let e1 = span(2, &[0]);
        let t = e1.tensor(&e1);
        assert_eq!(t.dim(), 4);
        assert!(t.approx_eq(&span(4, &[0]), tol()).unwrap());

        let plane = span(3, &[0, 2]);
        assert_eq!(plane.tensor(&span(2, &[1])).rank(), 2);
        assert_eq!(plane.tensor(&Subspace::whole(2)).rank(), 4);

        // ran(P_x+) ⊗ ran(P_z-): the ray of (1, 1)/√2 ⊗ (0, 1) = (0, 1, 0, 1)/√2.
        let t = ray(&[1.0, 1.0]).tensor(&span(2, &[1]));
        assert_eq!(t.rank(), 1);
        let m = t.projector().matrix();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i % 2 == 1 && j % 2 == 1 { 0.5 } else { 0.0 };
                assert_relative_eq!(m[(i, j)].re, expected, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn basis_spans_subspace() {
        let s = span(4, &[1, 3]);
        let b = s.basis(tol()).unwrap();
        assert_eq!(b.len(), 2);
        let rebuilt = Subspace::from_span(4, &b, tol()).unwrap();
        assert!(rebuilt.approx_eq(&s, tol()).unwrap());
    }
}
