use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{frobenius_inner, tensor_product, ComplexMatrix};
use crate::spectral::{eigen_hermitian, HermitianSpectrum, HERMITIAN_TOL};

/// Tolerance on trace and eigenvalue bounds of states and effects.
pub const STATE_TOL: f64 = 1e-10;

/// Anything that is represented by a square operator.
pub trait Operator {
    fn operator(&self) -> &ComplexMatrix;

    fn dim(&self) -> usize {
        self.operator().rows()
    }
}

impl Operator for ComplexMatrix {
    fn operator(&self) -> &ComplexMatrix {
        self
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates `matrix` and stores its Hermitian part.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let matrix = matrix.symmetrized(HERMITIAN_TOL)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > STATE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eigenvalue = eigen_hermitian(&matrix)?.min_eigenvalue();
        if min_eigenvalue < -STATE_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_valid(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// `|psi><psi|` for a unit vector `psi`.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::ket_bra(amplitudes)?)
    }

    /// The computational basis state `|index><index|`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let v = ComplexMatrix::basis_vector(dim, index);
        Self::from_valid(v.mul_unchecked(&v.adjoint()))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_valid(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diagonal(probabilities)?)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn spectrum(&self) -> HermitianSpectrum {
        eigen_hermitian(&self.matrix).expect("density operators are Hermitian")
    }

    /// Eigenvalues with round-off negatives clipped to zero.
    pub fn clipped_eigenvalues(&self) -> Vec<f64> {
        self.spectrum()
            .eigenvalues
            .into_iter()
            .map(|l| l.max(0.0))
            .collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::from_valid(tensor_product(&self.matrix, &other.matrix))
    }

    /// `U rho U^dagger`.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let out = unitary.mul(&self.matrix)?.mul(&unitary.adjoint())?;
        Self::new(out)
    }
}

impl Operator for DensityOperator {
    fn operator(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Hermitian operator `E` with `0 <= E <= I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    matrix: ComplexMatrix,
}

impl Effect {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let matrix = matrix.symmetrized(HERMITIAN_TOL)?;
        let spectrum = eigen_hermitian(&matrix)?;
        if spectrum.min_eigenvalue() < -STATE_TOL || spectrum.max_eigenvalue() > 1.0 + STATE_TOL {
            return Err(Error::NotEffect);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

impl Operator for Effect {
    fn operator(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

impl From<Projection> for Effect {
    fn from(p: Projection) -> Self {
        Effect { matrix: p.matrix }
    }
}

/// Orthogonal projection: `P^2 = P` within `1e-9` and `P^dagger = P` within
/// `1e-10` (Frobenius).
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    matrix: ComplexMatrix,
}

impl Projection {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_square()?;
        let sym = matrix.hermitian_part()?;
        let skew = matrix.distance(&sym)?;
        if skew > STATE_TOL {
            return Err(Error::NotProjection { deviation: skew });
        }
        let idempotence = sym.mul(&sym)?.distance(&sym)?;
        if idempotence > 1e-9 {
            return Err(Error::NotProjection {
                deviation: idempotence,
            });
        }
        Ok(Self { matrix: sym })
    }

    pub(crate) fn from_valid(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_valid(ComplexMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_valid(ComplexMatrix::identity(dim))
    }

    /// Rank-one projector onto the span of a nonzero vector.
    pub fn onto(vector: &[Complex64]) -> Result<Self> {
        let norm = math::sqrt(vector.iter().map(|z| z.norm_sqr()).sum());
        if norm == 0.0 {
            return Err(Error::InvalidParameter {
                name: "vector",
                reason: "zero vector spans no line".into(),
            });
        }
        let unit: Vec<Complex64> = vector.iter().map(|z| z / norm).collect();
        Ok(Self::from_valid(ComplexMatrix::ket_bra(&unit)?))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Dimension of the range, i.e. the rounded trace.
    pub fn rank(&self) -> usize {
        let t = self.matrix.trace().re;
        if t <= 0.5 {
            0
        } else {
            (t + 0.5) as usize
        }
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let id = ComplexMatrix::identity(self.dim());
        Self::from_valid(id.zip_with(&self.matrix, |a, b| a - b))
    }
}

impl Operator for Projection {
    fn operator(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Born rule probability `tr(rho E)`, clamped to `[0, 1]`.
pub fn born_probability(rho: &DensityOperator, effect: &impl Operator) -> Result<f64> {
    let e = effect.operator();
    if e.rows() != rho.dim() || e.cols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: e.rows(),
        });
    }
    // tr(rho E) = <rho, E> since rho is Hermitian
    let p = frobenius_inner(&rho.matrix, e)?.re;
    Ok(p.clamp(0.0, 1.0))
}

/// Convex combination `sum_j w_j rho_j`.
pub fn mixture(states: &[DensityOperator], weights: &[f64]) -> Result<DensityOperator> {
    let first = states.first().ok_or(Error::Empty("mixture"))?;
    if states.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: states.len(),
            found: weights.len(),
        });
    }
    let sum: f64 = weights.iter().sum();
    if weights.iter().any(|w| !(*w >= 0.0)) || (sum - 1.0).abs() > STATE_TOL {
        return Err(Error::WeightNormalization { sum });
    }
    let dim = first.dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (state, &w) in states.iter().zip(weights) {
        if state.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: state.dim(),
            });
        }
        if w == 0.0 {
            continue;
        }
        acc = acc.zip_with(&state.matrix, |a, b| a + b * w);
    }
    DensityOperator::new(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn plus() -> DensityOperator {
        DensityOperator::pure(&[c(H), c(H)]).unwrap()
    }

    #[test]
    fn density_validation() {
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::identity(2)),
            Err(Error::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityOperator::diagonal(&[1.5, -0.5]),
            Err(Error::NotPositive { .. })
        ));
        let skew = ComplexMatrix::from_real(2, 2, &[0.5, 0.3, -0.3, 0.5]).unwrap();
        assert!(matches!(DensityOperator::new(skew), Err(Error::NotHermitian { .. })));
        assert!(DensityOperator::diagonal(&[1.0 + 5e-11, -5e-11]).is_ok());
    }

    #[test]
    fn born_examples() {
        let p0 = Effect::new(ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap()).unwrap();
        assert_eq!(born_probability(&DensityOperator::basis(2, 0), &p0).unwrap(), 1.0);
        assert!((born_probability(&plus(), &p0).unwrap() - 0.5).abs() < 1e-15);
        let id = Effect::new(ComplexMatrix::identity(2)).unwrap();
        assert!((born_probability(&DensityOperator::maximally_mixed(2), &id).unwrap() - 1.0).abs() < 1e-15);
        let big = ComplexMatrix::identity(3);
        assert!(matches!(
            born_probability(&plus(), &big),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn effect_bounds() {
        assert!(Effect::new(ComplexMatrix::from_diagonal(&[0.3, 1.0]).unwrap()).is_ok());
        assert_eq!(
            Effect::new(ComplexMatrix::from_diagonal(&[1.2, 0.0]).unwrap()),
            Err(Error::NotEffect)
        );
        assert_eq!(
            Effect::new(ComplexMatrix::from_diagonal(&[-0.1, 0.0]).unwrap()),
            Err(Error::NotEffect)
        );
    }

    #[test]
    fn projection_validation() {
        assert!(Projection::new(ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap()).is_ok());
        assert!(matches!(
            Projection::new(ComplexMatrix::from_diagonal(&[0.5, 0.0]).unwrap()),
            Err(Error::NotProjection { .. })
        ));
        let p = Projection::onto(&[c(1.0), c(1.0)]).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.complement().rank(), 1);
        assert_eq!(Projection::identity(3).rank(), 3);
        assert_eq!(Projection::zero(3).rank(), 0);
    }

    #[test]
    fn mixture_examples() {
        let s0 = DensityOperator::basis(2, 0);
        let s1 = DensityOperator::basis(2, 1);
        let half = mixture(&[s0.clone(), s1.clone()], &[0.5, 0.5]).unwrap();
        assert_eq!(half, DensityOperator::maximally_mixed(2));

        let first = mixture(&[plus(), s1.clone()], &[1.0, 0.0]).unwrap();
        assert_eq!(first, plus());

        let m = mixture(&[s0.clone(), s1.clone()], &[0.25, 0.75]).unwrap();
        assert_eq!(m, DensityOperator::diagonal(&[0.25, 0.75]).unwrap());
    }

    #[test]
    fn mixture_errors() {
        let s0 = DensityOperator::basis(2, 0);
        let s1 = DensityOperator::basis(2, 1);
        assert!(matches!(
            mixture(&[s0.clone(), s1.clone()], &[0.5, 0.6]),
            Err(Error::WeightNormalization { .. })
        ));
        assert!(matches!(
            mixture(&[s0.clone(), s1.clone()], &[1.5, -0.5]),
            Err(Error::WeightNormalization { .. })
        ));
        assert!(matches!(
            mixture(&[s0, DensityOperator::basis(3, 0)], &[0.5, 0.5]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(mixture(&[], &[]), Err(Error::Empty("mixture")));
    }
}
