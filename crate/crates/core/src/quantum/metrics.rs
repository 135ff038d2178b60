use crate::error::{Error, Result};
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::spectral::eigen_hermitian;

use super::state::DensityOperator;

/// Eigenvalues below this are ignored by the entropy sum.
const ENTROPY_CUTOFF: f64 = 1e-12;

fn same_dim(a: &DensityOperator, b: &DensityOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// Trace distance `1/2 sum |lambda_k(a - b)|`.
pub fn trace_distance(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    same_dim(a, b)?;
    let diff = a.matrix().sub(b.matrix())?;
    let spectrum = eigen_hermitian(&diff)?;
    let d = 0.5 * spectrum.eigenvalues.iter().map(|l| l.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

/// Square-root fidelity `tr sqrt(sqrt(a) b sqrt(a))`.
pub fn fidelity(a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
    same_dim(a, b)?;
    let sqrt_a = a.spectrum().map(|l| math::sqrt(l.max(0.0)))?;
    let inner = sqrt_a.mul(b.matrix())?.mul(&sqrt_a)?;
    let spectrum = eigen_hermitian(&inner)?;
    let f: f64 = spectrum.eigenvalues.iter().map(|&l| math::sqrt(l.max(0.0))).sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Hilbert-Schmidt (Frobenius) distance `||a - b||_F`.
pub fn hs_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    a.distance(b)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let s: f64 = rho
        .clipped_eigenvalues()
        .into_iter()
        .filter(|&l| l > ENTROPY_CUTOFF)
        .map(|l| -l * math::log2(l))
        .sum();
    s.max(0.0)
}

/// `tr(rho^2)`.
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.matrix().entries().iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> DensityOperator {
        DensityOperator::pure(&[Complex64::new(H, 0.0), Complex64::new(H, 0.0)]).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let s0 = DensityOperator::basis(2, 0);
        let s1 = DensityOperator::basis(2, 1);
        assert_eq!(trace_distance(&plus(), &plus()).unwrap(), 0.0);
        assert!((trace_distance(&s0, &s1).unwrap() - 1.0).abs() < 1e-15);
        assert!((trace_distance(&s0, &plus()).unwrap() - H).abs() < 1e-12);
        assert!(trace_distance(&s0, &DensityOperator::basis(3, 0)).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let s0 = DensityOperator::basis(2, 0);
        let s1 = DensityOperator::basis(2, 1);
        assert!((fidelity(&plus(), &plus()).unwrap() - 1.0).abs() < 1e-7);
        let mixed = DensityOperator::diagonal(&[0.3, 0.7]).unwrap();
        assert!((fidelity(&mixed, &mixed).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(fidelity(&s0, &s1).unwrap(), 0.0);
        assert!((fidelity(&s0, &plus()).unwrap() - H).abs() < 1e-12);
    }

    #[test]
    fn hs_examples() {
        let s0 = DensityOperator::basis(2, 0);
        let s1 = DensityOperator::basis(2, 1);
        assert_eq!(hs_distance(s0.matrix(), s0.matrix()).unwrap(), 0.0);
        assert!((hs_distance(s0.matrix(), s1.matrix()).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let id = ComplexMatrix::identity(2);
        let zero = ComplexMatrix::zeros(2, 2);
        assert!((hs_distance(&id, &zero).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(hs_distance(&id, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(von_neumann_entropy(&plus()), 0.0);
        assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(2)) - 1.0).abs() < 1e-15);
        let d = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        // -(0.25 log2 0.25 + 0.75 log2 0.75)
        let expected = 0.5 + 0.75 * (4.0f64 / 3.0).log2();
        assert!((von_neumann_entropy(&d) - expected).abs() < 1e-14);
        assert!((expected - 0.81128).abs() < 1e-5);
        assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(4)) - 2.0).abs() < 1e-14);
    }
}
