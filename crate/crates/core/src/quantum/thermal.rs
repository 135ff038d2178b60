use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::spectral::eigen_hermitian;

use super::state::DensityOperator;

/// Gibbs state `exp(-beta H) / tr exp(-beta H)`, the finite-dimensional KMS
/// state at inverse temperature `beta`.
///
/// Boltzmann weights are computed relative to the ground energy so large
/// `beta` does not underflow.
pub fn gibbs_state(hamiltonian: &ComplexMatrix, beta: f64) -> Result<DensityOperator> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidParameter {
            name: "beta",
            reason: format!("{beta} is not a finite nonnegative number"),
        });
    }
    let spectrum = eigen_hermitian(hamiltonian)?;
    let ground = spectrum.min_eigenvalue();
    let weights: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .map(|&e| math::exp(-beta * (e - ground)))
        .collect();
    let z: f64 = weights.iter().sum();
    let probabilities: Vec<f64> = weights.iter().map(|w| w / z).collect();
    DensityOperator::new(spectrum.assemble(&probabilities))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn infinite_temperature() {
        let h = random::hermitian(3, &mut random::rng(1));
        let rho = gibbs_state(&h, 0.0).unwrap();
        assert!(rho.matrix().distance(DensityOperator::maximally_mixed(3).matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn two_level_boltzmann() {
        let h = ComplexMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        let rho = gibbs_state(&h, core::f64::consts::LN_2).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[2.0 / 3.0, 1.0 / 3.0]).unwrap();
        assert!(rho.matrix().distance(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn constant_hamiltonian() {
        for beta in [0.1, 1.0, 50.0] {
            let rho = gibbs_state(&ComplexMatrix::identity(4), beta).unwrap();
            assert!(rho.matrix().distance(DensityOperator::maximally_mixed(4).matrix()).unwrap() < 1e-14);
        }
    }

    #[test]
    fn low_temperature_is_ground_state() {
        let h = ComplexMatrix::from_diagonal(&[3.0, -2.0, 1.0]).unwrap();
        let rho = gibbs_state(&h, 1e3).unwrap();
        assert!(rho.matrix().distance(DensityOperator::basis(3, 1).matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = ComplexMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert!(gibbs_state(&h, f64::NAN).is_err());
        assert!(gibbs_state(&h, -1.0).is_err());
        let not_h = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(gibbs_state(&not_h, 1.0), Err(Error::NotHermitian { .. })));
    }
}
