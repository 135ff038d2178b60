use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{tensor_product, ComplexMatrix};

use super::state::DensityOperator;

/// Frobenius tolerance on `sum K^dagger K = I`.
pub const CHANNEL_TOL: f64 = 1e-9;

/// Completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
}

fn probability(name: &'static str, p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{p} is not in [0, 1]"),
        })
    }
}

impl QuantumChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::Empty("Kraus operator list"))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        let mut sum = ComplexMatrix::zeros(d_in, d_in);
        for k in &kraus {
            if k.rows() != d_out || k.cols() != d_in {
                return Err(Error::DimensionMismatch {
                    expected: d_in,
                    found: k.cols(),
                });
            }
            sum = sum.add(&k.adjoint().mul_unchecked(k))?;
        }
        let deviation = sum.distance(&ComplexMatrix::identity(d_in))?;
        if deviation > CHANNEL_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { kraus })
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn input_dim(&self) -> usize {
        self.kraus[0].cols()
    }

    pub fn output_dim(&self) -> usize {
        self.kraus[0].rows()
    }

    /// True when `sum K K^dagger = I` as well, so the maximally mixed state is fixed.
    pub fn is_unital(&self) -> bool {
        if self.input_dim() != self.output_dim() {
            return false;
        }
        let d = self.output_dim();
        let sum = self
            .kraus
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, k| {
                acc.zip_with(&k.mul_unchecked(&k.adjoint()), |a, b| a + b)
            });
        sum.distance(&ComplexMatrix::identity(d))
            .map(|dev| dev <= CHANNEL_TOL)
            .unwrap_or(false)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: alloc::vec![ComplexMatrix::identity(dim)],
        }
    }

    /// `rho -> U rho U^dagger`; `U` must be unitary within [`CHANNEL_TOL`].
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        u.require_square()?;
        Self::new(alloc::vec![u])
    }

    /// `rho -> (1 - p) rho + p I / d`, with Weyl-Heisenberg Kraus operators.
    pub fn depolarizing(dim: usize, p: f64) -> Result<Self> {
        let p = probability("p", p)?;
        let d = dim as f64;
        let shift = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if i == (j + 1) % dim {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let omega = 2.0 * core::f64::consts::PI / d;
        let clock = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                math::cis(omega * i as f64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let mut kraus = Vec::with_capacity(dim * dim);
        let mut x_pow = ComplexMatrix::identity(dim);
        for a in 0..dim {
            let mut weyl = x_pow.clone();
            for b in 0..dim {
                let weight = if a == 0 && b == 0 {
                    1.0 - p + p / (d * d)
                } else {
                    p / (d * d)
                };
                if weight > 0.0 {
                    kraus.push(weyl.scale_real(math::sqrt(weight)));
                }
                weyl = weyl.mul_unchecked(&clock);
            }
            x_pow = x_pow.mul_unchecked(&shift);
        }
        Self::new(kraus)
    }

    /// Qubit bit flip: `X` with probability `p`.
    pub fn bit_flip(p: f64) -> Result<Self> {
        let p = probability("p", p)?;
        Self::new(alloc::vec![
            ComplexMatrix::identity(2).scale_real(math::sqrt(1.0 - p)),
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?.scale_real(math::sqrt(p)),
        ])
    }

    /// Qubit phase flip: `Z` with probability `p`.
    pub fn phase_flip(p: f64) -> Result<Self> {
        let p = probability("p", p)?;
        Self::new(alloc::vec![
            ComplexMatrix::identity(2).scale_real(math::sqrt(1.0 - p)),
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])?.scale_real(math::sqrt(p)),
        ])
    }

    /// Qubit amplitude damping towards `|0>` with decay probability `gamma`.
    pub fn amplitude_damping(gamma: f64) -> Result<Self> {
        let gamma = probability("gamma", gamma)?;
        Self::new(alloc::vec![
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, math::sqrt(1.0 - gamma)])?,
            ComplexMatrix::from_real(2, 2, &[0.0, math::sqrt(gamma), 0.0, 0.0])?,
        ])
    }

    /// Non-selective projective measurement in the orthonormal basis given by
    /// the columns of `basis`.
    pub fn dephasing(basis: &ComplexMatrix) -> Result<Self> {
        let d = basis.require_square()?;
        let kraus = (0..d)
            .map(|k| {
                let v = basis.column_vector(k);
                ComplexMatrix::ket_bra(&v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(kraus)
    }

    /// Lifts the channel to act on factor `target` of a tensor product with
    /// factor dimensions `dims`, as the identity elsewhere.
    pub fn on_factor(&self, dims: &[usize], target: usize) -> Result<Self> {
        if target >= dims.len() {
            return Err(Error::FactorIndex {
                index: target,
                factors: dims.len(),
            });
        }
        let d = self.input_dim();
        if self.output_dim() != d || dims[target] != d {
            return Err(Error::DimensionMismatch {
                expected: dims[target],
                found: d,
            });
        }
        let before: usize = dims[..target].iter().product();
        let after: usize = dims[target + 1..].iter().product();
        let left = ComplexMatrix::identity(before);
        let right = ComplexMatrix::identity(after);
        let kraus = self
            .kraus
            .iter()
            .map(|k| tensor_product(&tensor_product(&left, k), &right))
            .collect();
        Self::new(kraus)
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        apply_channel(self, rho)
    }
}

/// `sum_k K rho K^dagger`.
pub fn apply_channel(channel: &QuantumChannel, rho: &DensityOperator) -> Result<DensityOperator> {
    if channel.input_dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.input_dim(),
            found: rho.dim(),
        });
    }
    let d = channel.output_dim();
    let mut out = ComplexMatrix::zeros(d, d);
    for k in &channel.kraus {
        let term = k.mul_unchecked(rho.matrix()).mul_unchecked(&k.adjoint());
        out = out.zip_with(&term, |a, b| a + b);
    }
    DensityOperator::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::von_neumann_entropy;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> DensityOperator {
        DensityOperator::pure(&[Complex64::new(H, 0.0), Complex64::new(H, 0.0)]).unwrap()
    }

    #[test]
    fn identity_channel() {
        let ch = QuantumChannel::identity(2);
        assert_eq!(ch.apply(&plus()).unwrap(), plus());
    }

    #[test]
    fn full_depolarizing() {
        for d in [2, 3] {
            let ch = QuantumChannel::depolarizing(d, 1.0).unwrap();
            let rho = DensityOperator::basis(d, 0);
            let out = ch.apply(&rho).unwrap();
            let expected = DensityOperator::maximally_mixed(d);
            assert!(out.matrix().distance(expected.matrix()).unwrap() < 1e-14);
            assert!(ch.is_unital());
        }
        let out = QuantumChannel::depolarizing(2, 1.0).unwrap().apply(&plus()).unwrap();
        assert!(out.matrix().distance(DensityOperator::maximally_mixed(2).matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn partial_depolarizing_formula() {
        let p = 0.4;
        let ch = QuantumChannel::depolarizing(3, p).unwrap();
        let rho = DensityOperator::diagonal(&[0.5, 0.3, 0.2]).unwrap();
        let out = ch.apply(&rho).unwrap();
        let expected = DensityOperator::diagonal(&[0.6 * 0.5 + 0.4 / 3.0, 0.6 * 0.3 + 0.4 / 3.0, 0.6 * 0.2 + 0.4 / 3.0]).unwrap();
        assert!(out.matrix().distance(expected.matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn bit_flip_on_zero() {
        let out = QuantumChannel::bit_flip(0.3).unwrap().apply(&DensityOperator::basis(2, 0)).unwrap();
        let expected = DensityOperator::diagonal(&[0.7, 0.3]).unwrap();
        assert!(out.matrix().distance(expected.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn amplitude_damping_resets() {
        let ch = QuantumChannel::amplitude_damping(1.0).unwrap();
        let out = ch.apply(&DensityOperator::maximally_mixed(2)).unwrap();
        assert_eq!(out, DensityOperator::basis(2, 0));
        assert!(!ch.is_unital());
    }

    #[test]
    fn dephasing_kills_coherence() {
        let ch = QuantumChannel::dephasing(&ComplexMatrix::identity(2)).unwrap();
        let out = ch.apply(&plus()).unwrap();
        assert!(out.matrix().distance(DensityOperator::maximally_mixed(2).matrix()).unwrap() < 1e-15);
        assert!((von_neumann_entropy(&out) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn on_factor_acts_locally() {
        let ch = QuantumChannel::amplitude_damping(1.0).unwrap().on_factor(&[2, 2], 1).unwrap();
        let rho = DensityOperator::basis(2, 1).tensor(&DensityOperator::basis(2, 1));
        let out = ch.apply(&rho).unwrap();
        let expected = DensityOperator::basis(2, 1).tensor(&DensityOperator::basis(2, 0));
        assert!(out.matrix().distance(expected.matrix()).unwrap() < 1e-15);
        assert!(QuantumChannel::bit_flip(0.1).unwrap().on_factor(&[3, 2], 0).is_err());
    }

    #[test]
    fn validation() {
        let k = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(QuantumChannel::new(alloc::vec![k]), Err(Error::NotTracePreserving { .. })));
        assert_eq!(QuantumChannel::new(Vec::new()), Err(Error::Empty("Kraus operator list")));
        assert!(QuantumChannel::bit_flip(1.5).is_err());
        let ch = QuantumChannel::identity(3);
        assert!(matches!(ch.apply(&plus()), Err(Error::DimensionMismatch { .. })));
    }
}
