use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::random;

use super::channel::CHANNEL_TOL;
use super::state::{born_probability, DensityOperator, Effect};

/// Number of times each outcome (by effect index) was observed.
pub type OutcomeCounts = BTreeMap<usize, u64>;

/// Labelled effects summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmMeasurement {
    effects: Vec<Effect>,
    labels: Vec<String>,
}

impl PovmMeasurement {
    pub fn new(effects: Vec<Effect>, labels: Vec<String>) -> Result<Self> {
        let first = effects.first().ok_or(Error::Empty("measurement"))?;
        if labels.len() != effects.len() {
            return Err(Error::DimensionMismatch {
                expected: effects.len(),
                found: labels.len(),
            });
        }
        let d = first.matrix().rows();
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &effects {
            sum = sum.add(e.matrix())?;
        }
        let deviation = sum.distance(&ComplexMatrix::identity(d))?;
        if deviation > CHANNEL_TOL {
            return Err(Error::IncompleteMeasurement { deviation });
        }
        Ok(Self { effects, labels })
    }

    /// Effects labelled `"0"`, `"1"`, ... in order.
    pub fn with_index_labels(effects: Vec<Effect>) -> Result<Self> {
        let labels = (0..effects.len()).map(|i| i.to_string()).collect();
        Self::new(effects, labels)
    }

    /// Rank-one projectors onto the columns of a unitary `basis`.
    pub fn from_basis(basis: &ComplexMatrix) -> Result<Self> {
        let d = basis.require_square()?;
        let effects = (0..d)
            .map(|k| Effect::new(ComplexMatrix::ket_bra(&basis.column_vector(k))?))
            .collect::<Result<Vec<_>>>()?;
        Self::with_index_labels(effects)
    }

    pub fn computational_basis(dim: usize) -> Self {
        Self::from_basis(&ComplexMatrix::identity(dim)).expect("identity is a basis")
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.effects[0].matrix().rows()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Born probabilities `tr(rho E_k)` of every outcome.
    pub fn probabilities(&self, rho: &DensityOperator) -> Result<Vec<f64>> {
        self.effects.iter().map(|e| born_probability(rho, e)).collect()
    }
}

/// Draws `shots` outcome indices from the categorical distribution `probabilities`.
pub(crate) fn sample_indices(probabilities: &[f64], shots: u64, seed: u64) -> Vec<usize> {
    if shots == 0 {
        return Vec::new();
    }
    let dist = WeightedIndex::new(probabilities).expect("probabilities are nonnegative with positive sum");
    let mut rng = random::rng(seed);
    (0..shots).map(|_| dist.sample(&mut rng)).collect()
}

/// Samples `shots` outcomes of `measurement` on `rho`. Deterministic per seed;
/// only observed outcomes appear in the result.
pub fn sample_measurement(
    rho: &DensityOperator,
    measurement: &PovmMeasurement,
    shots: u64,
    seed: u64,
) -> Result<OutcomeCounts> {
    if measurement.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: measurement.dim(),
            found: rho.dim(),
        });
    }
    let probabilities = measurement.probabilities(rho)?;
    let mut counts = OutcomeCounts::new();
    for k in sample_indices(&probabilities, shots, seed) {
        *counts.entry(k).or_insert(0) += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_outcome() {
        let m = PovmMeasurement::computational_basis(2);
        let counts = sample_measurement(&DensityOperator::basis(2, 0), &m, 100, 1).unwrap();
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), alloc::vec![(0, 100)]);
    }

    #[test]
    fn zero_shots() {
        let m = PovmMeasurement::computational_basis(2);
        let counts = sample_measurement(&DensityOperator::maximally_mixed(2), &m, 0, 1).unwrap();
        assert!(counts.is_empty());
    }

    #[test]
    fn binomial_statistics() {
        let m = PovmMeasurement::computational_basis(2);
        let counts = sample_measurement(&DensityOperator::maximally_mixed(2), &m, 1_000_000, 42).unwrap();
        assert_eq!(counts.values().sum::<u64>(), 1_000_000);
        for k in 0..2 {
            let n = counts[&k] as f64;
            assert!((n - 500_000.0).abs() <= 3.0 * 500.0, "outcome {k}: {n}");
        }
    }

    #[test]
    fn seeded_reproducibility() {
        let m = PovmMeasurement::computational_basis(3);
        let rho = DensityOperator::diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let a = sample_measurement(&rho, &m, 1000, 9).unwrap();
        let b = sample_measurement(&rho, &m, 1000, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_measurement(&rho, &m, 1000, 10).unwrap());
    }

    #[test]
    fn validation() {
        let half = Effect::new(ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert!(matches!(
            PovmMeasurement::with_index_labels(alloc::vec![half.clone()]),
            Err(Error::IncompleteMeasurement { .. })
        ));
        let m = PovmMeasurement::with_index_labels(alloc::vec![half.clone(), half]).unwrap();
        assert_eq!(m.label_index("1"), Some(1));
        assert!(sample_measurement(&DensityOperator::basis(3, 0), &m, 1, 0).is_err());
    }
}
