use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quantum::{born_probability, DensityOperator, STATE_TOL};

use super::{AtomSet, Event, EventLattice};

/// What a [`GeneralizedState`] evaluates events against.
#[derive(Debug, Clone, PartialEq)]
pub enum StateBacking {
    /// Kolmogorov measure: atom probabilities on a Boolean algebra.
    Probabilities(Vec<f64>),
    /// Born rule `tr(rho P)` on the projection lattice.
    Born(DensityOperator),
    /// Explicit values on selected Boolean events; other events are unassigned.
    /// Used to exhibit assignments that break additivity.
    Table(BTreeMap<AtomSet, f64>),
}

/// A map `nu` from events to `[0, 1]` with `nu(top) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedState {
    lattice: EventLattice,
    backing: StateBacking,
}

impl GeneralizedState {
    pub fn kolmogorov(probabilities: Vec<f64>) -> Result<Self> {
        let lattice = EventLattice::boolean(probabilities.len())?;
        let sum: f64 = probabilities.iter().sum();
        if probabilities.iter().any(|p| !(*p >= 0.0)) || (sum - 1.0).abs() > STATE_TOL {
            return Err(Error::WeightNormalization { sum });
        }
        Ok(Self {
            lattice,
            backing: StateBacking::Probabilities(probabilities),
        })
    }

    pub fn born(rho: DensityOperator) -> Self {
        Self {
            lattice: EventLattice::Projection { dim: rho.dim() },
            backing: StateBacking::Born(rho),
        }
    }

    /// Hand-assigned values on a Boolean algebra with `atoms` atoms. The top
    /// element must be assigned 1 and every value must lie in `[0, 1]`.
    pub fn tabulated(atoms: usize, values: impl IntoIterator<Item = (AtomSet, f64)>) -> Result<Self> {
        let lattice = EventLattice::boolean(atoms)?;
        let mut table = BTreeMap::new();
        for (set, value) in values {
            if set.atoms() != atoms {
                return Err(Error::MixedLattice);
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidParameter {
                    name: "value",
                    reason: alloc::format!("{value} is not a probability"),
                });
            }
            table.insert(set, value);
        }
        let top = table.get(&AtomSet::full(atoms)).copied().unwrap_or(f64::NAN);
        if !((top - 1.0).abs() <= STATE_TOL) {
            return Err(Error::InvalidParameter {
                name: "top",
                reason: "the top event must be assigned 1".into(),
            });
        }
        Ok(Self {
            lattice,
            backing: StateBacking::Table(table),
        })
    }

    pub fn lattice(&self) -> EventLattice {
        self.lattice
    }

    pub fn backing(&self) -> &StateBacking {
        &self.backing
    }

    /// `nu(event)`.
    pub fn evaluate(&self, event: &Event) -> Result<f64> {
        if !self.lattice.contains(event) {
            return Err(Error::MixedLattice);
        }
        match (&self.backing, event) {
            (StateBacking::Probabilities(p), Event::Boolean(set)) => Ok(set.iter().map(|i| p[i]).sum::<f64>().clamp(0.0, 1.0)),
            (StateBacking::Born(rho), Event::Projection(proj)) => born_probability(rho, proj),
            (StateBacking::Table(table), Event::Boolean(set)) => table.get(set).copied().ok_or(Error::UnassignedEvent),
            _ => Err(Error::MixedLattice),
        }
    }
}

/// Residuals of the generalized probability axioms on a set of test families.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// `|nu(top) - 1|`.
    pub normalization: f64,
    /// `|nu(join E_i) - sum nu(E_i)|` per family.
    pub additivity: Vec<f64>,
    pub additivity_max: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Checks normalization and additivity over pairwise orthogonal families.
///
/// A family that is not pairwise orthogonal is malformed input and yields
/// [`Error::NonOrthogonalFamily`].
pub fn verify_state_axioms(nu: &GeneralizedState, families: &[Vec<Event>], tol: f64) -> Result<AxiomReport> {
    let lattice = nu.lattice();
    let normalization = (nu.evaluate(&lattice.top())? - 1.0).abs();
    let mut additivity = Vec::with_capacity(families.len());
    for family in families {
        for (i, a) in family.iter().enumerate() {
            for (j, b) in family.iter().enumerate().skip(i + 1) {
                if !lattice.orthogonal(a, b)? {
                    return Err(Error::NonOrthogonalFamily { first: i, second: j });
                }
            }
        }
        let joined = lattice.join_all(family)?;
        let whole = nu.evaluate(&joined)?;
        let parts = family.iter().map(|e| nu.evaluate(e)).sum::<Result<f64>>()?;
        additivity.push((whole - parts).abs());
    }
    let additivity_max = additivity.iter().copied().fold(0.0, f64::max);
    Ok(AxiomReport {
        normalization,
        additivity_max,
        pass: normalization <= tol && additivity_max <= tol,
        additivity,
        tolerance: tol,
    })
}
