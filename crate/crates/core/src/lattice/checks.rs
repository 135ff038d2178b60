use alloc::vec::Vec;

use rand::Rng;

use crate::error::Result;
use crate::matrix::ComplexMatrix;
use crate::quantum::{DensityOperator, Projection};
use crate::random::{self, SeededRng};
use crate::spectral::column_space;

use super::state::{verify_state_axioms, GeneralizedState};
use super::{AtomSet, Event, EventLattice};

/// Seed of task `index` in the check stream `stream`.
fn task_seed(seed: u64, stream: u64, index: usize) -> u64 {
    seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index as u64)
}

impl EventLattice {
    /// Random event. Projection ranks are uniform in `0..=dim`.
    pub fn random_event(&self, rng: &mut SeededRng) -> Event {
        match *self {
            Self::Boolean { atoms } => {
                Event::Boolean(AtomSet::from_indices(atoms, (0..atoms).filter(|_| rng.random_bool(0.5))))
            }
            Self::Projection { dim } => Event::Projection(Projection::from_valid(random::projector(dim, rng))),
        }
    }

    /// Random event below `upper`.
    pub fn random_event_below(&self, upper: &Event, rng: &mut SeededRng) -> Event {
        match upper {
            Event::Boolean(set) => Event::Boolean(AtomSet::from_indices(
                set.atoms(),
                set.iter().filter(|_| rng.random_bool(0.5)).collect::<Vec<_>>(),
            )),
            Event::Projection(p) => {
                let basis = column_space(p.matrix());
                let d = p.dim();
                let k = basis.len();
                let j = rng.random_range(0..=k);
                if j == 0 {
                    return Event::Projection(Projection::zero(d));
                }
                let w = random::unitary(k, rng);
                // columns of basis * W span random subspaces of range(P)
                let rotated = ComplexMatrix::from_fn(d, k, |row, col| (0..k).map(|m| basis[m][row] * w.get(m, col)).sum());
                let cols: Vec<usize> = (0..j).collect();
                Event::Projection(Projection::from_valid(random::projector_from_columns(&rotated, &cols)))
            }
        }
    }

    /// Random pairwise orthogonal family of events.
    pub fn random_orthogonal_family(&self, rng: &mut SeededRng) -> Vec<Event> {
        match *self {
            Self::Boolean { atoms } => {
                let groups = rng.random_range(1..=atoms);
                let mut members: Vec<AtomSet> = (0..groups).map(|_| AtomSet::empty(atoms)).collect();
                for atom in 0..atoms {
                    let g = rng.random_range(0..=groups);
                    if g < groups {
                        members[g].insert(atom);
                    }
                }
                members.into_iter().map(Event::Boolean).collect()
            }
            Self::Projection { dim } => random::orthogonal_family(dim, rng)
                .into_iter()
                .map(|p| Event::Projection(Projection::from_valid(p)))
                .collect(),
        }
    }
}

/// Outcome of [`check_orthomodularity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrthomodularityReport {
    pub tested: usize,
    /// Pairs with `a` not below `c`; the law does not apply to them.
    pub skipped: usize,
    pub failures: usize,
}

impl OrthomodularityReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Evaluates `a <= c  =>  a ∨ (a' ∧ c) = c`. `None` when `a` is not below `c`.
pub fn orthomodular_law(lattice: &EventLattice, a: &Event, c: &Event) -> Result<Option<bool>> {
    if !lattice.leq(a, c)? {
        return Ok(None);
    }
    let inner = lattice.meet(&lattice.ortho(a)?, c)?;
    let lhs = lattice.join(a, &inner)?;
    Ok(Some(lattice.equivalent(&lhs, c)?))
}

/// Tests the orthomodular law on `samples` random pairs `a <= c`, pair `i`
/// drawn with seed `seed + i`.
pub fn check_orthomodularity(lattice: &EventLattice, samples: usize, seed: u64) -> Result<OrthomodularityReport> {
    let mut report = OrthomodularityReport {
        tested: 0,
        skipped: 0,
        failures: 0,
    };
    for i in 0..samples {
        let mut rng = random::rng(seed.wrapping_add(i as u64));
        let c = lattice.random_event(&mut rng);
        let a = lattice.random_event_below(&c, &mut rng);
        match orthomodular_law(lattice, &a, &c)? {
            None => report.skipped += 1,
            Some(holds) => {
                report.tested += 1;
                if !holds {
                    report.failures += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of a distributivity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributivityReport {
    pub tested: usize,
    pub violations: usize,
}

impl DistributivityReport {
    pub fn violation_rate(&self) -> f64 {
        if self.tested == 0 {
            0.0
        } else {
            self.violations as f64 / self.tested as f64
        }
    }
}

/// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
pub fn distributive_law_holds(lattice: &EventLattice, a: &Event, b: &Event, c: &Event) -> Result<bool> {
    let lhs = lattice.meet(a, &lattice.join(b, c)?)?;
    let rhs = lattice.join(&lattice.meet(a, b)?, &lattice.meet(a, c)?)?;
    lattice.equivalent(&lhs, &rhs)
}

pub fn check_distributivity_triples(lattice: &EventLattice, triples: &[(Event, Event, Event)]) -> Result<DistributivityReport> {
    let mut violations = 0;
    for (a, b, c) in triples {
        if !distributive_law_holds(lattice, a, b, c)? {
            violations += 1;
        }
    }
    Ok(DistributivityReport {
        tested: triples.len(),
        violations,
    })
}

/// Tests distributivity on `samples` random triples, triple `i` drawn with
/// seed `seed + i`.
pub fn check_distributivity(lattice: &EventLattice, samples: usize, seed: u64) -> Result<DistributivityReport> {
    let triples: Vec<_> = (0..samples)
        .map(|i| {
            let mut rng = random::rng(seed.wrapping_add(i as u64));
            (
                lattice.random_event(&mut rng),
                lattice.random_event(&mut rng),
                lattice.random_event(&mut rng),
            )
        })
        .collect();
    check_distributivity_triples(lattice, &triples)
}

/// Combined structural and state-axiom verification of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeReport {
    pub normalization: f64,
    pub additivity_max: f64,
    pub axioms_pass: bool,
    pub orthomodularity: OrthomodularityReport,
    pub distributivity: DistributivityReport,
}

/// Draws a random state (probability vector or density operator), checks the
/// state axioms on `samples` random orthogonal families at tolerance `tol`,
/// and runs the orthomodularity and distributivity checks with `samples`
/// draws each. Each check uses its own seed stream derived from `seed`.
pub fn verify_lattice(lattice: &EventLattice, samples: usize, seed: u64, tol: f64) -> Result<LatticeReport> {
    let mut rng = random::rng(task_seed(seed, 0, 0));
    let state = match *lattice {
        EventLattice::Boolean { atoms } => GeneralizedState::kolmogorov(random::probability_vector(atoms, &mut rng))?,
        EventLattice::Projection { dim } => {
            GeneralizedState::born(DensityOperator::new(random::density_matrix(dim, &mut rng))?)
        }
    };
    let families: Vec<Vec<Event>> = (0..samples)
        .map(|i| lattice.random_orthogonal_family(&mut random::rng(task_seed(seed, 1, i))))
        .collect();
    let axioms = verify_state_axioms(&state, &families, tol)?;
    Ok(LatticeReport {
        normalization: axioms.normalization,
        additivity_max: axioms.additivity_max,
        axioms_pass: axioms.pass,
        orthomodularity: check_orthomodularity(lattice, samples, task_seed(seed, 2, 0))?,
        distributivity: check_distributivity(lattice, samples, task_seed(seed, 3, 0))?,
    })
}
