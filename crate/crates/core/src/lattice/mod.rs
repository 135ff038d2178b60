//! Event lattices and generalized probability states.
//!
//! Two families of orthomodular lattices are supported: finite Boolean
//! algebras (events are sets of atoms) and the lattice of orthogonal
//! projections of `C^d` (events are projectors, i.e. closed subspaces).
//! Projection events are only ever constructed on demand; the lattice itself
//! is infinite.
//!
//! In the projection lattice the join is the projector onto the sum of the
//! two ranges, the meet is the projector onto their intersection (computed as
//! the complement of the join of the complements), and the orthocomplement is
//! `I - P`. Rank decisions use the singular-value threshold
//! [`crate::spectral::RANK_TOL`] relative to the largest singular value, or to
//! 1 if that is smaller (the scale of any nonzero projector).

mod atoms;
mod checks;
mod state;

pub use atoms::AtomSet;
pub use checks::{
    check_distributivity, check_distributivity_triples, check_orthomodularity, distributive_law_holds,
    orthomodular_law, verify_lattice, DistributivityReport, LatticeReport, OrthomodularityReport,
};
pub use state::{verify_state_axioms, AxiomReport, GeneralizedState, StateBacking};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::quantum::Projection;
use crate::spectral::unit_scale_range_projector;

/// Frobenius tolerance for equality and inclusion of projection events.
pub const EVENT_TOL: f64 = 1e-8;

/// `||PQ||_F` below this makes two projections orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// An element of an [`EventLattice`].
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    Boolean(AtomSet),
    Projection(Projection),
}

impl From<AtomSet> for Event {
    fn from(set: AtomSet) -> Self {
        Event::Boolean(set)
    }
}

impl From<Projection> for Event {
    fn from(p: Projection) -> Self {
        Event::Projection(p)
    }
}

/// A Boolean algebra on `atoms` atoms, or the projection lattice of `C^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventLattice {
    Boolean { atoms: usize },
    Projection { dim: usize },
}

enum Pair<'a> {
    Sets(&'a AtomSet, &'a AtomSet),
    Projectors(&'a Projection, &'a Projection),
}

impl EventLattice {
    pub fn boolean(atoms: usize) -> Result<Self> {
        if atoms == 0 {
            return Err(Error::Empty("atom set"));
        }
        Ok(Self::Boolean { atoms })
    }

    pub fn projection(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("Hilbert space"));
        }
        Ok(Self::Projection { dim })
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, Self::Boolean { .. })
    }

    pub fn top(&self) -> Event {
        match *self {
            Self::Boolean { atoms } => Event::Boolean(AtomSet::full(atoms)),
            Self::Projection { dim } => Event::Projection(Projection::identity(dim)),
        }
    }

    pub fn bottom(&self) -> Event {
        match *self {
            Self::Boolean { atoms } => Event::Boolean(AtomSet::empty(atoms)),
            Self::Projection { dim } => Event::Projection(Projection::zero(dim)),
        }
    }

    pub fn contains(&self, event: &Event) -> bool {
        match (self, event) {
            (Self::Boolean { atoms }, Event::Boolean(s)) => s.atoms() == *atoms,
            (Self::Projection { dim }, Event::Projection(p)) => p.dim() == *dim,
            _ => false,
        }
    }

    fn require(&self, event: &Event) -> Result<()> {
        if self.contains(event) {
            Ok(())
        } else {
            Err(Error::MixedLattice)
        }
    }

    fn pair<'a>(&self, a: &'a Event, b: &'a Event) -> Result<Pair<'a>> {
        self.require(a)?;
        self.require(b)?;
        match (a, b) {
            (Event::Boolean(x), Event::Boolean(y)) => Ok(Pair::Sets(x, y)),
            (Event::Projection(p), Event::Projection(q)) => Ok(Pair::Projectors(p, q)),
            _ => Err(Error::MixedLattice),
        }
    }

    /// Greatest lower bound.
    pub fn meet(&self, a: &Event, b: &Event) -> Result<Event> {
        match self.pair(a, b)? {
            Pair::Sets(x, y) => Ok(Event::Boolean(x.intersection(y))),
            Pair::Projectors(p, q) => {
                let sum = join_projectors(&p.complement(), &q.complement());
                Ok(Event::Projection(sum.complement()))
            }
        }
    }

    /// Least upper bound.
    pub fn join(&self, a: &Event, b: &Event) -> Result<Event> {
        match self.pair(a, b)? {
            Pair::Sets(x, y) => Ok(Event::Boolean(x.union(y))),
            Pair::Projectors(p, q) => Ok(Event::Projection(join_projectors(p, q))),
        }
    }

    /// Join of a list of events; the empty join is the bottom element.
    pub fn join_all<'a>(&self, events: impl IntoIterator<Item = &'a Event>) -> Result<Event> {
        let events: Vec<&Event> = events.into_iter().collect();
        for e in &events {
            self.require(e)?;
        }
        match self {
            Self::Boolean { .. } => events.iter().try_fold(self.bottom(), |acc, e| self.join(&acc, e)),
            Self::Projection { dim } => {
                if events.is_empty() {
                    return Ok(self.bottom());
                }
                // one orthogonalization over all ranges at once
                let stacked = ComplexMatrix::from_fn(*dim, dim * events.len(), |i, j| match events[j / dim] {
                    Event::Projection(p) => p.matrix().get(i, j % dim),
                    Event::Boolean(_) => unreachable!("checked by require"),
                });
                Ok(Event::Projection(Projection::from_valid(unit_scale_range_projector(&stacked))))
            }
        }
    }

    /// Orthocomplement.
    pub fn ortho(&self, a: &Event) -> Result<Event> {
        self.require(a)?;
        Ok(match a {
            Event::Boolean(x) => Event::Boolean(x.complement()),
            Event::Projection(p) => Event::Projection(p.complement()),
        })
    }

    /// Partial order: set inclusion, or range inclusion (`||QP - P|| < EVENT_TOL`).
    pub fn leq(&self, a: &Event, b: &Event) -> Result<bool> {
        match self.pair(a, b)? {
            Pair::Sets(x, y) => Ok(x.is_subset(y)),
            Pair::Projectors(p, q) => Ok(q.matrix().mul(p.matrix())?.distance(p.matrix())? < EVENT_TOL),
        }
    }

    pub fn equivalent(&self, a: &Event, b: &Event) -> Result<bool> {
        match self.pair(a, b)? {
            Pair::Sets(x, y) => Ok(x == y),
            Pair::Projectors(p, q) => Ok(p.matrix().distance(q.matrix())? < EVENT_TOL),
        }
    }

    /// Disjointness, or `||PQ||_F < ORTHOGONALITY_TOL` for projections.
    pub fn orthogonal(&self, a: &Event, b: &Event) -> Result<bool> {
        match self.pair(a, b)? {
            Pair::Sets(x, y) => Ok(x.is_disjoint(y)),
            Pair::Projectors(p, q) => Ok(p.matrix().mul(q.matrix())?.frobenius_norm() < ORTHOGONALITY_TOL),
        }
    }
}

fn join_projectors(p: &Projection, q: &Projection) -> Projection {
    let d = p.dim();
    let stacked = ComplexMatrix::from_fn(d, 2 * d, |i, j| {
        if j < d {
            p.matrix().get(i, j)
        } else {
            q.matrix().get(i, j - d)
        }
    });
    Projection::from_valid(unit_scale_range_projector(&stacked))
}
