use alloc::vec;
use alloc::vec::Vec;

/// Subset of the atoms `0..atoms` of a finite Boolean algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet {
    atoms: usize,
    words: Vec<u64>,
}

impl AtomSet {
    pub fn empty(atoms: usize) -> Self {
        Self {
            atoms,
            words: vec![0; atoms.div_ceil(64)],
        }
    }

    pub fn full(atoms: usize) -> Self {
        Self::empty(atoms).complement()
    }

    /// Indices outside `0..atoms` are ignored.
    pub fn from_indices(atoms: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(atoms);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn insert(&mut self, index: usize) {
        if index < self.atoms {
            self.words[index / 64] |= 1 << (index % 64);
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.atoms && self.words[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.atoms).filter(|&i| self.contains(i))
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        Self {
            atoms: self.atoms,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn complement(&self) -> Self {
        let mut out = Self {
            atoms: self.atoms,
            words: self.words.iter().map(|w| !w).collect(),
        };
        let tail = self.atoms % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}
