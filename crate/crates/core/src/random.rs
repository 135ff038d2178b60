//! Seeded samplers for states, unitaries and projectors.
//!
//! Every sampler takes the generator explicitly. [`rng`] builds the
//! counter-based ChaCha generator used throughout the crate; derive
//! per-task generators with `rng(seed + task_index)`.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::math;
use crate::matrix::ComplexMatrix;

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex Gaussian (Ginibre) matrix with standard normal real and imaginary parts.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-like unitary: Gram-Schmidt orthonormalization of a Ginibre matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ginibre(dim, dim, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Modified Gram-Schmidt. `None` if the columns are numerically dependent.
fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols()).map(|j| m.column_vector(j)).collect();
    for j in 0..cols.len() {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let proj: Complex64 = done[k].iter().zip(rest[0].iter()).map(|(u, x)| u.conj() * x).sum();
            for (x, u) in rest[0].iter_mut().zip(done[k].iter()) {
                *x -= proj * u;
            }
        }
        let norm = math::sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum());
        if norm < 1e-8 {
            return None;
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| cols[j][i]))
}

/// Projector onto the span of the given columns of `u`.
pub fn projector_from_columns(u: &ComplexMatrix, columns: &[usize]) -> ComplexMatrix {
    let n = u.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        columns.iter().map(|&k| u.get(i, k) * u.get(j, k).conj()).sum()
    })
}

/// Random projector of rank `k` drawn uniformly from `0..=dim`.
pub fn projector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let k = rng.random_range(0..=dim);
    projector_of_rank(dim, k, rng)
}

pub fn projector_of_rank<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let u = unitary(dim, rng);
    let cols: Vec<usize> = (0..rank.min(dim)).collect();
    projector_from_columns(&u, &cols)
}

/// Random pairwise orthogonal family of projectors.
///
/// The columns of a random unitary are split among up to `dim` groups; some
/// columns are left out so the family need not sum to the identity. Groups
/// may be empty, which yields the zero projector.
pub fn orthogonal_family<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    let u = unitary(dim, rng);
    let groups = rng.random_range(1..=dim);
    let mut members: Vec<Vec<usize>> = (0..groups).map(|_| Vec::new()).collect();
    for col in 0..dim {
        // index `groups` means the column is left out
        let g = rng.random_range(0..=groups);
        if g < groups {
            members[g].push(col);
        }
    }
    members.iter().map(|cols| projector_from_columns(&u, cols)).collect()
}

/// Random density matrix `G G^dagger / tr(G G^dagger)` (Hilbert-Schmidt measure).
pub fn density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let rho = g.mul_unchecked(&g.adjoint());
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

/// Random pure state vector, normalized.
pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let g = ginibre(dim, 1, rng);
    let norm = g.frobenius_norm();
    g.into_entries().into_iter().map(|z| z / norm).collect()
}

/// Random Hermitian matrix `(G + G^dagger) / 2`.
pub fn hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    g.hermitian_part().expect("square by construction")
}

/// Random point of the probability simplex (flat Dirichlet).
pub fn probability_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..len)
        .map(|_| {
            let u: f64 = rng.random();
            -math::ln(1.0 - u)
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    if sum > 0.0 {
        raw.into_iter().map(|x| x / sum).collect()
    } else {
        let mut v = alloc::vec![0.0; len];
        v[0] = 1.0;
        v
    }
}
