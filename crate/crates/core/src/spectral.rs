//! Hermitian spectral decomposition and functions of Hermitian matrices.
//!
//! Eigenpairs come from the cyclic complex Jacobi method, which keeps
//! eigenvectors unitary to machine precision and resolves small eigenvalues
//! to an absolute accuracy of order `1e-18 ||m||_F`. Column spaces come from
//! one-sided (Hestenes) Jacobi orthogonalization, the same rotation applied to
//! the Gram matrix implicitly.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::ComplexMatrix;

/// Relative Frobenius tolerance under which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Singular values below this fraction of the largest one count as zero.
pub const RANK_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order and the unitary whose columns are the
/// matching eigenvectors.
///
/// Each eigenvector is phase-fixed so that its first non-negligible component
/// is real and positive. Eigenvectors of (numerically) equal eigenvalues are
/// ordered lexicographically, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianSpectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `V diag(values) V^dagger` for arbitrary real `values` on this basis.
    pub fn assemble(&self, values: &[f64]) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            values
                .iter()
                .enumerate()
                .map(|(k, &lambda)| v.get(i, k) * v.get(j, k).conj() * lambda)
                .sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.assemble(&self.eigenvalues)
    }

    /// Applies `f` to each eigenvalue. Non-finite results are a domain error.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
        let mut values = Vec::with_capacity(self.dim());
        for &lambda in &self.eigenvalues {
            let y = f(lambda);
            if !y.is_finite() {
                return Err(Error::Domain { eigenvalue: lambda });
            }
            values.push(y);
        }
        Ok(self.assemble(&values))
    }
}

/// Unitary Jacobi rotation acting on indices `(p, q)`.
///
/// As a matrix on that plane it is `[[c, s], [-s e, c e]]` with `e` a unit
/// phase, chosen so that `J^dagger A J` has a zero `(p, q)` entry.
#[derive(Clone, Copy)]
struct Rotation {
    pp: Complex64,
    pq: Complex64,
    qp: Complex64,
    qq: Complex64,
}

impl Rotation {
    /// Rotation annihilating the off-diagonal entry of the Hermitian block
    /// `[[app, apq], [conj(apq), aqq]]`. Requires `apq != 0`.
    fn annihilating(app: f64, apq: Complex64, aqq: f64) -> Self {
        let g = apq.norm();
        let phase = apq.conj() / g;
        let tau = (aqq - app) / (2.0 * g);
        let t = if tau >= 0.0 {
            1.0 / (tau + math::hypot(1.0, tau))
        } else {
            -1.0 / (-tau + math::hypot(1.0, tau))
        };
        let c = 1.0 / math::hypot(1.0, t);
        let s = t * c;
        Rotation {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: phase * -s,
            qq: phase * c,
        }
    }

    /// `x <- x J` restricted to the two columns `(xp, xq)`.
    #[inline]
    fn right(&self, xp: Complex64, xq: Complex64) -> (Complex64, Complex64) {
        (xp * self.pp + xq * self.qp, xp * self.pq + xq * self.qq)
    }

    /// `x <- J^dagger x` restricted to the two rows `(xp, xq)`.
    #[inline]
    fn left_adjoint(&self, xp: Complex64, xq: Complex64) -> (Complex64, Complex64) {
        (
            self.pp.conj() * xp + self.qp.conj() * xq,
            self.pq.conj() * xp + self.qq.conj() * xq,
        )
    }
}

/// Diagonalizes a Hermitian matrix in place, accumulating rotations into `v`.
fn jacobi_diagonalize(a: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let n = a.rows();
    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return;
    }
    let floor = 1e-18 * scale;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let g = apq.norm();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                if g <= floor || g <= f64::EPSILON * math::sqrt((app * aqq).abs()) {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(app, apq, aqq);
                for k in 0..n {
                    let (xp, xq) = rot.right(a.get(k, p), a.get(k, q));
                    a.set(k, p, xp);
                    a.set(k, q, xq);
                    let (vp, vq) = rot.right(v.get(k, p), v.get(k, q));
                    v.set(k, p, vp);
                    v.set(k, q, vq);
                }
                for k in 0..n {
                    let (xp, xq) = rot.left_adjoint(a.get(p, k), a.get(q, k));
                    a.set(p, k, xp);
                    a.set(q, k, xq);
                }
                let zero = Complex64::new(0.0, 0.0);
                a.set(p, q, zero);
                a.set(q, p, zero);
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
            }
        }
        if !rotated {
            break;
        }
    }
}

fn phase_fix(vector: &mut [Complex64]) {
    if let Some(lead) = vector.iter().copied().find(|z| z.norm() > 1e-12) {
        let phase = lead.conj() / lead.norm();
        for z in vector.iter_mut() {
            *z *= phase;
        }
        // The leading component is real by construction; drop round-off.
        if let Some(z) = vector.iter_mut().find(|z| z.norm() > 1e-12) {
            z.im = 0.0;
        }
    }
}

fn lex_descending(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

fn eigenvalues_tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Inputs within [`HERMITIAN_TOL`] of Hermitian are symmetrized first.
pub fn eigen_hermitian(m: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let n = m.require_square()?;
    let mut a = m.symmetrized(HERMITIAN_TOL)?;
    let mut v = ComplexMatrix::identity(n);
    jacobi_diagonalize(&mut a, &mut v);

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut vec = v.column_vector(k);
            phase_fix(&mut vec);
            (a.get(k, k).re, vec)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues_tied(pairs[end - 1].0, pairs[end].0) {
            end += 1;
        }
        pairs[start..end].sort_by(|x, y| lex_descending(&x.1, &y.1));
        start = end;
    }

    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| pairs[k].1[i]);
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `f(m) = V diag(f(lambda)) V^dagger` for Hermitian `m`.
///
/// Returns [`Error::Domain`] if `f` is non-finite at some eigenvalue.
pub fn hermitian_function(m: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    eigen_hermitian(m)?.map(f)
}

/// Columns of `m` after one-sided Jacobi orthogonalization, paired with their
/// norms (the singular values of `m`).
fn orthogonalized_columns(m: &ComplexMatrix) -> Vec<(Vec<Complex64>, f64)> {
    let mut cols: Vec<Vec<Complex64>> = (0..m.cols()).map(|j| m.column_vector(j)).collect();
    let norm_sq = |c: &[Complex64]| c.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return Vec::new();
    }
    let floor = 1e-36 * scale * scale;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols.len() {
            for j in (i + 1)..cols.len() {
                let alpha = norm_sq(&cols[i]);
                let beta = norm_sq(&cols[j]);
                let gamma: Complex64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= floor || g <= f64::EPSILON * math::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(alpha, gamma, beta);
                let (left, right) = cols.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (xp, xq) = rot.right(*x, *y);
                    *x = xp;
                    *y = xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    cols.into_iter()
        .map(|c| {
            let s = math::sqrt(norm_sq(&c));
            (c, s)
        })
        .collect()
}

fn basis_above(m: &ComplexMatrix, scale_floor: f64) -> Vec<Vec<Complex64>> {
    let cols = orthogonalized_columns(m);
    let sigma_max = cols.iter().map(|c| c.1).fold(scale_floor, f64::max);
    cols.into_iter()
        .filter(|(_, s)| *s > RANK_TOL * sigma_max)
        .map(|(c, s)| c.into_iter().map(|z| z / s).collect())
        .collect()
}

/// Orthonormal basis of the column space of `m`.
///
/// Columns are orthogonalized by one-sided Jacobi rotations; the resulting
/// column norms are the singular values. Directions whose singular value is
/// at most [`RANK_TOL`] times the largest are discarded.
pub fn column_space(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    basis_above(m, 0.0)
}

/// Like [`column_space`], but the reference singular value is at least 1.
///
/// Suited to matrices built from projectors, whose natural scale is 1: a
/// stack of numerically vanishing projectors has rank zero instead of the
/// rank of its round-off.
pub fn unit_scale_column_space(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    basis_above(m, 1.0)
}

fn projector_onto(n: usize, basis: &[Vec<Complex64>]) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| basis.iter().map(|u| u[i] * u[j].conj()).sum())
}

/// Orthogonal projector onto the column space of `m`.
pub fn range_projector(m: &ComplexMatrix) -> ComplexMatrix {
    projector_onto(m.rows(), &column_space(m))
}

/// Orthogonal projector onto [`unit_scale_column_space`].
pub fn unit_scale_range_projector(m: &ComplexMatrix) -> ComplexMatrix {
    projector_onto(m.rows(), &unit_scale_column_space(m))
}

/// Numerical rank of `m` under [`RANK_TOL`].
pub fn rank(m: &ComplexMatrix) -> usize {
    column_space(m).len()
}
