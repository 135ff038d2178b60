//! Dense complex matrices in row-major order.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense `rows x cols` complex matrix stored row-major.
///
/// Every entry is finite; constructors reject NaN and infinities.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::Empty("diagonal"));
        }
        if diag.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    /// Column vector with the given amplitudes.
    pub fn column(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(amplitudes.len(), 1, amplitudes.to_vec())
    }

    /// The computational basis vector `|index>` of dimension `dim`.
    pub fn basis_vector(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        Self::from_fn(dim, 1, |i, _| if i == index { ONE } else { ZERO })
    }

    /// The outer product `|v><v|` of a vector with itself.
    pub fn ket_bra(amplitudes: &[Complex64]) -> Result<Self> {
        let v = Self::column(amplitudes)?;
        Ok(v.mul_unchecked(&v.adjoint()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    /// Column `col` as a vector of amplitudes.
    pub fn column_vector(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let dst = &mut out[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let src = &other.entries[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Self {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub(crate) fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Sum of diagonal entries. Rectangular matrices sum the leading diagonal.
    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    /// `(m + m^dagger) / 2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        self.require_square()?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * 0.5
        }))
    }

    /// Relative Frobenius distance between `self` and its Hermitian part.
    ///
    /// Falls back to the absolute distance when the Hermitian part vanishes.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let sym = self.hermitian_part()?;
        let diff = self.zip_with(&sym, |a, b| a - b).frobenius_norm();
        let scale = sym.frobenius_norm();
        Ok(if scale > 0.0 { diff / scale } else { diff })
    }

    /// Returns the Hermitian part if the matrix is Hermitian within `tol`
    /// relative Frobenius error.
    pub fn symmetrized(&self, tol: f64) -> Result<Self> {
        let deviation = self.hermitian_deviation()?;
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        self.hermitian_part()
    }

    /// Frobenius distance `||self - other||_F`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.frobenius_norm())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.cols + col]
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    ComplexMatrix::from_fn(rows, cols, |i, j| {
        a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)
    })
}

/// Kronecker product of a nonempty sequence of factors, left to right.
pub fn tensor_product_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> Option<ComplexMatrix> {
    factors.into_iter().fold(None, |acc, m| match acc {
        None => Some(m.clone()),
        Some(prod) => Some(tensor_product(&prod, m)),
    })
}

/// Traces out every tensor factor not listed in `keep`.
///
/// `dims` gives the factor dimensions of `m` (first factor most significant).
/// Kept factors appear in ascending index order. An empty `keep` yields the
/// 1x1 matrix holding the full trace.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let dim = m.require_square()?;
    if dims.is_empty() {
        return Err(Error::Empty("factor dimension list"));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidParameter {
            name: "dims",
            reason: "factor dimensions must be positive".into(),
        });
    }
    let total: usize = dims.iter().product();
    if total != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: total,
        });
    }
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() {
            return Err(Error::FactorIndex {
                index: k,
                factors: dims.len(),
            });
        }
        kept[k] = true;
    }

    // Splits a global index into (kept index, traced index).
    let split = |mut index: usize| -> (usize, usize) {
        let (mut kept_idx, mut kept_stride) = (0, 1);
        let (mut traced_idx, mut traced_stride) = (0, 1);
        for (f, &d) in dims.iter().enumerate().rev() {
            let digit = index % d;
            index /= d;
            if kept[f] {
                kept_idx += digit * kept_stride;
                kept_stride *= d;
            } else {
                traced_idx += digit * traced_stride;
                traced_stride *= d;
            }
        }
        (kept_idx, traced_idx)
    };

    let out_dim: usize = dims
        .iter()
        .zip(&kept)
        .filter(|(_, &k)| k)
        .map(|(&d, _)| d)
        .product();
    let parts: Vec<(usize, usize)> = (0..dim).map(split).collect();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for (i, &(ki, ti)) in parts.iter().enumerate() {
        for (j, &(kj, tj)) in parts.iter().enumerate() {
            if ti == tj {
                let idx = ki * out_dim + kj;
                out.entries[idx] += m.get(i, j);
            }
        }
    }
    Ok(out)
}

/// Hilbert-Schmidt inner product `tr(a^dagger b)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    a.require_same_shape(b)?;
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_nan() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![ONE; 3]),
            Err(Error::Shape { .. })
        ));
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor_product(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let b = ComplexMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(tensor_product(&a, &b), expected);
    }

    #[test]
    fn kron_basis_projectors() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let p = tensor_product(&p0, &p0);
        assert_eq!(p.get(0, 0), ONE);
        assert_eq!(p.entries().iter().filter(|z| **z != ZERO).count(), 1);
    }

    #[test]
    fn kron_rectangular_shape() {
        let v = ComplexMatrix::basis_vector(2, 1);
        let m = ComplexMatrix::identity(3);
        let k = tensor_product(&v, &m);
        assert_eq!((k.rows(), k.cols()), (6, 3));
        assert_eq!(k.get(3, 0), ONE);
    }

    #[test]
    fn partial_trace_of_diagonal() {
        let m = ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let r = partial_trace(&m, &[2, 2], &[1]).unwrap();
        assert!((r.get(0, 0).re - 0.4).abs() < 1e-15);
        assert!((r.get(1, 1).re - 0.6).abs() < 1e-15);
        assert_eq!(r.get(0, 1), ZERO);

        let r0 = partial_trace(&m, &[2, 2], &[0]).unwrap();
        assert!((r0.get(0, 0).re - 0.3).abs() < 1e-15);
        assert!((r0.get(1, 1).re - 0.7).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let bell = ComplexMatrix::ket_bra(&[c(h, 0.0), ZERO, ZERO, c(h, 0.0)]).unwrap();
        for keep in [0, 1] {
            let r = partial_trace(&bell, &[2, 2], &[keep]).unwrap();
            let half = ComplexMatrix::identity(2).scale_real(0.5);
            assert!(r.distance(&half).unwrap() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_keeps_middle_factor() {
        let a = ComplexMatrix::from_diagonal(&[0.5, 0.5]).unwrap();
        let b = ComplexMatrix::from_diagonal(&[0.2, 0.3, 0.5]).unwrap();
        let cc = ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let abc = tensor_product(&tensor_product(&a, &b), &cc);
        let r = partial_trace(&abc, &[2, 3, 2], &[1]).unwrap();
        assert!(r.distance(&b).unwrap() < 1e-15);
        let r02 = partial_trace(&abc, &[2, 3, 2], &[2, 0]).unwrap();
        assert!(r02.distance(&tensor_product(&a, &cc)).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_trace(&m, &[2, 3], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            partial_trace(&m, &[2, 2], &[2]),
            Err(Error::FactorIndex { .. })
        ));
        let r = partial_trace(&m, &[2, 2], &[]).unwrap();
        assert_eq!(r.get(0, 0), c(4.0, 0.0));
    }

    #[test]
    fn inner_products() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(frobenius_inner(&i2, &i2).unwrap(), c(2.0, 0.0));
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert_eq!(frobenius_inner(&p0, &p1).unwrap(), ZERO);
        assert_eq!(frobenius_inner(&pauli_x(), &pauli_z()).unwrap(), ZERO);
        assert!(frobenius_inner(&i2, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn hermitian_checks() {
        let y = ComplexMatrix::new(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap();
        assert_eq!(y.hermitian_deviation().unwrap(), 0.0);
        let skew = ComplexMatrix::new(2, 2, vec![ZERO, ONE, -ONE, ZERO]).unwrap();
        assert!(matches!(skew.symmetrized(1e-10), Err(Error::NotHermitian { .. })));
    }
}
