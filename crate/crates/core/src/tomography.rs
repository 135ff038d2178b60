//! State tomography by linear inversion of observable means.
//!
//! Observable means are fitted in the least-squares sense through the
//! pseudo-inverse of the Gram matrix `G_kl = tr(O_k O_l)`, with the identity
//! (mean 1) appended so trace-normalization is part of the fit. The raw
//! estimate is repaired into a density operator by clipping negative
//! eigenvalues and renormalizing.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{frobenius_inner, tensor_product, ComplexMatrix};
use crate::quantum::{sample_indices, DensityOperator};
use crate::spectral::{eigen_hermitian, HERMITIAN_TOL};

/// Relative Frobenius tolerance on Hermiticity accepted by [`project_to_density`].
pub const RAW_HERMITIAN_TOL: f64 = 1e-6;

/// Gram eigenvalues below this fraction of the largest are treated as zero.
const GRAM_RANK_TOL: f64 = 1e-10;

/// Labelled Hermitian observables on `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSet {
    dim: usize,
    labels: Vec<String>,
    observables: Vec<ComplexMatrix>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl ObservableSet {
    pub fn new(labels: Vec<String>, observables: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = observables.first().ok_or(Error::Empty("observable set"))?.rows();
        if labels.len() != observables.len() {
            return Err(Error::DimensionMismatch {
                expected: observables.len(),
                found: labels.len(),
            });
        }
        for o in &observables {
            if o.require_square()? != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: o.rows(),
                });
            }
            let deviation = o.hermitian_deviation()?;
            if deviation > HERMITIAN_TOL {
                return Err(Error::NotHermitian { deviation });
            }
        }
        Ok(Self {
            dim,
            labels,
            observables,
        })
    }

    /// All non-identity Pauli products on `qubits` qubits, labelled like
    /// `"XZ"` with the first qubit leftmost.
    pub fn pauli(qubits: usize) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::Empty("qubit register"));
        }
        let single = [
            ('I', ComplexMatrix::identity(2)),
            ('X', ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?),
            ('Y', ComplexMatrix::new(2, 2, alloc::vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])?),
            ('Z', ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])?),
        ];
        let mut products = alloc::vec![(String::new(), ComplexMatrix::identity(1))];
        for _ in 0..qubits {
            products = products
                .iter()
                .flat_map(|(label, m)| {
                    single.iter().map(move |(ch, p)| {
                        let mut l = label.clone();
                        l.push(*ch);
                        (l, tensor_product(m, p))
                    })
                })
                .collect();
        }
        let (labels, observables) = products.into_iter().filter(|(l, _)| l.chars().any(|ch| ch != 'I')).unzip();
        Self::new(labels, observables)
    }

    /// The `d^2 - 1` generalized Gell-Mann matrices: symmetric `S{j}_{k}`,
    /// antisymmetric `A{j}_{k}` for `j < k`, and diagonal `D{l}`.
    pub fn gell_mann(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Empty("Hilbert space"));
        }
        let mut labels = Vec::new();
        let mut observables = Vec::new();
        let zero = ComplexMatrix::zeros(dim, dim);
        for j in 0..dim {
            for k in (j + 1)..dim {
                let mut s = zero.clone();
                s.set(j, k, c(1.0, 0.0));
                s.set(k, j, c(1.0, 0.0));
                labels.push(format!("S{j}_{k}"));
                observables.push(s);
                let mut a = zero.clone();
                a.set(j, k, c(0.0, -1.0));
                a.set(k, j, c(0.0, 1.0));
                labels.push(format!("A{j}_{k}"));
                observables.push(a);
            }
        }
        for l in 1..dim {
            let scale = math::sqrt(2.0 / (l * (l + 1)) as f64);
            let diag: Vec<f64> = (0..dim)
                .map(|i| match i.cmp(&l) {
                    core::cmp::Ordering::Less => scale,
                    core::cmp::Ordering::Equal => -(l as f64) * scale,
                    core::cmp::Ordering::Greater => 0.0,
                })
                .collect();
            labels.push(format!("D{l}"));
            observables.push(ComplexMatrix::from_diagonal(&diag)?);
        }
        if observables.is_empty() {
            // C^1: the identity alone is complete
            return Ok(Self {
                dim,
                labels,
                observables,
            });
        }
        Self::new(labels, observables)
    }

    /// Pauli products when `dim` is a power of two (at least 2), Gell-Mann
    /// matrices otherwise.
    pub fn standard(dim: usize) -> Result<Self> {
        if dim >= 2 && dim.is_power_of_two() {
            Self::pauli(dim.trailing_zeros() as usize)
        } else {
            Self::gell_mann(dim)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ComplexMatrix)> {
        self.labels.iter().map(String::as_str).zip(&self.observables)
    }

    /// Exact means `tr(rho O)` keyed by label.
    pub fn expectations(&self, rho: &DensityOperator) -> Result<BTreeMap<String, f64>> {
        self.check_dim(rho.dim())?;
        self.iter()
            .map(|(l, o)| Ok((l.to_string(), frobenius_inner(rho.matrix(), o)?.re)))
            .collect()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TomographyResult {
    pub estimate: DensityOperator,
    /// Linear-inversion output before the density repair.
    pub raw: ComplexMatrix,
    pub shots_used: u64,
}

/// Least-squares state reconstruction from observable means. `shots_used`
/// is left at 0; see [`run_tomography`].
pub fn tomography_invert(expectations: &BTreeMap<String, f64>, basis: &ObservableSet) -> Result<TomographyResult> {
    let d = basis.dim();
    let mut ops: Vec<&ComplexMatrix> = basis.observables().iter().collect();
    let identity = ComplexMatrix::identity(d);
    ops.push(&identity);
    let mut means = Vec::with_capacity(ops.len());
    for label in basis.labels() {
        let value = *expectations.get(label).ok_or_else(|| Error::InvalidParameter {
            name: "expectations",
            reason: format!("missing mean for `{label}`"),
        })?;
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        means.push(value);
    }
    means.push(1.0);

    let n = ops.len();
    let mut gram = Vec::with_capacity(n * n);
    for a in &ops {
        for b in &ops {
            gram.push(c(frobenius_inner(a, b)?.re, 0.0));
        }
    }
    let spectrum = eigen_hermitian(&ComplexMatrix::new(n, n, gram)?)?;
    let cutoff = GRAM_RANK_TOL * spectrum.max_eigenvalue();
    let rank = spectrum.eigenvalues.iter().filter(|&&l| l > cutoff).count();
    if rank < d * d {
        return Err(Error::RankDeficientBasis {
            rank,
            required: d * d,
        });
    }
    let inverse: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .map(|&l| if l > cutoff { 1.0 / l } else { 0.0 })
        .collect();
    let pinv = spectrum.assemble(&inverse);
    let coefficients: Vec<f64> = (0..n)
        .map(|k| (0..n).map(|l| pinv.get(k, l).re * means[l]).sum())
        .collect();
    let mut raw = ComplexMatrix::zeros(d, d);
    for (o, &w) in ops.iter().zip(&coefficients) {
        raw = raw.zip_with(o, |x, y| x + y * w);
    }
    Ok(TomographyResult {
        estimate: project_to_density(&raw)?,
        raw,
        shots_used: 0,
    })
}

/// Nearest valid state by eigenvalue clipping: negative eigenvalues are set
/// to 0 and the rest renormalized to unit trace. Valid inputs come back
/// unchanged.
pub fn project_to_density(raw: &ComplexMatrix) -> Result<DensityOperator> {
    let sym = raw.symmetrized(RAW_HERMITIAN_TOL)?;
    if let Ok(rho) = DensityOperator::new(sym.clone()) {
        return Ok(rho);
    }
    let spectrum = eigen_hermitian(&sym)?;
    let clipped: Vec<f64> = spectrum.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroTrace);
    }
    let normalized: Vec<f64> = clipped.iter().map(|l| l / total).collect();
    DensityOperator::new(spectrum.assemble(&normalized))
}

/// Per-observable shot allocation: an even split of `shots`, remainder to
/// the first observables.
pub fn split_shots(shots: u64, observables: usize) -> Vec<u64> {
    let n = observables as u64;
    (0..n).map(|k| shots / n + u64::from(k < shots % n)).collect()
}

/// Monte Carlo means: each observable is measured in its eigenbasis with its
/// share of `shots` (see [`split_shots`]); observable `k` uses seed `seed + k`.
pub fn estimate_expectations(
    rho: &DensityOperator,
    basis: &ObservableSet,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, f64>> {
    basis.check_dim(rho.dim())?;
    if shots < basis.len() as u64 {
        return Err(Error::InvalidParameter {
            name: "shots",
            reason: format!("{shots} shots cannot cover {} observables", basis.len()),
        });
    }
    let mut means = BTreeMap::new();
    for (k, ((label, o), share)) in basis.iter().zip(split_shots(shots, basis.len())).enumerate() {
        let spectrum = eigen_hermitian(o)?;
        let v = &spectrum.eigenvectors;
        let probabilities: Vec<f64> = (0..basis.dim())
            .map(|j| {
                let col = v.column_vector(j);
                let amp: Complex64 = (0..basis.dim())
                    .flat_map(|r| (0..basis.dim()).map(move |s| (r, s)))
                    .map(|(r, s)| col[r].conj() * rho.matrix().get(r, s) * col[s])
                    .sum();
                amp.re.max(0.0)
            })
            .collect();
        let total: f64 = sample_indices(&probabilities, share, seed.wrapping_add(k as u64))
            .into_iter()
            .map(|j| spectrum.eigenvalues[j])
            .sum();
        means.insert(label.to_string(), total / share as f64);
    }
    Ok(means)
}

/// Samples means with [`estimate_expectations`] and inverts them.
pub fn run_tomography(rho: &DensityOperator, basis: &ObservableSet, shots: u64, seed: u64) -> Result<TomographyResult> {
    let means = estimate_expectations(rho, basis, shots, seed)?;
    let mut result = tomography_invert(&means, basis)?;
    result.shots_used = shots;
    Ok(result)
}
