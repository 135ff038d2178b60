use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::ComplexMatrix;
use crate::quantum::{sample_indices, OutcomeCounts};

/// `F_ab = exp(2 pi i ab / N) / sqrt(N)`.
pub fn qft_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Empty("register"));
    }
    let norm = 1.0 / math::sqrt(n as f64);
    let step = 2.0 * core::f64::consts::PI / n as f64;
    // reduce ab mod N before scaling so large exponents keep full accuracy
    Ok(ComplexMatrix::from_fn(n, n, |a, b| math::cis(step * ((a * b) % n) as f64) * norm))
}

/// Denominator of `c / N` in lowest terms; `c = 0` gives 1.
pub fn recover_period(c: usize, n: usize) -> usize {
    n / c.gcd(&n)
}

/// `phi(r) / r`: the fraction of `j` in `0..r` coprime to `r`.
pub fn coprime_fraction(r: usize) -> f64 {
    let phi = (0..r).filter(|j| j.gcd(&r) == 1).count();
    phi as f64 / r as f64
}

/// A function on `Z_N` with period `r`, and the offset `x0 < r` whose value
/// the second-register measurement is taken to return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodInstance {
    n: usize,
    r: usize,
    x0: usize,
    values: Vec<u64>,
}

fn invalid(reason: alloc::string::String) -> Error {
    Error::InvalidPeriodInstance(reason)
}

impl PeriodInstance {
    /// Instance for `f(x) = x mod r`.
    pub fn new(n: usize, r: usize, x0: usize) -> Result<Self> {
        if n == 0 || r == 0 || !n.is_multiple_of(r) {
            return Err(invalid(format!("period {r} does not divide N = {n}")));
        }
        if x0 >= r {
            return Err(invalid(format!("x0 = {x0} is not below the period {r}")));
        }
        Ok(Self {
            n,
            r,
            x0,
            values: (0..n).map(|x| (x % r) as u64).collect(),
        })
    }

    /// Instance for an explicit table `f(0), ..., f(N-1)`. The period is the
    /// least `r` dividing `N` with `f(x + r) = f(x)`; `f` must not repeat a
    /// value within one period.
    pub fn from_table(values: Vec<u64>, x0: usize) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(invalid("empty table".into()));
        }
        let r = (1..=n)
            .find(|&r| n.is_multiple_of(r) && (0..n).all(|x| values[x] == values[(x + r) % n]))
            .expect("r = N always qualifies");
        let mut seen = Vec::with_capacity(r);
        for &v in &values[..r] {
            if seen.contains(&v) {
                return Err(invalid(format!("value {v} repeats within one period")));
            }
            seen.push(v);
        }
        if x0 >= r {
            return Err(invalid(format!("x0 = {x0} is not below the period {r}")));
        }
        Ok(Self { n, r, x0, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    /// `K = N / r`.
    pub fn k(&self) -> usize {
        self.n / self.r
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// First-register state after preparing `sum_x |x>|f(x)> / sqrt(N)` and
/// measuring the second register with outcome `f(x0)`.
pub fn period_state(inst: &PeriodInstance) -> Vec<Complex64> {
    let n = inst.n;
    // second register indexed by the distinct values of f
    let mut distinct: Vec<u64> = inst.values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let m = distinct.len();
    let slot = |v: u64| distinct.binary_search(&v).expect("value of f");
    let amp = Complex64::new(1.0 / math::sqrt(n as f64), 0.0);
    let mut joint = alloc::vec![Complex64::new(0.0, 0.0); n * m];
    for (x, &v) in inst.values.iter().enumerate() {
        joint[x * m + slot(v)] = amp;
    }
    let y0 = slot(inst.values[inst.x0]);
    let collapsed: Vec<Complex64> = (0..n).map(|x| joint[x * m + y0]).collect();
    let norm = math::sqrt(collapsed.iter().map(|z| z.norm_sqr()).sum());
    collapsed.into_iter().map(|z| z / norm).collect()
}

/// Born distribution of the computational-basis measurement after the QFT.
pub fn period_distribution(inst: &PeriodInstance) -> Vec<f64> {
    let f = qft_matrix(inst.n).expect("N >= 1");
    let psi = period_state(inst);
    (0..inst.n)
        .map(|c| {
            let amp: Complex64 = (0..inst.n).map(|x| f.get(c, x) * psi[x]).sum();
            amp.norm_sqr()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodOutcome {
    pub c: usize,
    pub candidate_q: usize,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    /// Exact outcome probabilities, indexed by `c`.
    pub distribution: Vec<f64>,
    /// Born probability of each class `|jN/r><jN/r|`, `j = 0..r`.
    pub class_probabilities: Vec<f64>,
    pub outcomes: Vec<PeriodOutcome>,
    pub counts: OutcomeCounts,
    pub success_rate: f64,
    /// `phi(r) / r`.
    pub theoretical: f64,
}

/// Runs `trials` measurements of the post-QFT state, trial `t` with seed
/// `seed + t`, and reduces each outcome with [`recover_period`].
pub fn period_classify(inst: &PeriodInstance, trials: usize, seed: u64) -> Result<PeriodReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            reason: "at least one trial is required".into(),
        });
    }
    let distribution = period_distribution(inst);
    let spacing = inst.n / inst.r;
    let class_probabilities = (0..inst.r).map(|j| distribution[j * spacing]).collect();
    let mut outcomes = Vec::with_capacity(trials);
    let mut counts = BTreeMap::new();
    for t in 0..trials {
        let c = sample_indices(&distribution, 1, seed.wrapping_add(t as u64))[0];
        let candidate_q = recover_period(c, inst.n);
        outcomes.push(PeriodOutcome {
            c,
            candidate_q,
            success: candidate_q == inst.r,
        });
        *counts.entry(c).or_insert(0) += 1;
    }
    let successes = outcomes.iter().filter(|o| o.success).count();
    Ok(PeriodReport {
        distribution,
        class_probabilities,
        outcomes,
        counts,
        success_rate: successes as f64 / trials as f64,
        theoretical: coprime_fraction(inst.r),
    })
}
