use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{tensor_product, ComplexMatrix};
use crate::quantum::{born_probability, DensityOperator, Projection};
use crate::recognition::{ClassificationResult, Mode};

/// Class names in class order: `|0><0| ⊗ I` is constant, `|1><1| ⊗ I` balanced.
pub const DJ_CLASSES: [&str; 2] = ["constant", "balanced"];

/// The four maps `{0, 1} -> {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BooleanFunction {
    F1,
    F2,
    F3,
    F4,
}

impl BooleanFunction {
    pub const ALL: [BooleanFunction; 4] = [Self::F1, Self::F2, Self::F3, Self::F4];

    /// `(f(0), f(1))`.
    pub fn table(&self) -> (u8, u8) {
        match self {
            Self::F1 => (0, 1),
            Self::F2 => (1, 0),
            Self::F3 => (0, 0),
            Self::F4 => (1, 1),
        }
    }

    pub fn eval(&self, x: usize) -> usize {
        let (f0, f1) = self.table();
        usize::from(if x == 0 { f0 } else { f1 })
    }

    pub fn is_constant(&self) -> bool {
        let (f0, f1) = self.table();
        f0 == f1
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::F4 => "f4",
        }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.id() == s).ok_or_else(|| Error::InvalidParameter {
            name: "function",
            reason: format!("unknown function `{s}`; expected f1, f2, f3 or f4"),
        })
    }
}

fn hadamard() -> ComplexMatrix {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).expect("2x2")
}

/// `|x, y> -> |x, y ⊕ f(x)>` on basis index `2x + y`.
fn oracle(f: BooleanFunction) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |row, col| {
        let (x, y) = (col / 2, col % 2);
        let target = 2 * x + (y ^ f.eval(x));
        Complex64::new(if row == target { 1.0 } else { 0.0 }, 0.0)
    })
}

/// Output amplitudes of the circuit `(H ⊗ I) U_f (H ⊗ H) |0>|1>`, on basis
/// index `2x + y`.
pub fn dj_state_vector(f: BooleanFunction) -> Vec<Complex64> {
    let h = hadamard();
    let circuit = tensor_product(&h, &ComplexMatrix::identity(2))
        .mul_unchecked(&oracle(f))
        .mul_unchecked(&tensor_product(&h, &h));
    circuit.column_vector(1)
}

/// The circuit output as a density operator `|psi><psi|`.
pub fn dj_final_state(f: BooleanFunction) -> DensityOperator {
    DensityOperator::pure(&dj_state_vector(f)).expect("unitary circuit output is normalized")
}

/// Born probabilities of the two class projections `|0><0| ⊗ I` (constant)
/// and `|1><1| ⊗ I` (balanced); the larger one decides, ties to constant.
pub fn dj_classify(state: &DensityOperator) -> Result<ClassificationResult> {
    if state.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: state.dim(),
        });
    }
    let identity = ComplexMatrix::identity(2);
    let posteriors = (0..2)
        .map(|k| {
            let p = Projection::new(tensor_product(&DensityOperator::basis(2, k).into_matrix(), &identity))?;
            born_probability(state, &p)
        })
        .collect::<Result<Vec<f64>>>()?;
    let decided = usize::from(posteriors[1] > posteriors[0]);
    Ok(ClassificationResult {
        scores: posteriors.clone(),
        posteriors,
        decided,
        mode: Mode::Soft,
    })
}
