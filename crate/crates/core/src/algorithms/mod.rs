//! Deutsch-Jozsa and period finding, each solved as a recognition problem
//! against class projections.

mod dj;
mod period;

pub use dj::{dj_classify, dj_final_state, dj_state_vector, BooleanFunction, DJ_CLASSES};
pub use period::{
    coprime_fraction, period_classify, period_distribution, period_state, qft_matrix, recover_period, PeriodInstance,
    PeriodOutcome, PeriodReport,
};
