//! Quantum states, effects, channels, metrics and measurement sampling.

mod channel;
mod measurement;
mod metrics;
mod state;
mod thermal;

pub use channel::{apply_channel, QuantumChannel, CHANNEL_TOL};
pub use measurement::{sample_measurement, OutcomeCounts, PovmMeasurement};
pub(crate) use measurement::sample_indices;
pub use metrics::{fidelity, hs_distance, purity, trace_distance, von_neumann_entropy};
pub use state::{born_probability, mixture, DensityOperator, Effect, Operator, Projection, STATE_TOL};
pub use thermal::gibbs_state;
