//! Learning processes: a global state driven through a timed sequence of
//! channels, with the von Neumann entropy recorded after every step.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::quantum::{apply_channel, von_neumann_entropy, DensityOperator, QuantumChannel};

/// Final entropy must undercut the initial one by more than this.
pub const SUCCESS_SLACK: f64 = 1e-12;

/// A channel by name and parameters, instantiated once the dimension it acts
/// on is known.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Identity,
    Unitary(ComplexMatrix),
    Depolarizing { p: f64 },
    BitFlip { p: f64 },
    PhaseFlip { p: f64 },
    AmplitudeDamping { gamma: f64 },
    /// Non-selective measurement in the columns of `basis`; the computational
    /// basis when `None`.
    MeasurementDephasing { basis: Option<ComplexMatrix> },
    Kraus(Vec<ComplexMatrix>),
    /// `channel` on factor `index` of a product with factor dimensions `dims`.
    OnFactor {
        dims: Vec<usize>,
        index: usize,
        channel: Box<ChannelSpec>,
    },
}

impl ChannelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelSpec::Identity => "identity",
            ChannelSpec::Unitary(_) => "unitary",
            ChannelSpec::Depolarizing { .. } => "depolarizing",
            ChannelSpec::BitFlip { .. } => "bit-flip",
            ChannelSpec::PhaseFlip { .. } => "phase-flip",
            ChannelSpec::AmplitudeDamping { .. } => "amplitude-damping",
            ChannelSpec::MeasurementDephasing { .. } => "measurement-dephasing",
            ChannelSpec::Kraus(_) => "kraus",
            ChannelSpec::OnFactor { channel, .. } => channel.name(),
        }
    }

    /// Builds the channel acting on states of dimension `dim`.
    pub fn instantiate(&self, dim: usize) -> Result<QuantumChannel> {
        let channel = match self {
            ChannelSpec::Identity => QuantumChannel::identity(dim),
            ChannelSpec::Unitary(u) => QuantumChannel::unitary(u.clone())?,
            ChannelSpec::Depolarizing { p } => QuantumChannel::depolarizing(dim, *p)?,
            ChannelSpec::BitFlip { p } => QuantumChannel::bit_flip(*p)?,
            ChannelSpec::PhaseFlip { p } => QuantumChannel::phase_flip(*p)?,
            ChannelSpec::AmplitudeDamping { gamma } => QuantumChannel::amplitude_damping(*gamma)?,
            ChannelSpec::MeasurementDephasing { basis: Some(b) } => QuantumChannel::dephasing(b)?,
            ChannelSpec::MeasurementDephasing { basis: None } => QuantumChannel::dephasing(&ComplexMatrix::identity(dim))?,
            ChannelSpec::Kraus(k) => QuantumChannel::new(k.clone())?,
            ChannelSpec::OnFactor { dims, index, channel } => {
                let total: usize = dims.iter().product();
                if total != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: total,
                    });
                }
                let factor = *dims.get(*index).ok_or(Error::FactorIndex {
                    index: *index,
                    factors: dims.len(),
                })?;
                return channel.instantiate(factor)?.on_factor(dims, *index);
            }
        };
        if channel.input_dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: channel.input_dim(),
            });
        }
        Ok(channel)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LearningStep {
    pub time: f64,
    pub channel: ChannelSpec,
}

/// An initial global state and channels applied at strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningScenario {
    initial: DensityOperator,
    steps: Vec<LearningStep>,
    channels: Vec<QuantumChannel>,
}

impl LearningScenario {
    /// Validates the time order and instantiates every channel, each at the
    /// output dimension of the one before.
    pub fn new(initial: DensityOperator, steps: Vec<LearningStep>) -> Result<Self> {
        let mut channels = Vec::with_capacity(steps.len());
        let mut dim = initial.dim();
        for (index, step) in steps.iter().enumerate() {
            if !step.time.is_finite() {
                return Err(Error::NonFinite);
            }
            if index > 0 && !(step.time > steps[index - 1].time) {
                return Err(Error::NonIncreasingTimes { index });
            }
            let channel = step.channel.instantiate(dim)?;
            dim = channel.output_dim();
            channels.push(channel);
        }
        Ok(Self {
            initial,
            steps,
            channels,
        })
    }

    pub fn initial(&self) -> &DensityOperator {
        &self.initial
    }

    pub fn steps(&self) -> &[LearningStep] {
        &self.steps
    }

    pub fn channels(&self) -> &[QuantumChannel] {
        &self.channels
    }
}

/// States and entropies (bits) of a learning run; `states[0]` is the initial
/// state and `states[k]` follows step `k - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningTrace {
    pub times: Vec<f64>,
    pub states: Vec<DensityOperator>,
    pub entropies: Vec<f64>,
    pub success: bool,
}

/// Applies the channels in order. The run succeeds when the final entropy is
/// below the initial entropy by more than [`SUCCESS_SLACK`].
pub fn run_learning(scenario: &LearningScenario) -> Result<LearningTrace> {
    let mut states = Vec::with_capacity(scenario.steps.len() + 1);
    states.push(scenario.initial.clone());
    for channel in &scenario.channels {
        let next = apply_channel(channel, states.last().expect("nonempty"))?;
        states.push(next);
    }
    let entropies: Vec<f64> = states.iter().map(von_neumann_entropy).collect();
    let success = entropies[entropies.len() - 1] < entropies[0] - SUCCESS_SLACK;
    Ok(LearningTrace {
        times: scenario.steps.iter().map(|s| s.time).collect(),
        states,
        entropies,
        success,
    })
}
