use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("entry count {len} does not match shape {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("matrix has a non-finite entry")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (relative deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("minimum eigenvalue {min_eigenvalue:e} is negative")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace {trace} is not 1")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not an effect (eigenvalues outside [0, 1])")]
    NotEffect,

    #[error("matrix is not an orthogonal projection (deviation {deviation:e})")]
    NotProjection { deviation: f64 },

    #[error("Kraus operators are not trace preserving (deviation {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error("measurement effects do not sum to identity (deviation {deviation:e})")]
    IncompleteMeasurement { deviation: f64 },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("weights must be nonnegative and sum to 1 (sum {sum})")]
    WeightNormalization { sum: f64 },

    #[error("function is undefined at eigenvalue {eigenvalue}")]
    Domain { eigenvalue: f64 },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("factor index {index} out of range for {factors} factors")]
    FactorIndex { index: usize, factors: usize },

    #[error("event does not belong to this lattice")]
    MixedLattice,

    #[error("events {first} and {second} of the family are not orthogonal")]
    NonOrthogonalFamily { first: usize, second: usize },

    #[error("no value assigned to this event")]
    UnassignedEvent,

    #[error("classification model has no classes")]
    EmptyModel,

    #[error("every class assigns zero likelihood to the observations")]
    AllZeroLikelihood,

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("outcome index {index} out of range for {outcomes} outcomes")]
    UnknownOutcome { index: usize, outcomes: usize },

    #[error("observable set has rank {rank}, need {required}")]
    RankDeficientBasis { rank: usize, required: usize },

    #[error("trace vanishes after clipping negative eigenvalues")]
    ZeroTrace,

    #[error("step times must be strictly increasing (step {index})")]
    NonIncreasingTimes { index: usize },

    #[error("unknown channel {0:?}")]
    UnknownChannel(String),

    #[error("invalid period instance: {0}")]
    InvalidPeriodInstance(String),
}
