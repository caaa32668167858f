use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |H - H^dag| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    Singular { pivot: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("integrator step underflow at t = {t}: step {step:e} below {min_step:e}")]
    StepUnderflow { t: f64, step: f64, min_step: f64 },

    #[error("integrator exceeded {0} steps")]
    MaxStepsExceeded(usize),

    #[error("invalid integrator setting: {0}")]
    InvalidIntegrator(String),

    #[error("division by zero: detuning {0} is zero")]
    DivisionByZero(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("steady state is not unique (Liouvillian rank {rank}, expected {expected})")]
    DegenerateSteadyState { rank: usize, expected: usize },

    #[error("density matrix lost physicality: {0}")]
    PhysicalityLost(String),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("detuning grid is not uniform and increasing")]
    NonUniformGrid,
}
