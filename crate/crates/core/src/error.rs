use thiserror::Error;

/// Errors raised by the chain model, the elliptic routines and the simulator.
///
/// Values are carried as `f64` regardless of the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "degenerate geometry: spacing d = {spacing} must satisfy 0 < d < rod length {rod_length}"
    )]
    DegenerateGeometry { spacing: f64, rod_length: f64 },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("rod starting at rest on the vertical is in unstable equilibrium and never falls (omega = {omega})")]
    EquilibriumStart { omega: f64 },

    #[error("modulus k = {k} outside the supported range [0, 1 - {gap})")]
    ModulusOutOfRange { k: f64, gap: f64 },

    #[error("amplitude phi = {phi} outside [0, pi/2]")]
    AmplitudeOutOfRange { phi: f64 },

    #[error("mixed progression ratio r = 1 makes the closed form singular")]
    UnitRatio,

    #[error("gravity is zero: no sustained wave exists")]
    NoSustainedWave,

    #[error("ratio d/l = {ratio} is outside the {regime} asymptotic regime")]
    OutsideRegime { ratio: f64, regime: &'static str },

    #[error("quadrature did not converge: estimate {estimate} with error {error} after {intervals} intervals")]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("non-finite result in {context}")]
    NonFinite { context: &'static str },

    #[error("trace is empty")]
    EmptyTrace,

    #[error("trace was produced with different inputs ({field} differs)")]
    MismatchedTrace { field: &'static str },
}

impl Error {
    /// True for failures of the numerics rather than of the caller's inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. } | Error::NonFinite { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
