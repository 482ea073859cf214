use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain and resource errors raised by the library operations.
///
/// Axiom violations are never errors; they are reported through
/// [`AxiomReport`](crate::AxiomReport).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("particle `{0}` does not belong to this system")]
    ForeignParticle(String),

    #[error("theorem hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("transposition ({i},{j}) is invalid: {reason}")]
    InvalidTransposition { i: usize, j: usize, reason: String },

    #[error("slot count mismatch: expected {expected}, found {found}")]
    SlotMismatch { expected: usize, found: usize },

    #[error("invalid mode specification: {0}")]
    InvalidModeSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no admissible microstates for {rule} with n = {n} and g = {g}")]
    NoAdmissibleMicrostates { rule: String, n: usize, g: usize },
}
