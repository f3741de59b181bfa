use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the calculus.
///
/// Variants fall in two families: bad input (a precondition the caller can
/// fix) and model violations (a structural statement failed to hold, which
/// points at a bug or at a gap in the model). See [`Error::is_model_violation`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate index {index} out of range for f = {f}")]
    IndexOutOfRange { index: usize, f: usize },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("weight {weight} is not p-restricted")]
    NotRestricted { weight: String },

    #[error("Serre weight {class} is not regular")]
    NotRegular { class: String },

    #[error("{point} is not in the extension graph of mu = {mu}")]
    NotInGraph { mu: String, point: String },

    #[error("mu - eta is not {depth}-deep in the base alcove (mu = {mu})")]
    NotDeep { mu: String, depth: i64 },

    #[error("not 1-generic: pairings of mu = {mu} fail the genericity criterion")]
    NotOneGeneric { mu: String },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("expected {expected} distinct weights, found {found}")]
    Cardinality { expected: usize, found: usize },

    #[error("presentation search failed for label {label}: {reason}")]
    Presentation { label: u32, reason: String },

    #[error("presentation of {sigma} at lambda = {lambda} is not 1-deep; the envelope model does not apply")]
    PresentationNotDeep { sigma: String, lambda: String },

    #[error("Serre weight {class} occurs with multiplicity {count}")]
    Multiplicity { class: String, count: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures of a structural statement, false for bad input.
    pub fn is_model_violation(&self) -> bool {
        matches!(
            self,
            Error::Cardinality { .. }
                | Error::Presentation { .. }
                | Error::PresentationNotDeep { .. }
                | Error::Multiplicity { .. }
                | Error::Internal(_)
        )
    }
}
