use crate::report::CheckReport;
use thiserror::Error;

/// Errors raised while building or combining models.
///
/// Every variant is an *input* problem (bad file, mismatched carriers,
/// exceeded size budget). Law violations discovered by the checkers are not
/// errors; they come back as failed [`CheckReport`]s with witnesses.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed value literal {literal:?}: {reason}")]
    MalformedValue { literal: String, reason: String },
    #[error("value {literal:?} lies outside [0,1]")]
    ValueOutOfRange { literal: String },
    #[error("value {value} is not an element of the chain {chain}")]
    OutsideChain { value: String, chain: String },
    #[error("{0} is not a valid subquantale: {1}")]
    InvalidSubquantale(String, String),
    #[error("empty carrier is not allowed")]
    EmptyCarrier,
    #[error("duplicate point name {0:?}")]
    DuplicatePoint(String),
    #[error("unknown point name {0:?}")]
    UnknownPoint(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("chain mismatch: expected {expected}, got {got}")]
    ChainMismatch { expected: String, got: String },
    #[error("{what} needs {need} entries, exceeding the limit of {limit}")]
    SizeLimit {
        what: String,
        need: String,
        limit: usize,
    },
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("non-total table: {0}")]
    NonTotalTable(String),
    #[error("map is not continuous; first witness: {0}")]
    NotContinuous(String),
    #[error("the frame has no points over the requested chain")]
    EmptySpectrum,
    #[error("{0}")]
    Invalid(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl ModelError {
    /// Wraps the first witness of a failed report into an error message.
    pub fn from_failed_report(context: &str, report: &CheckReport) -> ModelError {
        let detail = report
            .counterexamples
            .first()
            .map(|w| w.to_string())
            .unwrap_or_else(|| "no witness recorded".to_owned());
        ModelError::Invalid(format!("{context}: {detail}"))
    }
}
