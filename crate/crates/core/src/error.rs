use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Input` covers malformed or out-of-contract data supplied by a caller,
/// `Math` covers violated arithmetic preconditions (division by zero, poles
/// of order two and higher, expansion at a pole), `NonContracting` is the
/// refusal to sum a geometric series whose ratio does not tend to zero on
/// the half plane `Re s > 1`, `Diverged` reports a numeric solver that did
/// not certify its result, and `Gate` marks an internal consistency gate
/// whose failure must abort the computation rather than produce output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("arithmetic precondition violated: {0}")]
    Math(String),
    #[error("refusing to sum a non-contracting geometric series: {0}")]
    NonContracting(String),
    #[error("numeric solver did not converge: {0}")]
    Diverged(String),
    #[error("consistency gate failed: {0}")]
    Gate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
