use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid observable {0:?}: expected two letters from I, X, Y, Z, not \"II\"")]
    ParseObservable(String),

    #[error("invalid square id {0:?}: expected S1..S10")]
    ParseSquareId(String),

    #[error("state is not a joint eigenstate of {0}")]
    NotAnEigenstate(String),

    #[error("not a Reye configuration: {0}")]
    NotReye(String),

    #[error("partner pairing failed: {0}")]
    Pairing(String),

    #[error("not a quantum block design: {0}")]
    NotQbd(String),

    #[error("malformed embedded table {table}: {detail}")]
    Golden { table: &'static str, detail: String },

    /// A structural invariant that holds for correct inputs did not hold.
    #[error("consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
