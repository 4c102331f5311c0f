use thiserror::Error;

use crate::label::QubitLabel;

/// Errors raised while building layouts, synthesizing gates or simulating.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("logical index {0} missing from basis state")]
    MissingIndex(usize),
    #[error("invalid qubit label {0:?}: indices must be strictly increasing and non-empty")]
    InvalidLabel(Vec<usize>),
    #[error("qubit {0} is not part of the layout")]
    MissingQubit(QubitLabel),
    #[error("parity qubit unavailable: {0}")]
    ParityUnavailable(QubitLabel),
    #[error("root {root} does not lie on the logical line of {index}")]
    RootNotOnLine { index: usize, root: QubitLabel },
    #[error("qubits {a} and {b} are not neighbours; use a layout tailored to this gate")]
    NotAdjacent { a: QubitLabel, b: QubitLabel },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("register of {qubits} qubits exceeds the simulator cap of {cap}")]
    CapExceeded { qubits: usize, cap: usize },
    #[error("state leaves the code space (leakage norm {0:.3e})")]
    Leakage(f64),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
