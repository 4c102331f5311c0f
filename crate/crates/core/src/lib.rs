//! Compiler from logical quantum circuits to nearest-neighbour circuits on
//! parity-encoded (LHZ) qubit layouts, with a layer scheduler, resource
//! accounting and a dense statevector checker for the encoded subspace.

pub mod algorithms;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod label;
pub mod layout;
pub mod layouts;
pub mod scheduler;
pub mod simulator;
pub mod synth;

pub use circuit::{Circuit, Gate, GateKind, Space};
pub use error::{Error, Result};
pub use label::QubitLabel;
pub use layout::{Constraint, ParityLayout};
