//! Dense state-vector engine for the handful of qubits the protocol needs.

mod label;
mod op;
mod schmidt;
mod state;

pub use label::{Bit, Label, Party, Role};
pub use op::LocalOp;
pub use state::{MeasurementRecord, StateVector};
