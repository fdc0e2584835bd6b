//! Boolean circuits and the circuit-level transformations used by the
//! compilers: evaluation, iteration, dual-rail monotonization, degree
//! bounding, synchronization, depth-1 flattening and the Turing-machine
//! front end.

mod degree;
mod layered;
mod model;
mod monotone;
mod oracle;
mod tm;

pub use degree::bound_degree;
pub use layered::{flatten_depth1, synchronize, FlattenEmbedding, Layered};
pub use model::{bits_of, Circuit, Gate};
pub use monotone::{dual_rail, monotonize, RailMap};
pub use oracle::{reach_oracle, Reach};
pub use tm::{tm_to_circuit, Shift, TmCircuit, TmConfig, TmLayout, Transition, TuringMachine};
