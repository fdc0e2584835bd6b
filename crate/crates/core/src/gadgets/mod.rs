//! Compilers from circuits, clocked networks and majority networks to the
//! networks that simulate them, each returning a [`Witness`].

mod amplify;
mod bseq;
mod clock;
mod clocked;
mod cylinder;
mod eventual;
mod full;
mod gates;
mod portion;
mod tm;
mod witness;

pub use amplify::{amplified_vertex, amplify};
pub use bseq::{compile_bseq_instance, BseqInstance};
pub use clock::{build_clock, clock_initial, clock_vertex, label_bit, label_index, CLOCK_LABELS, CLOCK_SIZE};
pub use clocked::{clock_labels, compile_clocked_to_majority};
pub use cylinder::{compile_circuit_to_clocked, cylinder_input_vertex, CYLINDER_MAX_DEGREE, CYLINDER_MAX_GATE_DEGREE};
pub use eventual::attach_eventual_gadget;
pub use full::{build_full_instance, full_cliques};
pub use gates::{buffer_for_embedding, circuit_network_config, compile_circuit_to_majority, gate_auxiliaries};
pub use portion::{portion_clique_size, portion_padding, to_portion};
pub use tm::compile_tm;
pub use witness::{AnswerMode, Claim, CompiledKind, Literal, SourceKind, Witness};
