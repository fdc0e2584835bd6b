//! The prediction problems and the witness verification harness.

mod predict;
mod verify;

pub use predict::{predict_conditional, predict_eventual, predict_full, predict_once, Evidence, Verdict};
pub use verify::{verify_witness, CompiledObject, Divergence, SampleOutcome, SourceObject, VerifyOptions, VerifyReport};
