//! Majority automata networks under block-sequential update schemes.
//!
//! [`netcore`] holds the data model and exact dynamics, [`circuits`] the
//! Boolean-circuit side, [`gadgets`] the compilers from circuits and clocked
//! networks down to plain majority networks, and [`solvers`] the prediction
//! problems plus witness verification. [`formats`] reads and writes the text
//! files used by the command-line tool.

pub mod circuits;
pub mod error;
pub mod formats;
pub mod gadgets;
pub mod netcore;
pub mod random;
pub mod solvers;

pub use error::{Error, Result};
