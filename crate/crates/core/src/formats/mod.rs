//! Line-oriented text formats: networks, circuits, traces, witnesses and
//! Turing machines.
//!
//! Every format ignores blank lines and `#` comments, uses 0-based decimal
//! ids, and reports errors with 1-based line numbers.

mod circuit;
mod network;
mod tm;
mod trace;
mod witness;

pub use circuit::{parse_circuit, write_circuit};
pub use network::{parse_network, write_network, NetworkFile};
pub use tm::{parse_tm, write_tm, TmFile};
pub use trace::{parse_trace, write_trace, Trace};
pub use witness::{parse_witness, write_witness};

use crate::error::{Error, Result};

/// Non-empty, comment-stripped lines with their 1-based numbers, split into words.
pub(crate) fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

/// Re-labels an error raised without position information.
pub(crate) fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { line: 0, msg } => Error::Parse { line, msg },
        Error::Parse { .. } => e,
        other => Error::Parse { line, msg: other.to_string() },
    }
}

pub(crate) fn num<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| Error::parse(line, format!("{what}: expected a number, got {word:?}")))
}

pub(crate) fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() != n {
        return Err(Error::parse(
            line,
            format!("{:?} takes {} argument(s), got {}", words[0], n - 1, words.len() - 1),
        ));
    }
    Ok(())
}
