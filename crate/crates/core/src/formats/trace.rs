use std::fmt::Write;

use super::{lines, num};
use crate::error::{Error, Result};
use crate::netcore::{Configuration, CycleReport};

/// A simulated trajectory, optionally closed by a detected cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// `x(0), x(1), ...`.
    pub steps: Vec<Configuration>,
    /// `(transient, period)` when cycle detection ran.
    pub cycle: Option<(usize, usize)>,
}

impl Trace {
    pub fn from_cycle(steps: Vec<Configuration>, report: &CycleReport) -> Self {
        Trace {
            steps,
            cycle: Some((report.transient, report.period)),
        }
    }
}

/// `t=<k> <bits>` per step, then `cycle transient=<τ> period=<p>` if known.
pub fn write_trace(trace: &Trace) -> String {
    let mut s = String::new();
    for (t, c) in trace.steps.iter().enumerate() {
        writeln!(s, "t={t} {c}").unwrap();
    }
    if let Some((tau, p)) = trace.cycle {
        writeln!(s, "cycle transient={tau} period={p}").unwrap();
    }
    s
}

fn field(line: usize, word: &str, key: &str) -> Result<usize> {
    let v = word
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected {key}=<k>, got {word:?}")))?;
    num(line, v, key)
}

/// Inverse of [`write_trace`]; step numbers must run 0, 1, 2, ... and all
/// bitstrings must have the same length.
pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut trace = Trace { steps: Vec::new(), cycle: None };
    for (line, w) in lines(text) {
        if trace.cycle.is_some() {
            return Err(Error::parse(line, "nothing may follow the cycle line"));
        }
        if w[0] == "cycle" {
            if w.len() != 3 {
                return Err(Error::parse(line, "expected `cycle transient=<k> period=<p>`"));
            }
            trace.cycle = Some((field(line, w[1], "transient")?, field(line, w[2], "period")?));
            continue;
        }
        if w.len() != 2 {
            return Err(Error::parse(line, "expected `t=<k> <bits>`"));
        }
        let t = field(line, w[0], "t")?;
        if t != trace.steps.len() {
            return Err(Error::parse(line, format!("expected t={}, got t={t}", trace.steps.len())));
        }
        let c: Configuration = w[1].parse().map_err(|e| super::at(line, e))?;
        if let Some(first) = trace.steps.first() {
            if first.len() != c.len() {
                return Err(Error::parse(line, format!("bitstring has length {}, expected {}", c.len(), first.len())));
            }
        }
        trace.steps.push(c);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "t=0 0110\nt=1 1001\nt=2 0110\ncycle transient=0 period=2\n";
        let trace = parse_trace(text).unwrap();
        assert_eq!(trace.cycle, Some((0, 2)));
        assert_eq!(write_trace(&trace), text);
    }

    #[test]
    fn rejects_gaps_and_ragged_rows() {
        assert!(matches!(parse_trace("t=0 01\nt=2 01\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_trace("t=0 01\nt=1 011\n"), Err(Error::Parse { line: 2, .. })));
    }
}
