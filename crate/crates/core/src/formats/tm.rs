use std::fmt::Write;

use super::{arity, lines, num};
use crate::circuits::{Shift, Transition, TuringMachine};
use crate::error::{Error, Result};

/// A machine together with the input word it runs on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmFile {
    pub machine: TuringMachine,
    /// Symbol ids of the input word.
    pub input: Vec<usize>,
}

fn shift_name(s: Shift) -> &'static str {
    match s {
        Shift::Left => "L",
        Shift::Stay => "S",
        Shift::Right => "R",
    }
}

/// Writes `states`, `symbols`, `input`, `blank`, `start`, `accept`, one
/// `delta` line per non-final state and symbol, and the `word`.
pub fn write_tm(f: &TmFile) -> String {
    let m = &f.machine;
    let sym = |a: usize| m.symbols()[a].as_str();
    let mut s = String::new();
    writeln!(s, "states {}", m.states()).unwrap();
    writeln!(s, "symbols {}", m.symbols().join(" ")).unwrap();
    let input: Vec<&str> = m.input_symbols().iter().map(|&a| sym(a)).collect();
    writeln!(s, "input {}", input.join(" ")).unwrap();
    writeln!(s, "blank {}", sym(m.blank())).unwrap();
    writeln!(s, "start {}", m.initial()).unwrap();
    writeln!(s, "accept {}", m.final_state()).unwrap();
    let g = m.symbols().len();
    for q in (0..m.states()).filter(|&q| q != m.final_state()) {
        for a in 0..g {
            let t = m.raw_delta()[q * g + a];
            writeln!(s, "delta {q} {} {} {} {}", sym(a), t.next, sym(t.write), shift_name(t.shift)).unwrap();
        }
    }
    let word: Vec<&str> = f.input.iter().map(|&a| sym(a)).collect();
    writeln!(s, "word {}", word.join(" ")).unwrap();
    s
}

/// Parses the format written by [`write_tm`]. `states`, `symbols`, `blank`,
/// `start` and `accept` must come before any `delta` or `word` line.
/// Missing transitions keep the state and the symbol and do not move.
pub fn parse_tm(text: &str) -> Result<TmFile> {
    let mut states: Option<usize> = None;
    let mut symbols: Option<Vec<String>> = None;
    let mut input_names: Option<Vec<String>> = None;
    let mut blank = None;
    let mut start = None;
    let mut accept = None;
    let mut delta_lines = Vec::new();
    let mut word = None;
    for (line, w) in lines(text) {
        match w[0] {
            "states" => {
                arity(line, &w, 2)?;
                states = Some(num(line, w[1], "states")?);
            }
            "symbols" => symbols = Some(w[1..].iter().map(|s| s.to_string()).collect()),
            "input" => input_names = Some(w[1..].iter().map(|s| s.to_string()).collect()),
            "blank" => {
                arity(line, &w, 2)?;
                blank = Some((line, w[1].to_string()));
            }
            "start" => {
                arity(line, &w, 2)?;
                start = Some(num(line, w[1], "start")?);
            }
            "accept" => {
                arity(line, &w, 2)?;
                accept = Some(num(line, w[1], "accept")?);
            }
            "delta" => {
                arity(line, &w, 6)?;
                delta_lines.push((line, w[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>()));
            }
            "word" => word = Some((line, w[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>())),
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let missing = |what: &str| Error::parse(1, format!("missing `{what}` line"));
    let states = states.ok_or_else(|| missing("states"))?;
    let symbols = symbols.ok_or_else(|| missing("symbols"))?;
    let id = |line: usize, name: &str| {
        symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::parse(line, format!("unknown symbol {name:?}")))
    };
    let (bl, blank_name) = blank.ok_or_else(|| missing("blank"))?;
    let blank = id(bl, &blank_name)?;
    let input_symbols = match input_names {
        Some(names) => names.iter().map(|a| id(1, a)).collect::<Result<Vec<_>>>()?,
        None => (0..symbols.len()).filter(|&a| a != blank).collect(),
    };
    let g = symbols.len();
    let mut delta: Vec<Transition> = (0..states * g)
        .map(|k| Transition { next: k / g, write: k % g, shift: Shift::Stay })
        .collect();
    for (line, d) in delta_lines {
        let q: usize = num(line, &d[0], "state")?;
        let a = id(line, &d[1])?;
        let next: usize = num(line, &d[2], "state")?;
        let write = id(line, &d[3])?;
        let shift = match d[4].as_str() {
            "L" => Shift::Left,
            "S" => Shift::Stay,
            "R" => Shift::Right,
            other => return Err(Error::parse(line, format!("shift must be L, S or R, got {other:?}"))),
        };
        if q >= states || next >= states {
            return Err(Error::parse(line, "state out of range"));
        }
        delta[q * g + a] = Transition { next, write, shift };
    }
    let input = match word {
        Some((line, names)) => names.iter().map(|a| id(line, a)).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let machine = TuringMachine::new(
        states,
        symbols.clone(),
        input_symbols,
        blank,
        start.ok_or_else(|| missing("start"))?,
        accept.ok_or_else(|| missing("accept"))?,
        delta,
    )
    .map_err(|e| Error::parse(1, e.to_string()))?;
    Ok(TmFile { machine, input })
}
