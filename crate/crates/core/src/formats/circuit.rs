use std::collections::BTreeMap;
use std::fmt::Write;

use super::{arity, at, lines, num};
use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};

/// Parses `inputs`, `gate <id> INPUT|AND|OR|NOT <src...>` and
/// `output <j> <id>` lines.
///
/// Gate ids must be dense and appear in increasing order; ids below the
/// input count may be omitted and default to `INPUT`.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut n: Option<usize> = None;
    let mut gates: Vec<Gate> = Vec::new();
    let mut outputs = BTreeMap::new();
    let mut last_line = 1;
    for (line, w) in lines(text) {
        last_line = line;
        match w[0] {
            "inputs" => {
                arity(line, &w, 2)?;
                if n.is_some() {
                    return Err(Error::parse(line, "`inputs` given twice"));
                }
                let k = num(line, w[1], "input count")?;
                n = Some(k);
                gates = vec![Gate::Input; k];
            }
            "gate" => {
                let n = n.ok_or_else(|| Error::parse(line, "`inputs` must come first"))?;
                if w.len() < 3 {
                    return Err(Error::parse(line, "expected `gate <id> <kind> <sources...>`"));
                }
                let id: usize = num(line, w[1], "gate id")?;
                let sources = w[3..]
                    .iter()
                    .map(|s| num(line, s, "source"))
                    .collect::<Result<Vec<usize>>>()?;
                let gate = match (w[2], sources.len()) {
                    ("INPUT", 0) => Gate::Input,
                    ("NOT", 1) => Gate::Not(sources[0]),
                    ("NOT", k) => return Err(Error::parse(line, format!("NOT takes one source, got {k}"))),
                    ("AND" | "OR", 0) => return Err(Error::parse(line, format!("{} needs at least one source", w[2]))),
                    ("AND", _) => Gate::And(sources),
                    ("OR", _) => Gate::Or(sources),
                    ("INPUT", _) => return Err(Error::parse(line, "INPUT takes no sources")),
                    (other, _) => return Err(Error::parse(line, format!("unknown gate kind {other:?}"))),
                };
                if id < n {
                    if gate != Gate::Input {
                        return Err(Error::parse(line, format!("gate {id} is an input slot")));
                    }
                    continue;
                }
                if id != gates.len() {
                    return Err(Error::parse(line, format!("expected gate id {}, got {id}", gates.len())));
                }
                if matches!(gate, Gate::Input) {
                    return Err(Error::parse(line, format!("gate {id}: inputs must have ids below {n}")));
                }
                if let Some(&s) = gate.sources().iter().find(|&&s| s >= id) {
                    return Err(Error::parse(line, format!("gate {id}: source {s} does not precede it")));
                }
                gates.push(gate);
            }
            "output" => {
                arity(line, &w, 3)?;
                let j: usize = num(line, w[1], "output index")?;
                let id: usize = num(line, w[2], "gate id")?;
                if outputs.insert(j, (id, line)).is_some() {
                    return Err(Error::parse(line, format!("output {j} given twice")));
                }
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing `inputs` line"))?;
    let mut outs = Vec::with_capacity(outputs.len());
    for (k, (&j, &(id, line))) in outputs.iter().enumerate() {
        if j != k {
            return Err(Error::parse(line, format!("output indices must be dense, missing {k}")));
        }
        if id >= gates.len() {
            return Err(Error::parse(line, format!("output {j} names missing gate {id}")));
        }
        outs.push(id);
    }
    Circuit::new(n, gates, outs).map_err(|e| at(last_line, e))
}

/// Canonical form: `inputs`, one `gate` line per gate (inputs included),
/// then the outputs.
pub fn write_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "inputs {}", c.n()).unwrap();
    for (id, g) in c.gates().iter().enumerate() {
        write!(s, "gate {id} {}", g.kind_name()).unwrap();
        for src in g.sources() {
            write!(s, " {src}").unwrap();
        }
        s.push('\n');
    }
    for (j, o) in c.outputs().iter().enumerate() {
        writeln!(s, "output {j} {o}").unwrap();
    }
    s
}
