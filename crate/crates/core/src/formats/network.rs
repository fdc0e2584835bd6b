use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use super::{arity, at, lines, num};
use crate::error::{Error, Result};
use crate::netcore::{ClockWord, Configuration, Graph, Network, Rule, Threshold, UpdateScheme};

/// A network with its initial configuration and optional target vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkFile {
    pub network: Network,
    pub init: Configuration,
    pub target: Option<usize>,
}

/// Parses `nodes`, `rule`, `edge`, `block`, `init`, `clock` and `target`
/// lines. Blocks default to 1, initial states to 0, clocks to `UUU`.
pub fn parse_network(text: &str) -> Result<NetworkFile> {
    let mut n: Option<usize> = None;
    let mut threshold = Threshold::HALF;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut blocks = BTreeMap::new();
    let mut init = BTreeMap::new();
    let mut clocks = BTreeMap::new();
    let mut target = None;
    for (line, w) in lines(text) {
        let vertex = |s: &str| -> Result<usize> {
            let v: usize = num(line, s, "vertex")?;
            match n {
                Some(n) if v < n => Ok(v),
                Some(n) => Err(Error::parse(line, format!("vertex {v} out of range (n = {n})"))),
                None => Err(Error::parse(line, "`nodes` must come first")),
            }
        };
        match w[0] {
            "nodes" => {
                arity(line, &w, 2)?;
                if n.is_some() {
                    return Err(Error::parse(line, "`nodes` given twice"));
                }
                n = Some(num(line, w[1], "node count")?);
            }
            "rule" => match (w.get(1).copied(), w.len()) {
                (Some("majority"), 2) => threshold = Threshold::HALF,
                (Some("portion"), 3) => threshold = w[2].parse().map_err(|e| at(line, e))?,
                _ => return Err(Error::parse(line, "expected `rule majority` or `rule portion a/b`")),
            },
            "edge" => {
                arity(line, &w, 3)?;
                let (u, v) = (vertex(w[1])?, vertex(w[2])?);
                if u == v {
                    return Err(Error::parse(line, format!("self-loop on vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            "block" => {
                arity(line, &w, 3)?;
                let v = vertex(w[1])?;
                let k: u64 = num(line, w[2], "block")?;
                if k == 0 {
                    return Err(Error::parse(line, "block values must be positive"));
                }
                blocks.insert(v, k);
            }
            "init" => {
                arity(line, &w, 3)?;
                let v = vertex(w[1])?;
                let b = match w[2] {
                    "0" => false,
                    "1" => true,
                    other => return Err(Error::parse(line, format!("state must be 0 or 1, got {other:?}"))),
                };
                init.insert(v, b);
            }
            "clock" => {
                arity(line, &w, 3)?;
                let v = vertex(w[1])?;
                clocks.insert(v, w[2].parse::<ClockWord>().map_err(|e| at(line, e))?);
            }
            "target" => {
                arity(line, &w, 2)?;
                target = Some(vertex(w[1])?);
            }
            other => return Err(Error::parse(line, format!("unknown directive {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing `nodes` line"))?;
    let graph = Graph::new(n, edges).map_err(|e| at(1, e))?;
    let raw: Vec<u64> = (0..n).map(|v| blocks.get(&v).copied().unwrap_or(1)).collect();
    let scheme = UpdateScheme::from_raw(&raw).map_err(|e| at(1, e))?;
    let mut rule = Rule::portion(threshold);
    if !clocks.is_empty() {
        rule = rule.with_clocks((0..n).map(|v| clocks.get(&v).copied().unwrap_or(ClockWord::FREE)).collect());
    }
    let network = Network::new(graph, rule, scheme).map_err(|e| at(1, e))?;
    let init = Configuration::from_bits(&(0..n).map(|v| init.get(&v).copied().unwrap_or(false)).collect::<Vec<_>>());
    Ok(NetworkFile { network, init, target })
}

/// Canonical form: `nodes`, `rule`, edges in order, then every block, the
/// active vertices, non-free clocks and the target.
pub fn write_network(f: &NetworkFile) -> String {
    let net = &f.network;
    let mut s = String::new();
    writeln!(s, "nodes {}", net.n()).unwrap();
    if net.rule().is_majority() {
        writeln!(s, "rule majority").unwrap();
    } else {
        writeln!(s, "rule portion {}", net.rule().threshold()).unwrap();
    }
    for (u, v) in net.graph().edges() {
        writeln!(s, "edge {u} {v}").unwrap();
    }
    for v in 0..net.n() {
        writeln!(s, "block {v} {}", net.scheme().block_of(v)).unwrap();
    }
    for v in (0..net.n()).filter(|&v| f.init.get(v)) {
        writeln!(s, "init {v} 1").unwrap();
    }
    if let Some(clocks) = net.rule().clocks() {
        for (v, c) in clocks.iter().enumerate().filter(|(_, c)| !c.is_free()) {
            writeln!(s, "clock {v} {c}").unwrap();
        }
    }
    if let Some(t) = f.target {
        writeln!(s, "target {t}").unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = "# star\nnodes 3\nrule majority\nedge 0 1\nedge 0 2\nblock 0 1\nblock 1 2\nblock 2 2\ninit 0 1\nclock 1 U01\ntarget 2\n";

    #[test]
    fn canonical_round_trip() {
        let f = parse_network(STAR).unwrap();
        let text = write_network(&f);
        assert_eq!(parse_network(&text).unwrap(), f);
        assert_eq!(write_network(&parse_network(&text).unwrap()), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_network("nodes 2\nedge 0 1\nedge 1 0\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, msg: "duplicate edge 1 0".into() });
        assert!(matches!(parse_network("nodes 2\nedge 0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_network("nodes 2\nclock 0 UX0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_network("edge 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_network("nodes 2\nrule portion 1/2/3\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn defaults_are_block_one_and_inactive() {
        let f = parse_network("nodes 2\nedge 0 1\n").unwrap();
        assert!(f.network.scheme().is_synchronous());
        assert!(f.init.is_all_zeros());
        assert_eq!(f.target, None);
    }
}
