use crate::error::{Error, Result};

/// One gate of a circuit. Sources are gate ids that precede the gate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Input,
    And(Vec<usize>),
    Or(Vec<usize>),
    Not(usize),
}

impl Gate {
    pub fn sources(&self) -> &[usize] {
        match self {
            Gate::Input => &[],
            Gate::And(s) | Gate::Or(s) => s,
            Gate::Not(s) => std::slice::from_ref(s),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Gate::Input => "INPUT",
            Gate::And(_) => "AND",
            Gate::Or(_) => "OR",
            Gate::Not(_) => "NOT",
        }
    }

    /// Same gate type with new sources (`Input` ignores them).
    pub(crate) fn with_sources(&self, sources: Vec<usize>) -> Gate {
        match self {
            Gate::Input => Gate::Input,
            Gate::And(_) => Gate::And(sources),
            Gate::Or(_) => Gate::Or(sources),
            Gate::Not(_) => Gate::Not(sources[0]),
        }
    }
}

/// A Boolean circuit: gates in topological order, the first `n` of which
/// are the inputs, plus an ordered list of output gate ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl Circuit {
    /// Validates and builds a circuit.
    ///
    /// Requirements: gates `0..n` are inputs and no other gate is; sources
    /// precede their gate and are distinct; AND/OR have at least one source;
    /// outputs name existing gates.
    pub fn new(n: usize, gates: Vec<Gate>, outputs: Vec<usize>) -> Result<Self> {
        if gates.len() < n {
            return Err(Error::SizeMismatch {
                what: "gate list",
                got: gates.len(),
                expected: n,
            });
        }
        for (g, gate) in gates.iter().enumerate() {
            let is_input = matches!(gate, Gate::Input);
            if is_input != (g < n) {
                let reason = if is_input {
                    format!("INPUT gates must be the first {n} gates")
                } else {
                    "the first gates must be INPUT".to_string()
                };
                return Err(Error::BadGate { gate: g, reason });
            }
            let sources = gate.sources();
            if matches!(gate, Gate::And(_) | Gate::Or(_)) && sources.is_empty() {
                return Err(Error::BadGate {
                    gate: g,
                    reason: "AND/OR needs at least one source".into(),
                });
            }
            for (k, &s) in sources.iter().enumerate() {
                if s >= g {
                    return Err(Error::SourceOrder { gate: g, src: s });
                }
                if sources[..k].contains(&s) {
                    return Err(Error::BadGate {
                        gate: g,
                        reason: format!("source {s} repeated"),
                    });
                }
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= gates.len()) {
            return Err(Error::BadGate {
                gate: o,
                reason: "output names a missing gate".into(),
            });
        }
        Ok(Circuit { n, gates, outputs })
    }

    /// The circuit with outputs `x_0..x_{n-1}`.
    pub fn identity(n: usize) -> Self {
        Circuit {
            n,
            gates: vec![Gate::Input; n],
            outputs: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, g: usize) -> &Gate {
        &self.gates[g]
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        !self.gates.iter().any(|g| matches!(g, Gate::Not(_)))
    }

    pub fn is_iterable(&self) -> bool {
        self.n == self.m()
    }

    pub fn require_monotone(&self) -> Result<()> {
        if self.is_monotone() {
            Ok(())
        } else {
            Err(Error::NonMonotone)
        }
    }

    pub fn require_iterable(&self) -> Result<()> {
        if self.is_iterable() {
            Ok(())
        } else {
            Err(Error::NotIterable {
                inputs: self.n,
                outputs: self.m(),
            })
        }
    }

    /// Number of gates reading `g`, per gate.
    pub fn consumers(&self) -> Vec<usize> {
        let mut c = vec![0; self.gates.len()];
        for gate in &self.gates {
            for &s in gate.sources() {
                c[s] += 1;
            }
        }
        c
    }

    /// Out-degree per gate: consumers plus output slots naming the gate.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut c = self.consumers();
        for &o in &self.outputs {
            c[o] += 1;
        }
        c
    }

    /// Largest in-degree plus out-degree over all gates.
    pub fn max_gate_degree(&self) -> usize {
        self.out_degrees()
            .iter()
            .zip(&self.gates)
            .map(|(o, g)| o + g.sources().len())
            .max()
            .unwrap_or(0)
    }

    /// Largest in-degree and largest out-degree.
    pub fn max_in_out(&self) -> (usize, usize) {
        let inn = self.gates.iter().map(|g| g.sources().len()).max().unwrap_or(0);
        let out = self.out_degrees().into_iter().max().unwrap_or(0);
        (inn, out)
    }

    /// Longest-path level of every gate (inputs at level 0).
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0; self.gates.len()];
        for g in 0..self.gates.len() {
            level[g] = self.gates[g]
                .sources()
                .iter()
                .map(|&s| level[s] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Layer of every gate as the length of the shortest path from an input.
    pub fn layers(&self) -> Vec<usize> {
        let mut layer = vec![0; self.gates.len()];
        for g in 0..self.gates.len() {
            layer[g] = self.gates[g]
                .sources()
                .iter()
                .map(|&s| layer[s] + 1)
                .min()
                .unwrap_or(0);
        }
        layer
    }

    /// Longest input-to-gate path length.
    pub fn depth(&self) -> usize {
        self.levels().into_iter().max().unwrap_or(0)
    }

    fn check_arity(&self, x: &[bool]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::SizeMismatch {
                what: "circuit input",
                got: x.len(),
                expected: self.n,
            });
        }
        Ok(())
    }

    /// Value of every gate on input `x`.
    pub fn gate_values(&self, x: &[bool]) -> Result<Vec<bool>> {
        self.check_arity(x)?;
        let mut val = Vec::with_capacity(self.gates.len());
        val.extend_from_slice(x);
        for gate in &self.gates[self.n..] {
            let v = match gate {
                Gate::Input => unreachable!("inputs come first"),
                Gate::And(s) => s.iter().all(|&i| val[i]),
                Gate::Or(s) => s.iter().any(|&i| val[i]),
                Gate::Not(s) => !val[*s],
            };
            val.push(v);
        }
        Ok(val)
    }

    pub fn evaluate(&self, x: &[bool]) -> Result<Vec<bool>> {
        let val = self.gate_values(x)?;
        Ok(self.outputs.iter().map(|&o| val[o]).collect())
    }

    /// `C^t(x)`.
    pub fn iterate(&self, x: &[bool], t: usize) -> Result<Vec<bool>> {
        self.require_iterable()?;
        self.check_arity(x)?;
        let mut cur = x.to_vec();
        for _ in 0..t {
            cur = self.evaluate(&cur)?;
        }
        Ok(cur)
    }
}

/// Interprets the low `n` bits of `value` as an input vector, bit i first.
pub fn bits_of(value: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (value >> i) & 1 == 1).collect()
}
