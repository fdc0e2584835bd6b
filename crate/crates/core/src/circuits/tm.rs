use crate::error::{Error, Result};

use super::{Circuit, Gate};

/// Head movement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    Left,
    Stay,
    Right,
}

impl Shift {
    pub fn apply(self, pos: usize, cells: usize) -> usize {
        match self {
            Shift::Left => pos.saturating_sub(1),
            Shift::Stay => pos,
            Shift::Right => (pos + 1).min(cells - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub write: usize,
    pub shift: Shift,
}

/// Deterministic Turing machine with states `0..states` and tape symbols
/// `0..symbols.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: usize,
    symbols: Vec<String>,
    input_symbols: Vec<usize>,
    blank: usize,
    initial: usize,
    final_state: usize,
    /// Indexed by `state * |symbols| + symbol`.
    delta: Vec<Transition>,
}

impl TuringMachine {
    pub fn new(
        states: usize,
        symbols: Vec<String>,
        input_symbols: Vec<usize>,
        blank: usize,
        initial: usize,
        final_state: usize,
        delta: Vec<Transition>,
    ) -> Result<Self> {
        let g = symbols.len();
        let bad = |msg: String| Err(Error::Precondition(msg));
        if states == 0 || g < 2 {
            return bad("need at least one state and two tape symbols".into());
        }
        if blank >= g || initial >= states || final_state >= states {
            return bad("blank, initial or final state out of range".into());
        }
        if input_symbols.contains(&blank) {
            return bad("the blank may not be an input symbol".into());
        }
        if input_symbols.iter().any(|&a| a >= g) {
            return bad("input symbol out of range".into());
        }
        if delta.len() != states * g {
            return bad(format!("transition table has {} entries, expected {}", delta.len(), states * g));
        }
        if delta.iter().any(|t| t.next >= states || t.write >= g) {
            return bad("transition target out of range".into());
        }
        Ok(TuringMachine {
            states,
            symbols,
            input_symbols,
            blank,
            initial,
            final_state,
            delta,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn input_symbols(&self) -> &[usize] {
        &self.input_symbols
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn final_state(&self) -> usize {
        self.final_state
    }

    /// The transition actually taken: the final state is absorbing and
    /// leaves the tape untouched.
    pub fn delta(&self, state: usize, symbol: usize) -> Transition {
        if state == self.final_state {
            return Transition {
                next: state,
                write: symbol,
                shift: Shift::Stay,
            };
        }
        self.delta[state * self.symbols.len() + symbol]
    }

    /// The table as given, including the final state's (ignored) row.
    pub fn raw_delta(&self) -> &[Transition] {
        &self.delta
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }
}

/// Instantaneous description on a bounded tape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TmConfig {
    pub tape: Vec<usize>,
    pub head: usize,
    pub state: usize,
    pub halted: bool,
}

impl TmConfig {
    /// `w` followed by blanks on `cells` cells, head on cell 0.
    pub fn initial(m: &TuringMachine, w: &[usize], cells: usize) -> Result<Self> {
        if w.is_empty() || w.len() > cells {
            return Err(Error::Precondition(format!(
                "input length {} must be in 1..={cells}",
                w.len()
            )));
        }
        if let Some(a) = w.iter().find(|a| !m.input_symbols.contains(a)) {
            return Err(Error::Precondition(format!("symbol {a} is not an input symbol")));
        }
        let mut tape = w.to_vec();
        tape.resize(cells, m.blank);
        Ok(TmConfig {
            tape,
            head: 0,
            state: m.initial,
            halted: m.initial == m.final_state,
        })
    }

    /// One machine step; the head is clamped to the tape ends.
    pub fn step(&self, m: &TuringMachine) -> TmConfig {
        let tr = m.delta(self.state, self.tape[self.head]);
        let mut tape = self.tape.clone();
        tape[self.head] = tr.write;
        TmConfig {
            head: tr.shift.apply(self.head, tape.len()),
            tape,
            state: tr.next,
            halted: self.halted || tr.next == m.final_state,
        }
    }
}

fn bits_for(count: usize) -> usize {
    let mut b = 1;
    while (1usize << b) < count {
        b += 1;
    }
    b
}

/// Bit layout of the circuit state for a machine on a bounded tape.
///
/// Cell `c` occupies bits `c * symbol_bits ..` (symbol in binary, low bit
/// first), then one head bit per cell (one-hot), then the state in binary,
/// then the halt flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TmLayout {
    pub cells: usize,
    pub symbol_bits: usize,
    pub state_bits: usize,
}

impl TmLayout {
    pub fn new(m: &TuringMachine, cells: usize) -> Self {
        TmLayout {
            cells,
            symbol_bits: bits_for(m.symbols.len()),
            state_bits: bits_for(m.states),
        }
    }

    pub fn cell_bit(&self, c: usize, j: usize) -> usize {
        c * self.symbol_bits + j
    }

    pub fn head_bit(&self, c: usize) -> usize {
        self.cells * self.symbol_bits + c
    }

    pub fn state_bit(&self, k: usize) -> usize {
        self.cells * (self.symbol_bits + 1) + k
    }

    pub fn halt_bit(&self) -> usize {
        self.cells * (self.symbol_bits + 1) + self.state_bits
    }

    pub fn len(&self) -> usize {
        self.halt_bit() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn encode(&self, cfg: &TmConfig) -> Vec<bool> {
        let mut x = vec![false; self.len()];
        for (c, &a) in cfg.tape.iter().enumerate() {
            for j in 0..self.symbol_bits {
                x[self.cell_bit(c, j)] = (a >> j) & 1 == 1;
            }
        }
        x[self.head_bit(cfg.head)] = true;
        for k in 0..self.state_bits {
            x[self.state_bit(k)] = (cfg.state >> k) & 1 == 1;
        }
        x[self.halt_bit()] = cfg.halted;
        x
    }

    /// Inverse of [`TmLayout::encode`]; fails unless exactly one head bit is set.
    pub fn decode(&self, x: &[bool]) -> Result<TmConfig> {
        let read = |start: usize, len: usize| (0..len).fold(0usize, |acc, j| acc | ((x[start + j] as usize) << j));
        let tape = (0..self.cells)
            .map(|c| read(self.cell_bit(c, 0), self.symbol_bits))
            .collect();
        let heads: Vec<usize> = (0..self.cells).filter(|&c| x[self.head_bit(c)]).collect();
        let [head] = heads[..] else {
            return Err(Error::Precondition(format!("head is not one-hot: {heads:?}")));
        };
        Ok(TmConfig {
            tape,
            head,
            state: read(self.state_bit(0), self.state_bits),
            halted: x[self.halt_bit()],
        })
    }
}

/// Result of compiling a bounded run of a machine into an iterable circuit.
#[derive(Debug, Clone)]
pub struct TmCircuit {
    pub circuit: Circuit,
    pub x0: Vec<bool>,
    pub halt: usize,
    pub layout: TmLayout,
}

/// One application of the returned circuit performs one step of `m` on a
/// tape of `K |w|` cells.
///
/// Each step is driven by "match" gates `head_c & [state = q] & [cell_c = a]`,
/// exactly one of which fires; every next-state bit is an OR of matches.
/// The result uses NOT gates and is meant to be monotonized downstream.
pub fn tm_to_circuit(m: &TuringMachine, w: &[usize], k: usize, max_gates: usize) -> Result<TmCircuit> {
    let cells = k
        .checked_mul(w.len())
        .ok_or_else(|| Error::Budget("tape length overflows".into()))?;
    let start = TmConfig::initial(m, w, cells)?;
    let layout = TmLayout::new(m, cells);
    let g = m.symbols.len();
    let estimate = cells * (m.states * g + 2 * layout.symbol_bits + g + 4) + layout.len() * 2;
    if estimate > max_gates {
        return Err(Error::Budget(format!(
            "about {estimate} gates needed, budget is {max_gates}"
        )));
    }

    let n = layout.len();
    let mut gates = vec![Gate::Input; n];
    let push = |gates: &mut Vec<Gate>, gate: Gate| {
        gates.push(gate);
        gates.len() - 1
    };
    let not_first = push(&mut gates, Gate::Not(0));
    let zero = push(&mut gates, Gate::And(vec![0, not_first]));

    let or_of = |gates: &mut Vec<Gate>, srcs: Vec<usize>| {
        if srcs.is_empty() {
            zero
        } else {
            push(gates, Gate::Or(srcs))
        }
    };

    // [state = q]
    let state_not: Vec<usize> = (0..layout.state_bits)
        .map(|b| push(&mut gates, Gate::Not(layout.state_bit(b))))
        .collect();
    let state_eq: Vec<usize> = (0..m.states)
        .map(|q| {
            let lits = (0..layout.state_bits)
                .map(|b| if (q >> b) & 1 == 1 { layout.state_bit(b) } else { state_not[b] })
                .collect();
            push(&mut gates, Gate::And(lits))
        })
        .collect();

    // matches[c][q * g + a]
    let mut matches = Vec::with_capacity(cells);
    let mut head_not = Vec::with_capacity(cells);
    for c in 0..cells {
        let bit_not: Vec<usize> = (0..layout.symbol_bits)
            .map(|j| push(&mut gates, Gate::Not(layout.cell_bit(c, j))))
            .collect();
        let cell_eq: Vec<usize> = (0..g)
            .map(|a| {
                let lits = (0..layout.symbol_bits)
                    .map(|j| if (a >> j) & 1 == 1 { layout.cell_bit(c, j) } else { bit_not[j] })
                    .collect();
                push(&mut gates, Gate::And(lits))
            })
            .collect();
        let row: Vec<usize> = (0..m.states * g)
            .map(|qa| {
                let (q, a) = (qa / g, qa % g);
                push(&mut gates, Gate::And(vec![layout.head_bit(c), state_eq[q], cell_eq[a]]))
            })
            .collect();
        matches.push(row);
        head_not.push(push(&mut gates, Gate::Not(layout.head_bit(c))));
    }

    let mut outputs = vec![0usize; n];
    for c in 0..cells {
        for j in 0..layout.symbol_bits {
            let keep = push(&mut gates, Gate::And(vec![head_not[c], layout.cell_bit(c, j)]));
            let mut srcs = vec![keep];
            for qa in 0..m.states * g {
                if (m.delta(qa / g, qa % g).write >> j) & 1 == 1 {
                    srcs.push(matches[c][qa]);
                }
            }
            outputs[layout.cell_bit(c, j)] = or_of(&mut gates, srcs);
        }
    }
    for target in 0..cells {
        let mut srcs = Vec::new();
        for (c, row) in matches.iter().enumerate() {
            for (qa, &mt) in row.iter().enumerate() {
                if m.delta(qa / g, qa % g).shift.apply(c, cells) == target {
                    srcs.push(mt);
                }
            }
        }
        outputs[layout.head_bit(target)] = or_of(&mut gates, srcs);
    }
    for b in 0..layout.state_bits {
        let srcs = matches
            .iter()
            .flat_map(|row| row.iter().enumerate())
            .filter(|(qa, _)| (m.delta(qa / g, qa % g).next >> b) & 1 == 1)
            .map(|(_, &mt)| mt)
            .collect();
        outputs[layout.state_bit(b)] = or_of(&mut gates, srcs);
    }
    let mut halt_srcs = vec![layout.halt_bit()];
    halt_srcs.extend(
        matches
            .iter()
            .flat_map(|row| row.iter().enumerate())
            .filter(|(qa, _)| m.delta(qa / g, qa % g).next == m.final_state)
            .map(|(_, &mt)| mt),
    );
    outputs[layout.halt_bit()] = or_of(&mut gates, halt_srcs);

    let circuit = Circuit::new(n, gates, outputs)?;
    Ok(TmCircuit {
        x0: layout.encode(&start),
        halt: layout.halt_bit(),
        circuit,
        layout,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms() -> Vec<String> {
        ["0", "1", "B"].iter().map(|s| s.to_string()).collect()
    }

    fn t(next: usize, write: usize, shift: Shift) -> Transition {
        Transition { next, write, shift }
    }

    /// State 0 flips bits moving right; on blank goes to the final state 1.
    fn flipper() -> TuringMachine {
        let delta = vec![
            t(0, 1, Shift::Right),
            t(0, 0, Shift::Right),
            t(1, 2, Shift::Stay),
            t(1, 0, Shift::Stay),
            t(1, 1, Shift::Stay),
            t(1, 2, Shift::Stay),
        ];
        TuringMachine::new(2, syms(), vec![0, 1], 2, 0, 1, delta).unwrap()
    }

    #[test]
    fn circuit_steps_match_direct_simulation() {
        let m = flipper();
        let w = [0, 1, 1];
        let tc = tm_to_circuit(&m, &w, 2, 1 << 20).unwrap();
        let mut cfg = TmConfig::initial(&m, &w, 6).unwrap();
        let mut x = tc.x0.clone();
        for _ in 0..10 {
            cfg = cfg.step(&m);
            x = tc.circuit.evaluate(&x).unwrap();
            assert_eq!(tc.layout.decode(&x).unwrap(), cfg);
        }
        assert!(cfg.halted && x[tc.halt]);
    }

    #[test]
    fn immediate_halt_sets_flag_at_step_one() {
        let delta = vec![t(1, 0, Shift::Stay); 6];
        let m = TuringMachine::new(2, syms(), vec![0, 1], 2, 0, 1, delta).unwrap();
        let tc = tm_to_circuit(&m, &[1], 1, 1 << 20).unwrap();
        assert!(!tc.x0[tc.halt]);
        let mut x = tc.x0.clone();
        for _ in 0..5 {
            x = tc.circuit.evaluate(&x).unwrap();
            assert!(x[tc.halt]);
        }
    }

    #[test]
    fn blank_in_input_alphabet_is_rejected() {
        assert!(TuringMachine::new(1, syms(), vec![2], 2, 0, 0, vec![t(0, 0, Shift::Stay); 3]).is_err());
    }

    #[test]
    fn size_budget_is_enforced() {
        let err = tm_to_circuit(&flipper(), &[0, 1], 4, 10).unwrap_err();
        assert!(err.is_budget());
    }
}
