use super::{Circuit, Gate};

/// For each gate of the source circuit, its `(positive, negative)` rail in
/// the monotone circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RailMap {
    pub rails: Vec<(usize, usize)>,
}

impl RailMap {
    pub fn pos(&self, g: usize) -> usize {
        self.rails[g].0
    }

    pub fn neg(&self, g: usize) -> usize {
        self.rails[g].1
    }
}

/// Dual-rail monotonization.
///
/// Input `i` becomes the two inputs `i` (positive rail) and `n + i`
/// (negative rail). AND maps to (AND of positives, OR of negatives), OR to
/// (OR of positives, AND of negatives), and NOT swaps the rails without
/// creating a gate. Outputs are all positive rails followed by all negative
/// rails, so an iterable `C` yields an iterable circuit whose state is
/// `(y, !y)`.
pub fn monotonize(c: &Circuit) -> (Circuit, RailMap) {
    let n = c.n();
    let mut gates = vec![Gate::Input; 2 * n];
    let mut rails: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
    let push = |gates: &mut Vec<Gate>, g: Gate| {
        gates.push(g);
        gates.len() - 1
    };
    for gate in &c.gates()[n..] {
        let rail = match gate {
            Gate::Input => unreachable!("inputs come first"),
            Gate::Not(s) => (rails[*s].1, rails[*s].0),
            Gate::And(s) | Gate::Or(s) => {
                // NOT(NOT(u)) shares u's rails, so sources may collide
                let mut pos: Vec<usize> = Vec::with_capacity(s.len());
                let mut neg: Vec<usize> = Vec::with_capacity(s.len());
                for &src in s {
                    let (p, q) = rails[src];
                    if !pos.contains(&p) {
                        pos.push(p);
                    }
                    if !neg.contains(&q) {
                        neg.push(q);
                    }
                }
                let (gp, gn) = if matches!(gate, Gate::And(_)) {
                    (Gate::And(pos), Gate::Or(neg))
                } else {
                    (Gate::Or(pos), Gate::And(neg))
                };
                let p = push(&mut gates, gp);
                let q = push(&mut gates, gn);
                (p, q)
            }
        };
        rails.push(rail);
    }
    let outputs = c
        .outputs()
        .iter()
        .map(|&o| rails[o].0)
        .chain(c.outputs().iter().map(|&o| rails[o].1))
        .collect();
    let circuit = Circuit::new(2 * n, gates, outputs).expect("monotonization preserves well-formedness");
    (circuit, RailMap { rails })
}

/// Dual-rail encoding `(x, !x)` of an input vector.
pub fn dual_rail(x: &[bool]) -> Vec<bool> {
    x.iter().copied().chain(x.iter().map(|b| !b)).collect()
}
