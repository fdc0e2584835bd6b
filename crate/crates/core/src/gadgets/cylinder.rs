use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::netcore::{ClockWord, GraphBuilder, Network, Rule, UpdateScheme};

use super::gates::{attach_auxiliaries, gate_auxiliaries};
use super::{CompiledKind, Literal, SourceKind, Witness};

/// Maximum gate degree (in plus out) accepted by [`compile_circuit_to_clocked`].
pub const CYLINDER_MAX_GATE_DEGREE: usize = 4;

/// Maximum vertex degree guaranteed for circuits within the gate-degree bound.
pub const CYLINDER_MAX_DEGREE: usize = 7;

/// Vertex holding coordinate `i` of the iterated state (the row read by the
/// circuit), for a circuit with `n` coordinates.
pub fn cylinder_input_vertex(n: usize, i: usize) -> usize {
    2 * n + i
}

/// Buffers output slots that name an input or repeat an earlier slot.
fn buffer_outputs(c: &Circuit) -> Result<Circuit> {
    let mut gates = c.gates().to_vec();
    let mut taken = vec![false; c.len()];
    let mut outputs = Vec::with_capacity(c.m());
    for &o in c.outputs() {
        if o < c.n() || taken[o] {
            gates.push(Gate::Or(vec![o]));
            outputs.push(gates.len() - 1);
        } else {
            taken[o] = true;
            outputs.push(o);
        }
    }
    Circuit::new(c.n(), gates, outputs)
}

fn word(s: &str) -> ClockWord {
    s.parse().expect("static clock word")
}

/// Compiles an iterable monotone circuit into a clocked majority network on a
/// cylinder of rows, with a sequential scheme.
///
/// Per coordinate `i` there are three row vertices `a_i`, `b_i`, `c_i`
/// (ids `i`, `n + i`, `2n + i`) with clocks `00U`, `0U0`, `00U`, and the
/// circuit's gates with clock `U00` in between; the cycle
/// `c_i - a_i - b_i - out_i` closes through the gates reading `c_i`.
/// Always-active pendants (clock `111`) sit on `a_i`, `b_i`, and on `c_i`
/// once per gate reading it; gate auxiliaries carry constant clocks.
///
/// Update order is `a`, `b`, gates (topological), `c`, then constants. At
/// a step with `t mod 3 = 0` the gates compute `C` from the `c` row, at
/// phase 1 the `b` row copies the outputs, at phase 2 `a` copies `b` and
/// `c` copies `a`; every other update is forced to 0. Hence rows `a` and
/// `c` hold `C^u(x)` at step `3u`.
pub fn compile_circuit_to_clocked(c: &Circuit) -> Result<(Network, Witness)> {
    c.require_monotone()?;
    c.require_iterable()?;
    let d = c.max_gate_degree();
    if d > CYLINDER_MAX_GATE_DEGREE {
        return Err(Error::DegreeBound(format!(
            "circuit gate degree {d} exceeds {CYLINDER_MAX_GATE_DEGREE}"
        )));
    }
    let p = buffer_outputs(c)?;
    let n = p.n();
    let gates = p.len() - n;
    let gate_vertex = |g: usize| if g < n { 2 * n + g } else { 3 * n + (g - n) };
    let mut consumers = p.consumers();
    let input_uses: Vec<usize> = consumers[..n].to_vec();
    for &o in p.outputs() {
        consumers[o] += 1;
    }

    let mut b = GraphBuilder::with_vertices(3 * n + gates);
    let mut clocks = vec![ClockWord::FREE; 3 * n + gates];
    let mut lift = vec![Literal::Zero; 3 * n + gates];
    let mut observe: Vec<(usize, Literal)> = Vec::new();
    let constant = |b: &mut GraphBuilder, clocks: &mut Vec<ClockWord>, lift: &mut Vec<Literal>, at: usize, value: bool| {
        let v = b.add_vertex();
        b.add_edge(at, v);
        clocks.push(ClockWord::constant(value));
        lift.push(Literal::constant(value));
        v
    };

    for i in 0..n {
        let (a, bb, cc) = (i, n + i, 2 * n + i);
        b.add_edge(a, bb);
        b.add_edge(cc, a);
        clocks[a] = word("00U");
        clocks[bb] = word("0U0");
        clocks[cc] = word("00U");
        lift[a] = Literal::Pos(i);
        lift[cc] = Literal::Pos(i);
        observe.push((a, Literal::Pos(i)));
        observe.push((bb, Literal::Zero));
        observe.push((cc, Literal::Pos(i)));
    }
    for (j, &o) in p.outputs().iter().enumerate() {
        b.add_edge(n + j, gate_vertex(o));
    }
    for g in n..p.len() {
        let v = gate_vertex(g);
        clocks[v] = word("U00");
        observe.push((v, Literal::Zero));
        for &s in p.gate(g).sources() {
            b.add_edge(gate_vertex(s), v);
        }
    }
    let mut pendants = Vec::new();
    for i in 0..n {
        pendants.push(constant(&mut b, &mut clocks, &mut lift, i, true));
        pendants.push(constant(&mut b, &mut clocks, &mut lift, n + i, true));
        for _ in 0..input_uses[i] {
            pendants.push(constant(&mut b, &mut clocks, &mut lift, 2 * n + i, true));
        }
    }
    for (g, &m) in consumers.iter().enumerate().skip(n) {
        let (count, value) = gate_auxiliaries(p.gate(g), m);
        let aux = attach_auxiliaries(&mut b, gate_vertex(g), count);
        for a in aux {
            clocks.push(ClockWord::constant(value));
            lift.push(Literal::constant(value));
            pendants.push(a);
        }
    }
    for &v in &pendants {
        observe.push((v, lift[v]));
    }

    let graph = b.build()?;
    let total = graph.n();
    let order: Vec<usize> = (0..2 * n)
        .chain(3 * n..3 * n + gates)
        .chain(2 * n..3 * n)
        .chain(3 * n + gates..total)
        .collect();
    let scheme = UpdateScheme::sequential_order(&order)?;
    let net = Network::new(graph, Rule::majority().with_clocks(clocks), scheme)?;
    let max_degree = net.graph().max_degree();
    if max_degree > CYLINDER_MAX_DEGREE {
        return Err(Error::DegreeBound(format!(
            "clocked network has degree {max_degree} > {CYLINDER_MAX_DEGREE}"
        )));
    }

    let mut w = Witness::new(SourceKind::IteratedCircuit, CompiledKind::Network, n, total);
    w.lift = lift;
    w.observe = observe;
    w.period = 3;
    w.note("coordinate i is held by vertices i and 2n+i at steps 3u; vertex 2n+i is the row the gates read");
    w.stat("levels", 3 + p.depth());
    w.stat("max_degree", max_degree);
    Ok((net, w))
}
