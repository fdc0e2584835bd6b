use crate::circuits::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::netcore::{Configuration, GraphBuilder, Network, UpdateScheme};

use super::{CompiledKind, Literal, SourceKind, Witness};

/// Auxiliary vertices of one gate gadget: their count and common value.
///
/// An AND gate with in-degree `n` and `m` consumers gets `|n - m - 1|`
/// auxiliaries, valued 0 if `n - m - 1 >= 0` and 1 otherwise; an OR gate
/// gets `n + m - 1` auxiliaries valued 1. With consumers still inactive when
/// the gate updates, the gate's majority then computes exactly AND or OR of
/// its inputs.
pub fn gate_auxiliaries(gate: &Gate, consumers: usize) -> (usize, bool) {
    let n = gate.sources().len() as i64;
    let m = consumers as i64;
    match gate {
        Gate::And(_) => ((n - m - 1).unsigned_abs() as usize, n - m - 1 < 0),
        Gate::Or(_) => ((n + m - 1).max(0) as usize, true),
        _ => (0, false),
    }
}

/// Adds `count` auxiliaries wired as a star around the first one: the first
/// auxiliary touches the gate and every other auxiliary, the others touch
/// the gate and the first auxiliary. Returns the new vertex ids.
pub(crate) fn attach_auxiliaries(b: &mut GraphBuilder, gate: usize, count: usize) -> std::ops::Range<usize> {
    let aux = b.add_vertices(count);
    for a in aux.clone() {
        b.add_edge(gate, a);
        if a != aux.start {
            b.add_edge(aux.start, a);
        }
    }
    aux
}

/// Rewrites a monotone circuit so that every input has at most one use and
/// every output slot names its own non-input gate, adding 1-input OR buffers.
///
/// An input used more than once gets one shared buffer right after the
/// inputs; a repeated output slot, or a slot naming an input, gets a fresh
/// buffer at the end.
pub fn buffer_for_embedding(c: &Circuit) -> Result<Circuit> {
    c.require_monotone()?;
    let n = c.n();
    let uses = c.out_degrees();
    // new id of each original gate when read as a source
    let mut map: Vec<usize> = (0..c.len()).collect();
    let mut gates: Vec<Gate> = c.gates()[..n].to_vec();
    for (i, &u) in uses.iter().enumerate().take(n) {
        if u >= 2 {
            gates.push(Gate::Or(vec![i]));
            map[i] = gates.len() - 1;
        }
    }
    for (g, gate) in c.gates().iter().enumerate().skip(n) {
        let sources = gate.sources().iter().map(|&s| map[s]).collect();
        gates.push(gate.with_sources(sources));
        map[g] = gates.len() - 1;
    }
    let mut taken = vec![false; gates.len()];
    let mut outputs = Vec::with_capacity(c.m());
    for &o in c.outputs() {
        let g = map[o];
        if g < n || taken[g] {
            gates.push(Gate::Or(vec![g]));
            outputs.push(gates.len() - 1);
        } else {
            taken[g] = true;
            outputs.push(g);
        }
    }
    Circuit::new(n, gates, outputs)
}

/// Compiles a monotone circuit into a majority network with a sequential
/// scheme whose first global step computes the circuit.
///
/// Vertices `0..n` are the inputs `v_i`, then one vertex per gate of the
/// buffered circuit, then the auxiliaries. The scheme updates gates in
/// topological order, then the inputs, then the auxiliaries. The witness
/// observes output `j` at the vertex `w_j` of its gate after one step.
pub fn compile_circuit_to_majority(c: &Circuit) -> Result<(Network, Witness)> {
    let prepared = buffer_for_embedding(c)?;
    let n = prepared.n();
    let consumers = prepared.consumers();
    let gate_degree = prepared
        .gates()
        .iter()
        .enumerate()
        .map(|(g, gate)| gate.sources().len() + consumers[g])
        .max()
        .unwrap_or(0);

    let mut b = GraphBuilder::with_vertices(prepared.len());
    let mut aux_values = Vec::new();
    for (g, gate) in prepared.gates().iter().enumerate() {
        for &s in gate.sources() {
            b.add_edge(s, g);
        }
        let (count, value) = gate_auxiliaries(gate, consumers[g]);
        let aux = attach_auxiliaries(&mut b, g, count);
        aux_values.extend(aux.map(|_| value));
    }
    let graph = b.build()?;
    let total = graph.n();
    let order: Vec<usize> = (n..prepared.len()).chain(0..n).chain(prepared.len()..total).collect();
    let scheme = UpdateScheme::sequential_order(&order)?;
    let net = Network::majority(graph, scheme)?;

    let max_degree = net.graph().max_degree();
    if gate_degree > 0 && max_degree > 2 * gate_degree - 1 {
        return Err(Error::DegreeBound(format!(
            "compiled degree {max_degree} exceeds 2d-1 for d = {gate_degree}"
        )));
    }

    let mut w = Witness::new(SourceKind::Circuit, CompiledKind::Network, n, total);
    for i in 0..n {
        w.lift[i] = Literal::Pos(i);
    }
    for (k, &v) in aux_values.iter().enumerate() {
        w.lift[prepared.len() + k] = Literal::constant(v);
    }
    w.observe = prepared
        .outputs()
        .iter()
        .enumerate()
        .map(|(j, &g)| (g, Literal::Pos(j)))
        .collect();
    w.note("inputs used more than once and repeated or input-valued outputs are buffered by 1-input OR gates");
    w.stat("gate_degree", gate_degree);
    w.stat("max_degree", max_degree);
    w.stat("auxiliaries", aux_values.len());
    Ok((net, w))
}

/// Initial configuration of a compiled gate network for circuit input `x`.
pub fn circuit_network_config(w: &Witness, x: &[bool]) -> Configuration {
    Configuration::from_bits(&w.lift_state(x))
}
