use crate::error::{Error, Result};

use super::{Circuit, Gate};

/// A synchronized circuit: `depth + 1` layers of exactly `width` gates, every
/// wire spanning one layer.
///
/// Gate `(layer, k)` has id `layer * width + k`. Layer 0 holds the inputs
/// (the original `n` first, then always-0 padding inputs), the top layer
/// holds the outputs in order (original outputs first, then padding). The
/// circuit is therefore iterable with `width` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layered {
    pub circuit: Circuit,
    pub width: usize,
    pub depth: usize,
    /// Input count of the circuit this was built from.
    pub original_inputs: usize,
    /// Output count of the circuit this was built from.
    pub original_outputs: usize,
}

impl Layered {
    /// Pads an original input with zeros up to `width`.
    pub fn lift(&self, x: &[bool]) -> Vec<bool> {
        let mut y = x.to_vec();
        y.resize(self.width, false);
        y
    }
}

#[derive(Clone)]
struct Node {
    layer: usize,
    class: u8,
    key: usize,
    gate: Gate,
}

const REAL: u8 = 0;
const CHAIN: u8 = 1;
const PAD: u8 = 2;

/// Levels every wire to span one layer and pads layers to a common width.
///
/// Gates not reaching an output are dropped. Long wires get private chains
/// of 1-input OR buffers, so in- and out-degrees never grow. The width `W`
/// is the smallest value with `W >= w_l` and `W - w_l <= 2 (W - w_{l-1})`
/// for every layer, which lets each padding buffer feed at most two padding
/// buffers of the next layer.
pub fn synchronize(c: &Circuit) -> Result<Layered> {
    c.require_monotone()?;
    let n = c.n();
    let total = c.len();

    let mut live = vec![false; total];
    for &o in c.outputs() {
        live[o] = true;
    }
    for g in (0..total).rev() {
        if live[g] {
            for &s in c.gate(g).sources() {
                live[s] = true;
            }
        }
    }
    let level = c.levels();

    let mut depth = c.outputs().iter().map(|&o| level[o]).max().unwrap_or(0).max(1);
    let mut slot_count = vec![0usize; total];
    for &o in c.outputs() {
        slot_count[o] += 1;
    }
    if c.outputs().iter().any(|&o| level[o] == depth && slot_count[o] > 1) {
        depth += 1;
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut real = vec![usize::MAX; total];
    let mut chain_key = 0usize;
    let new_node = |nodes: &mut Vec<Node>, layer, class, key, gate| {
        nodes.push(Node { layer, class, key, gate });
        nodes.len() - 1
    };
    // buffers at layers from+1..=to, returns the last
    let mut chain = |nodes: &mut Vec<Node>, mut src: usize, from: usize, to: usize| {
        for layer in from + 1..=to {
            src = new_node(nodes, layer, CHAIN, chain_key, Gate::Or(vec![src]));
            chain_key += 1;
        }
        src
    };

    for g in 0..total {
        if g < n {
            real[g] = new_node(&mut nodes, 0, REAL, g, Gate::Input);
            continue;
        }
        if !live[g] {
            continue;
        }
        let l = level[g];
        let sources = c
            .gate(g)
            .sources()
            .iter()
            .map(|&s| {
                if level[s] + 1 == l {
                    real[s]
                } else {
                    chain(&mut nodes, real[s], level[s], l - 1)
                }
            })
            .collect();
        real[g] = new_node(&mut nodes, l, REAL, g, c.gate(g).with_sources(sources));
    }

    let mut used_top = vec![false; total];
    for (j, &o) in c.outputs().iter().enumerate() {
        let node = if level[o] == depth && !used_top[o] {
            used_top[o] = true;
            real[o]
        } else {
            chain(&mut nodes, real[o], level[o], depth)
        };
        nodes[node].class = REAL;
        nodes[node].key = j;
    }

    let mut widths = vec![0usize; depth + 1];
    for node in &nodes {
        widths[node.layer] += 1;
    }
    let mut width = widths.iter().copied().max().unwrap_or(0);
    for l in 1..=depth {
        width = width.max((2 * widths[l - 1]).saturating_sub(widths[l]));
    }

    let mut prev_pad: Vec<usize> = Vec::new();
    for (l, &w) in widths.iter().enumerate() {
        let count = width - w;
        let mut pads = Vec::with_capacity(count);
        for r in 0..count {
            let gate = if l == 0 {
                Gate::Input
            } else {
                Gate::Or(vec![prev_pad[r % prev_pad.len()]])
            };
            pads.push(new_node(&mut nodes, l, PAD, r, gate));
        }
        prev_pad = pads;
    }

    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| (nodes[i].layer, nodes[i].class, nodes[i].key));
    let mut id = vec![0usize; nodes.len()];
    for (rank, &i) in order.iter().enumerate() {
        id[i] = rank;
    }
    let gates = order
        .iter()
        .map(|&i| {
            let g = &nodes[i].gate;
            g.with_sources(g.sources().iter().map(|&s| id[s]).collect())
        })
        .collect();
    let outputs = (depth * width..(depth + 1) * width).collect();
    let circuit = Circuit::new(width, gates, outputs)?;
    Ok(Layered {
        circuit,
        width,
        depth,
        original_inputs: n,
        original_outputs: c.m(),
    })
}

/// How a depth-1 circuit embeds the iteration of the circuit it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlattenEmbedding {
    /// Coordinates per layer.
    pub n: usize,
    /// Layer count; one source iteration takes this many flattened ones.
    pub depth: usize,
}

impl FlattenEmbedding {
    /// `x -> (x, 0^{(D-1)n})`.
    pub fn lift(&self, x: &[bool]) -> Vec<bool> {
        let mut y = x.to_vec();
        y.resize(self.n * self.depth, false);
        y
    }
}

/// Position of each gate inside its layer, for a circuit whose wires all
/// span one layer, whose layers all have `n` gates, and whose outputs are
/// exactly the top layer.
fn layer_positions(c: &Circuit) -> Result<(usize, Vec<usize>, Vec<usize>)> {
    let n = c.n();
    let level = c.levels();
    let depth = c.depth();
    if depth == 0 {
        return Err(Error::NotSynchronized("circuit has no gates above the inputs".into()));
    }
    for (g, gate) in c.gates().iter().enumerate() {
        if let Some(&s) = gate.sources().iter().find(|&&s| level[s] + 1 != level[g]) {
            return Err(Error::NotSynchronized(format!("wire {s} -> {g} skips a layer")));
        }
    }
    let mut count = vec![0usize; depth + 1];
    let mut pos = vec![usize::MAX; c.len()];
    for g in 0..c.len() {
        if level[g] < depth {
            pos[g] = count[level[g]];
        }
        count[level[g]] += 1;
    }
    if let Some(l) = count.iter().position(|&w| w != n) {
        return Err(Error::NotSynchronized(format!("layer {l} has {} gates, expected {n}", count[l])));
    }
    if c.m() != n {
        return Err(Error::NotIterable { inputs: n, outputs: c.m() });
    }
    for (j, &o) in c.outputs().iter().enumerate() {
        if level[o] != depth || pos[o] != usize::MAX {
            return Err(Error::NotSynchronized(format!(
                "output {j} must be a distinct top-layer gate"
            )));
        }
        pos[o] = j;
    }
    Ok((depth, level, pos))
}

/// Rewires a synchronized iterable circuit of depth `D` into a depth-1
/// circuit on `D n` coordinates.
///
/// Coordinate block `l` holds layer `l` (block 0 holds the inputs, which the
/// top layer feeds back into). The output at block `(l + 1) mod D`,
/// position `k'`, has the type of the layer-`(l + 1)` gate at `k'` and reads
/// input `l n + k` whenever that gate reads position `k` of layer `l`.
pub fn flatten_depth1(c: &Circuit) -> Result<(Circuit, FlattenEmbedding)> {
    c.require_monotone()?;
    let n = c.n();
    let (depth, level, pos) = layer_positions(c)?;
    let coords = depth * n;
    let mut at = vec![usize::MAX; coords];
    for g in n..c.len() {
        let block = level[g] % depth;
        at[block * n + pos[g]] = g;
    }
    let mut gates = vec![Gate::Input; coords];
    for &g in &at {
        let sources = c
            .gate(g)
            .sources()
            .iter()
            .map(|&s| (level[s] * n) + if level[s] == 0 { s } else { pos[s] })
            .collect();
        gates.push(c.gate(g).with_sources(sources));
    }
    let outputs = (coords..2 * coords).collect();
    let flat = Circuit::new(coords, gates, outputs)?;
    Ok((flat, FlattenEmbedding { n, depth }))
}
