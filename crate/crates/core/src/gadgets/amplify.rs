use crate::error::{Error, Result};
use crate::netcore::{Graph, Network, Rule, UpdateScheme};

use super::{CompiledKind, Literal, SourceKind, Witness};

/// Copy `i` of vertex `v` in a `k`-amplified network.
#[inline]
pub fn amplified_vertex(v: usize, i: usize, k: usize) -> usize {
    v * (2 * k + 1) + i
}

/// Replaces every vertex by `2k + 1` copies; copies of adjacent vertices are
/// fully connected, copies of one vertex are not adjacent. Blocks and clock
/// words are inherited.
///
/// Every vertex must have odd degree. Then a copy's majority has a margin of
/// at least `2k + 1`, so attaching up to `k` arbitrary external neighbors to
/// each copy cannot change its update. Copies of `v` are contiguous, which
/// keeps neighbor counting cheap.
pub fn amplify(net: &Network, k: usize) -> Result<(Network, Witness)> {
    let g = net.graph();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v).is_multiple_of(2)) {
        return Err(Error::Precondition(format!(
            "amplification needs odd degrees; vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    let c = 2 * k + 1;
    let n = g.n();
    let mut edges = Vec::with_capacity(g.num_edges() * c * c);
    for (u, v) in g.edges() {
        for i in 0..c {
            for j in 0..c {
                edges.push((amplified_vertex(u, i, k), amplified_vertex(v, j, k)));
            }
        }
    }
    let graph = Graph::new(n * c, edges)?;
    let raw: Vec<u64> = (0..n * c).map(|x| net.scheme().block_of(x / c) as u64).collect();
    let scheme = UpdateScheme::from_raw(&raw)?;
    let mut rule = Rule::portion(net.rule().threshold());
    if let Some(clocks) = net.rule().clocks() {
        rule = rule.with_clocks((0..n * c).map(|x| clocks[x / c]).collect());
    }
    let out = Network::new(graph, rule, scheme)?;

    let mut w = Witness::new(SourceKind::Network, CompiledKind::Network, n, n * c);
    w.lift = (0..n * c).map(|x| Literal::Pos(x / c)).collect();
    w.observe = (0..n * c).map(|x| (x, Literal::Pos(x / c))).collect();
    w.note(format!("phi maps copy (v, i) = v*{c} + i to v"));
    w.stat("k", k);
    w.stat("max_degree", out.graph().max_degree());
    w.stat("max_block_size", out.scheme().max_block_size());
    Ok((out, w))
}
