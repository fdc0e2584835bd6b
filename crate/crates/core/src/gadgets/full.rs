use crate::error::{Error, Result};
use crate::netcore::{GraphBuilder, Network, UpdateScheme};

use super::{AnswerMode, Claim, CompiledKind, Literal, SourceKind, Witness};

/// Ids of the cliques attached to the `i`-th enumerated vertex, for a network
/// with `n` vertices and degree bound `d`: `(K_i^0, K_i^1)` as id ranges.
pub fn full_cliques(n: usize, d: usize, i: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
    let per = d + 3 * d - 1;
    let start = n + i * per;
    (start..start + d, start + d..start + per)
}

/// Turns one-vertex prediction for `v` into reaching the all-active
/// configuration.
///
/// The vertices are enumerated `v_0 = v` followed by the others in id order.
/// Each `v_i` gets an inactive clique `K_i^0` of size `d` and an active
/// clique `K_i^1` of size `3d - 1`. Every vertex of `K_i^0` is joined to
/// `v_i`, to all of `K_{i+1 mod k}^0`, and to the first `2d` vertices of
/// `K_i^1` (all of `K_0^1`); the first `d` vertices of `K_i^1` are joined
/// to `v_i`. The active cliques never switch off, the inactive ones stay off
/// until `K_0^0` sees `v` active, and from then on the activity spreads
/// around the ring of `K^0` cliques and into the original graph.
///
/// `d` must be odd, at least 3 and at least the maximum degree. The network
/// needs at least three vertices so that `K_{i-1}^0` and `K_{i+1}^0` are
/// different cliques.
pub fn build_full_instance(net: &Network, d: usize, v: usize) -> Result<(Network, Witness)> {
    let n = net.n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Precondition(format!("degree bound must be odd and at least 3, got {d}")));
    }
    let max = net.graph().max_degree();
    if max > d {
        return Err(Error::DegreeBound(format!("maximum degree {max} exceeds {d}")));
    }
    if n < 3 {
        return Err(Error::Precondition(format!(
            "the clique ring needs at least 3 vertices, got {n}"
        )));
    }
    if net.is_clocked() || !net.rule().is_majority() {
        return Err(Error::Precondition("full-prediction instances need a plain majority network".into()));
    }
    let order: Vec<usize> = std::iter::once(v).chain((0..n).filter(|&x| x != v)).collect();
    let mut b = GraphBuilder::with_vertices(n);
    for (x, y) in net.graph().edges() {
        b.add_edge(x, y);
    }
    b.add_vertices(n * (4 * d - 1));
    let mut lift: Vec<Literal> = (0..n).map(Literal::Pos).collect();
    for (i, &vi) in order.iter().enumerate() {
        let (k0, k1) = full_cliques(n, d, i);
        let (next0, _) = full_cliques(n, d, (i + 1) % n);
        clique(&mut b, k0.clone());
        clique(&mut b, k1.clone());
        let reach = if i == 0 { k1.len() } else { 2 * d };
        for a in k0.clone() {
            b.add_edge(a, vi);
            for c in next0.clone() {
                b.add_edge(a, c);
            }
            for c in k1.clone().take(reach) {
                b.add_edge(a, c);
            }
        }
        for c in k1.clone().take(d) {
            b.add_edge(c, vi);
        }
        lift.extend(k0.map(|_| Literal::Zero));
        lift.extend(k1.map(|_| Literal::One));
    }
    let graph = b.build()?;
    let total = graph.n();
    let mut raw: Vec<u64> = (0..n).map(|x| net.scheme().block_of(x) as u64).collect();
    let base = net.scheme().num_blocks() as u64;
    raw.extend((0..total - n).map(|j| base + 1 + j as u64));
    let scheme = UpdateScheme::from_raw(&raw)?;
    let out = Network::majority(graph, scheme)?;

    let mut w = Witness::new(SourceKind::Network, CompiledKind::Network, n, total);
    w.claim = Claim::Answer(AnswerMode::Full);
    w.lift = lift;
    w.source_target = Some(v);
    w.note(format!("the all-active configuration is reached iff vertex {v} is ever active"));
    w.stat("d", d);
    w.stat("max_degree", out.graph().max_degree());
    Ok((out, w))
}

fn clique(b: &mut GraphBuilder, r: std::ops::Range<usize>) {
    for x in r.clone() {
        for y in x + 1..r.end {
            b.add_edge(x, y);
        }
    }
}
