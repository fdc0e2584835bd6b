use crate::error::{Error, Result};
use crate::netcore::{ClockWord, GraphBuilder, Network, Rule, Threshold, UpdateScheme};

use super::{CompiledKind, Literal, SourceKind, Witness};

/// Number `n(w)` of clique neighbors a vertex of degree `d` needs so that the
/// portion-`p` rule acts as majority on its original neighbors.
///
/// For `p < 1/2` the neighbors are inactive and `n` is the least value with
/// `floor(p (d + n)) = floor(d / 2)`; for `p > 1/2` they are active and `n`
/// is the least value with `floor(p (d + n)) - n = floor(d / 2)`.
pub fn portion_padding(p: Threshold, d: usize) -> Result<usize> {
    if p.is_half() {
        return Err(Error::Precondition("p = 1/2 is the majority rule already".into()));
    }
    let target = (d / 2) as i64;
    let below = 2 * p.num() < p.den();
    // each step moves the left-hand side by at most one, towards the target
    for n in 0..=(d as u64 + 1) * p.den() {
        let f = p.floor_mul(d as u64 + n) as i64;
        let lhs = if below { f } else { f - n as i64 };
        if lhs == target {
            return Ok(n as usize);
        }
    }
    Err(Error::Precondition(format!("no clique size balances degree {d} at p = {}/{}", p.num(), p.den())))
}

/// Size of the clique attached to a vertex needing `n` clique neighbors.
pub fn portion_clique_size(p: Threshold, n: usize) -> usize {
    let extra = if 2 * p.num() < p.den() { p.ceil_recip() } else { p.complement().ceil_recip() };
    n.max(extra as usize + 1)
}

/// Converts a majority network into a portion-`p` network with the same
/// dynamics on the original vertices.
///
/// Each vertex `w` gets its own clique, joined to `n(w)` of its vertices
/// (see [`portion_padding`]). For `p < 1/2` the clique is inactive, and with
/// at least `ceil(1/p) + 1` vertices each member has at most one active
/// neighbor out of more than `1/p`, so it stays off. For `p > 1/2` the
/// clique is active and larger than `1/(1 - p)`, so it stays on. The cliques
/// are updated in one extra final block.
pub fn to_portion(net: &Network, p: Threshold) -> Result<(Network, Witness)> {
    if !net.rule().is_majority() {
        return Err(Error::Precondition("threshold shifting starts from a majority network".into()));
    }
    if p.is_half() {
        return Err(Error::Precondition("p = 1/2 is the majority rule already".into()));
    }
    let active = 2 * p.num() > p.den();
    let g = net.graph();
    let n = g.n();
    let mut b = GraphBuilder::with_vertices(n);
    for (x, y) in g.edges() {
        b.add_edge(x, y);
    }
    let mut sizes = Vec::with_capacity(n);
    for w in 0..n {
        let need = portion_padding(p, g.degree(w))?;
        let size = portion_clique_size(p, need);
        let k = b.add_vertices(size);
        for x in k.clone() {
            for y in x + 1..k.end {
                b.add_edge(x, y);
            }
        }
        for x in k.take(need) {
            b.add_edge(w, x);
        }
        sizes.push(need);
    }
    let graph = b.build()?;
    let total = graph.n();
    let mut raw: Vec<u64> = (0..n).map(|x| net.scheme().block_of(x) as u64).collect();
    raw.resize(total, net.scheme().num_blocks() as u64 + 1);
    let scheme = UpdateScheme::from_raw(&raw)?;
    let mut rule = Rule::portion(p);
    if let Some(clocks) = net.rule().clocks() {
        let mut clocks = clocks.to_vec();
        clocks.resize(total, ClockWord::FREE);
        rule = rule.with_clocks(clocks);
    }
    let out = Network::new(graph, rule, scheme)?;

    let mut w = Witness::new(SourceKind::Network, CompiledKind::Network, n, total);
    w.lift = (0..total)
        .map(|v| if v < n { Literal::Pos(v) } else { Literal::constant(active) })
        .collect();
    w.observe = (0..total)
        .map(|v| (v, if v < n { Literal::Pos(v) } else { Literal::constant(active) }))
        .collect();
    w.note(format!("p = {}/{}; cliques are constant {}", p.num(), p.den(), active as u8));
    w.stat("max_clique_neighbors", sizes.iter().max().copied().unwrap_or(0));
    w.stat("max_degree", out.graph().max_degree());
    Ok((out, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{trajectory, Configuration, Graph};

    fn third() -> Threshold {
        Threshold::new(1, 3).unwrap()
    }

    #[test]
    fn third_at_degree_four_needs_two() {
        assert_eq!(portion_padding(third(), 4).unwrap(), 2);
        assert_eq!(portion_clique_size(third(), 2), 4);
    }

    #[test]
    fn half_is_rejected() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let net = Network::majority(g, UpdateScheme::synchronous(2)).unwrap();
        assert!(to_portion(&net, Threshold::new(1, 2).unwrap()).is_err());
    }

    #[test]
    fn padding_balances_every_small_degree() {
        for (a, b) in [(1, 3), (2, 5), (3, 4), (1, 10), (9, 10)] {
            let p = Threshold::new(a, b).unwrap();
            for d in 0..20u64 {
                let n = portion_padding(p, d as usize).unwrap() as u64;
                // the padded portion rule activates exactly when majority does
                for s in 0..=d {
                    let s_all = if 2 * a < b { s } else { s + n };
                    assert_eq!(p.exceeded(s_all, d + n), 2 * s > d, "p={a}/{b} d={d} s={s}");
                }
            }
        }
    }

    #[test]
    fn cycle_dynamics_are_preserved() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let net = Network::majority(g, UpdateScheme::sequential(5)).unwrap();
        for p in [third(), Threshold::new(3, 4).unwrap()] {
            let (out, w) = to_portion(&net, p).unwrap();
            for x in 0..32u64 {
                let cfg = Configuration::from_index(x, 5);
                let a = trajectory(&net, &cfg, 12);
                let c = trajectory(&out, &Configuration::from_bits(&w.lift_state(&cfg.to_bits())), 12);
                for t in 0..=12 {
                    assert_eq!(a[t], c[t].restrict(&(0..5).collect::<Vec<_>>()));
                    for &(v, l) in &w.observe[5..] {
                        assert_eq!(c[t].get(v), l == Literal::One);
                    }
                }
            }
        }
    }
}
