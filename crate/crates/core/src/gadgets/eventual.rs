use crate::error::{Error, Result};
use crate::netcore::{ClockWord, Graph, Network, Rule, UpdateScheme};

use super::{AnswerMode, Claim, CompiledKind, Literal, SourceKind, Witness};

/// Gadget vertices in order `b, c, d, e, f, g`; the first four start active.
const GADGET_ACTIVE: [bool; 6] = [true, true, true, true, false, false];

/// Edges among gadget vertices (local ids 0..6 for `b..g`).
const GADGET_EDGES: [(usize, usize); 8] = [(3, 4), (3, 5), (3, 0), (3, 1), (3, 2), (1, 0), (1, 2), (5, 4)];

/// Gadget vertices joined to the watched vertex `v`.
const GADGET_TO_V: [usize; 4] = [0, 1, 4, 5];

/// Local id of the designated output vertex `u` (vertex `f`).
const GADGET_OUTPUT: usize = 4;

/// Attaches a latch to `v`: six new vertices `b..g` with `b, c, d, e` active
/// and `f, g` inactive, appended to the final block. Returns the new network,
/// the output vertex `u` and a witness claiming that `u` is eventually
/// active forever exactly when `v` is ever active.
///
/// `e` sees `b, c, d, f, g` and `c` sees `v, e, b, d`, so `b..e` keep a
/// majority whatever `v` does. `f` and `g` see `v`, `e` and each other: they
/// switch on together right after `v` does and then hold each other on.
/// While `f, g` are off, `v` gains two active and two inactive neighbors,
/// which leaves its majority unchanged.
pub fn attach_eventual_gadget(net: &Network, v: usize) -> Result<(Network, usize, Witness)> {
    let n = net.n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let g = net.graph();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend(GADGET_EDGES.iter().map(|&(a, b)| (n + a, n + b)));
    edges.extend(GADGET_TO_V.iter().map(|&a| (v, n + a)));
    let total = n + GADGET_ACTIVE.len();
    let graph = Graph::new(total, edges)?;
    let last = net.scheme().num_blocks() as u64;
    let mut raw: Vec<u64> = (0..n).map(|x| net.scheme().block_of(x) as u64).collect();
    raw.resize(total, last.max(1));
    let scheme = UpdateScheme::from_raw(&raw)?;
    let mut rule = Rule::portion(net.rule().threshold());
    if let Some(clocks) = net.rule().clocks() {
        let mut clocks = clocks.to_vec();
        clocks.resize(total, ClockWord::FREE);
        rule = rule.with_clocks(clocks);
    }
    let out = Network::new(graph, rule, scheme)?;
    let u = n + GADGET_OUTPUT;

    let mut w = Witness::new(SourceKind::Network, CompiledKind::Network, n, total);
    w.claim = Claim::Answer(AnswerMode::Eventual);
    w.lift = (0..n)
        .map(Literal::Pos)
        .chain(GADGET_ACTIVE.iter().map(|&a| Literal::constant(a)))
        .collect();
    w.target = Some(u);
    w.source_target = Some(v);
    w.note(format!("vertex {u} is eventually fixed active iff vertex {v} is ever active"));
    w.stat("max_degree", out.graph().max_degree());
    Ok((out, u, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{trajectory, Configuration};

    fn lone_vertex() -> Network {
        Network::majority(Graph::empty(1), UpdateScheme::synchronous(1)).unwrap()
    }

    #[test]
    fn inactive_v_keeps_u_inactive() {
        let (net, u, w) = attach_eventual_gadget(&lone_vertex(), 0).unwrap();
        let traj = trajectory(&net, &Configuration::from_bits(&w.lift_state(&[false])), 20);
        assert!(traj.iter().all(|c| !c.get(u) && !c.get(0)));
        assert!(traj.iter().all(|c| (1..5).all(|b| c.get(b))));
    }

    #[test]
    fn active_v_latches_u() {
        let (net, u, w) = attach_eventual_gadget(&lone_vertex(), 0).unwrap();
        let traj = trajectory(&net, &Configuration::from_bits(&w.lift_state(&[true])), 20);
        assert!(traj[1..].iter().all(|c| c.get(u)));
        assert!(traj.iter().all(|c| (1..5).all(|b| c.get(b))));
    }

    #[test]
    fn v_with_no_neighbors_active_latches_at_the_next_step() {
        // path 0 - 1 - 2, target 1 becomes active at step 1 from (1, 0, 1)
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let net = Network::majority(g, UpdateScheme::synchronous(3)).unwrap();
        let (out, u, w) = attach_eventual_gadget(&net, 1).unwrap();
        let traj = trajectory(&out, &Configuration::from_bits(&w.lift_state(&[true, false, true])), 10);
        assert!(!traj[1].get(u));
        assert!(traj[1].get(1));
        assert!(traj[2..].iter().all(|c| c.get(u)));
    }
}
