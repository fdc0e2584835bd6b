use crate::error::{Error, Result};
use crate::netcore::{ClockWord, Graph, Network, UpdateScheme};

use super::amplify::{amplified_vertex, amplify};
use super::clock::{build_clock, clock_initial, clock_vertex, label_index};
use super::{CompiledKind, Literal, SourceKind, Witness};

/// Label indices `(c_down, c_up)` of a clock word: every `U` replaced by 0,
/// respectively by 1.
pub fn clock_labels(word: ClockWord) -> (usize, usize) {
    (label_index(word.resolve(false)), label_index(word.resolve(true)))
}

/// Replaces the clock words of a clocked majority network by attached clock
/// gadgets, giving a plain majority network.
///
/// For each vertex `v` of degree `d_v` whose word is not `UUU`, a
/// `max(1, ceil(d_v / 2))`-fold amplified clock is appended and `v` is joined
/// to the first `d_v + 1` copies of the clock vertex labeled `c_down(v)` and
/// of the one labeled `c_up(v)` (once if the labels agree). Where the word
/// says 1 both groups are active and outvote the `d_v` original neighbors,
/// where it says 0 neither is, and where it says `U` they cancel. Each clock
/// copy has one external neighbor, which the amplification tolerates. Clock
/// blocks follow the original blocks, one clock at a time, so `v` reads the
/// clocks' state at the start of each step.
pub fn compile_clocked_to_majority(net: &Network) -> Result<(Network, Witness)> {
    if !net.rule().is_majority() {
        return Err(Error::Precondition("clock removal needs the majority threshold".into()));
    }
    if !net.scheme().is_sequential() {
        return Err(Error::Precondition("clock removal needs a sequential base scheme".into()));
    }
    let g = net.graph();
    let n = g.n();
    let (clock, _) = build_clock();
    let init = clock_initial();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut raw: Vec<u64> = (0..n).map(|v| net.scheme().block_of(v) as u64).collect();
    let base_blocks = net.scheme().num_blocks() as u64;
    let mut lift: Vec<Literal> = (0..n).map(Literal::Pos).collect();
    let mut total = n;
    let mut clocks_attached = 0u64;
    let mut max_copies = 0;
    for v in 0..n {
        let word = net.rule().clock(v);
        if word.is_free() {
            continue;
        }
        let dv = g.degree(v);
        let k = dv.div_ceil(2).max(1);
        let (amp, _) = amplify(&clock, k)?;
        let offset = total;
        edges.extend(amp.graph().edges().map(|(a, b)| (a + offset, b + offset)));
        for x in 0..amp.n() {
            raw.push(base_blocks + clocks_attached * 4 + amp.scheme().block_of(x) as u64);
            lift.push(Literal::constant(init.get(x / (2 * k + 1))));
        }
        let (down, up) = clock_labels(word);
        let mut labels = vec![down];
        if up != down {
            labels.push(up);
        }
        for s in labels {
            for i in 0..=dv {
                edges.push((v, offset + amplified_vertex(clock_vertex(s), i, k)));
            }
        }
        max_copies = max_copies.max(dv + 1);
        total += amp.n();
        clocks_attached += 1;
    }
    let graph = Graph::new(total, edges)?;
    let scheme = UpdateScheme::from_raw(&raw)?;
    let out = Network::majority(graph, scheme)?;

    let mut w = Witness::new(SourceKind::Network, CompiledKind::Network, n, total);
    w.lift = lift;
    w.observe = (0..n).map(|v| (v, Literal::Pos(v))).collect();
    w.note("original vertices keep their ids; attached clocks start from the clock's initial configuration");
    w.stat("clocks", clocks_attached);
    w.stat("max_degree", out.graph().max_degree());
    w.stat("max_block_size", out.scheme().max_block_size());
    w.stat("num_blocks", out.scheme().num_blocks());
    w.stat("max_label_copies", max_copies);
    Ok((out, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{trajectory, ClockSymbol, Configuration, GraphBuilder, Rule};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_u_zero_attaches_eight_copies_of_two_labels() {
        let word: ClockWord = "1U0".parse().unwrap();
        assert_eq!(clock_labels(word), (0b100, 0b110));
        // a vertex of degree 7 inside a sequential network
        let mut b = GraphBuilder::with_vertices(8);
        for u in 1..8 {
            b.add_edge(0, u);
        }
        let mut clocks = vec![ClockWord::FREE; 8];
        clocks[0] = word;
        let net = Network::new(b.build().unwrap(), Rule::majority().with_clocks(clocks), UpdateScheme::sequential(8)).unwrap();
        let (out, _) = compile_clocked_to_majority(&net).unwrap();
        let k = 4;
        let at = |s: usize| (0..2 * k + 1).filter(|&i| out.graph().has_edge(0, 8 + amplified_vertex(clock_vertex(s), i, k))).count();
        assert_eq!(at(0b100), 8);
        assert_eq!(at(0b110), 8);
        assert_eq!(out.graph().degree(0), 7 + 16);
    }

    #[test]
    fn free_words_attach_nothing() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let net = Network::new(g, Rule::majority().with_clocks(vec![ClockWord::FREE; 3]), UpdateScheme::sequential(3)).unwrap();
        let (out, w) = compile_clocked_to_majority(&net).unwrap();
        assert_eq!(out.n(), 3);
        w.validate().unwrap();
    }

    #[test]
    fn non_sequential_schemes_are_rejected() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let net = Network::majority(g, UpdateScheme::synchronous(2)).unwrap();
        assert!(matches!(compile_clocked_to_majority(&net), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_clocked_networks_are_reproduced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let symbols = [ClockSymbol::U, ClockSymbol::Zero, ClockSymbol::One];
        for _ in 0..20 {
            let n = rng.gen_range(2..8);
            let mut b = GraphBuilder::with_vertices(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        b.add_edge(u, v);
                    }
                }
            }
            let clocks = (0..n)
                .map(|_| ClockWord([0; 3].map(|_| symbols[rng.gen_range(0..3)])))
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.reverse();
            let net = Network::new(b.build().unwrap(), Rule::majority().with_clocks(clocks), UpdateScheme::sequential_order(&order).unwrap()).unwrap();
            let (out, w) = compile_clocked_to_majority(&net).unwrap();
            w.validate().unwrap();
            let x: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let a = trajectory(&net, &Configuration::from_bits(&x), 30);
            let c = trajectory(&out, &Configuration::from_bits(&w.lift_state(&x)), 30);
            for t in 0..=30 {
                for v in 0..n {
                    assert_eq!(a[t].get(v), c[t].get(v), "t={t} v={v}");
                }
            }
        }
    }
}
