//! Seeded random instances for tests, benchmarks and the acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuits::{Circuit, Gate, Shift, Transition, TuringMachine};
use crate::netcore::{ClockSymbol, ClockWord, Graph, GraphBuilder, Network, Rule, UpdateScheme};

/// Picks up to `k` distinct indices from `pool` with free capacity.
fn pick_sources<R: Rng>(rng: &mut R, pool: &[usize], cap: &[usize], k: usize) -> Vec<usize> {
    let mut open: Vec<usize> = pool.iter().copied().filter(|&g| cap[g] > 0).collect();
    open.shuffle(rng);
    open.truncate(k);
    open.sort_unstable();
    open
}

/// Random monotone circuit with `n` inputs, about `gates` gates and `m`
/// outputs, where every gate has in-degree plus out-degree at most
/// `max_degree` and every input is used at most `max_degree - 1` times.
///
/// Gates that would end up without a source are skipped, so the gate count
/// can fall short.
pub fn monotone_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize, m: usize, max_degree: usize) -> Circuit {
    assert!(n >= 1 && max_degree >= 2);
    let mut list = vec![Gate::Input; n];
    let mut cap = vec![max_degree - 1; n];
    for _ in 0..gates {
        let ids: Vec<usize> = (0..list.len()).collect();
        // keep at least `m` units of spare capacity for the outputs
        let total: usize = cap.iter().sum();
        let room = (total + max_degree).saturating_sub(m) / 2;
        let fan = rng.gen_range(1..max_degree).min(room);
        let src = pick_sources(rng, &ids, &cap, fan);
        if src.is_empty() {
            continue;
        }
        for &s in &src {
            cap[s] -= 1;
        }
        cap.push(max_degree - src.len());
        list.push(if rng.gen() { Gate::And(src) } else { Gate::Or(src) });
    }
    let mut outputs = Vec::with_capacity(m);
    for _ in 0..m {
        let ids: Vec<usize> = (0..list.len()).rev().collect();
        let o = match pick_sources(rng, &ids[..ids.len().min(4)], &cap, 1).first() {
            Some(&o) => o,
            None => {
                // no capacity left near the top: buffer a gate that still has room
                let all: Vec<usize> = (0..list.len()).collect();
                let s = pick_sources(rng, &all, &cap, 1)[0];
                cap[s] -= 1;
                cap.push(max_degree - 1);
                list.push(Gate::Or(vec![s]));
                list.len() - 1
            }
        };
        cap[o] -= 1;
        outputs.push(o);
    }
    Circuit::new(n, list, outputs).expect("generator respects circuit invariants")
}

/// Random depth-1 monotone iterable circuit on `n` coordinates: output `j`
/// is an AND or OR of up to `max_degree - 1` inputs, each input read at most
/// `max_uses` times.
pub fn depth1_circuit<R: Rng>(rng: &mut R, n: usize, max_degree: usize, max_uses: usize) -> Circuit {
    assert!(max_degree >= 2 && max_uses >= 1);
    let mut list = vec![Gate::Input; n];
    let mut cap = vec![max_uses; n];
    let inputs: Vec<usize> = (0..n).collect();
    let mut outputs = Vec::with_capacity(n);
    for _ in 0..n {
        let fan = rng.gen_range(1..max_degree);
        let mut src = pick_sources(rng, &inputs, &cap, fan);
        if src.is_empty() {
            // every input is saturated; reuse one beyond the cap rather than fail
            src.push(rng.gen_range(0..n));
        }
        for &s in &src {
            cap[s] = cap[s].saturating_sub(1);
        }
        list.push(if rng.gen() { Gate::And(src) } else { Gate::Or(src) });
        outputs.push(list.len() - 1);
    }
    Circuit::new(n, list, outputs).expect("generator respects circuit invariants")
}

/// Random iterable circuit with NOT gates: `gates` gates, each AND/OR of up
/// to 3 earlier gates or a NOT, and `n` outputs drawn from all gates.
pub fn iterable_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    let mut list = vec![Gate::Input; n];
    for _ in 0..gates {
        let len = list.len();
        let gate = match rng.gen_range(0..3) {
            0 => Gate::Not(rng.gen_range(0..len)),
            kind => {
                let fan = rng.gen_range(1..=3.min(len));
                let mut src: Vec<usize> = rand::seq::index::sample(rng, len, fan).into_vec();
                src.sort_unstable();
                if kind == 1 {
                    Gate::And(src)
                } else {
                    Gate::Or(src)
                }
            }
        };
        list.push(gate);
    }
    let len = list.len();
    let outputs = (0..n).map(|_| rng.gen_range(0..len)).collect();
    Circuit::new(n, list, outputs).expect("generator respects circuit invariants")
}

/// Random connected graph: a random spanning tree plus each other edge with
/// probability `p`.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut b = GraphBuilder::with_vertices(n);
    let mut has = vec![vec![false; n]; n];
    for i in 1..n {
        let (u, v) = (order[i], order[rng.gen_range(0..i)]);
        has[u][v] = true;
        has[v][u] = true;
        b.add_edge(u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !has[u][v] && rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build().expect("generated edges are simple")
}

/// Random graph on an even number of vertices in which every degree is odd.
///
/// Starts from a random graph with edge probability `p`; the vertices of even
/// degree come in an even number, and toggling the edge of each pair flips
/// both parities.
pub fn odd_degree_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    assert!(n.is_multiple_of(2) && n > 0, "odd degrees need an even vertex count");
    let mut adj = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    let mut even: Vec<usize> = (0..n).filter(|&u| adj[u].iter().filter(|&&e| e).count() % 2 == 0).collect();
    even.shuffle(rng);
    for pair in even.chunks(2) {
        let (u, v) = (pair[0], pair[1]);
        adj[u][v] = !adj[u][v];
        adj[v][u] = !adj[v][u];
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]);
    Graph::new(n, edges.collect::<Vec<_>>()).expect("generated edges are simple")
}

/// Random block-sequential scheme with at most `blocks` blocks.
pub fn scheme<R: Rng>(rng: &mut R, n: usize, blocks: u64) -> UpdateScheme {
    let raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=blocks.max(1))).collect();
    UpdateScheme::from_raw(&raw).expect("block values are positive")
}

/// Random sequential scheme (a random permutation).
pub fn sequential_scheme<R: Rng>(rng: &mut R, n: usize) -> UpdateScheme {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    UpdateScheme::sequential_order(&order).expect("a permutation")
}

/// Random clocked majority network on a connected graph with a sequential
/// scheme; each vertex keeps the free word with probability one half.
pub fn clocked_network<R: Rng>(rng: &mut R, n: usize, p: f64) -> Network {
    let g = connected_graph(rng, n, p);
    let symbols = [ClockSymbol::U, ClockSymbol::Zero, ClockSymbol::One];
    let clocks = (0..n)
        .map(|_| {
            if rng.gen() {
                ClockWord::FREE
            } else {
                ClockWord([0; 3].map(|_| symbols[rng.gen_range(0..3)]))
            }
        })
        .collect();
    let scheme = sequential_scheme(rng, n);
    Network::new(g, Rule::majority().with_clocks(clocks), scheme).expect("sizes agree")
}

/// Random configuration bits.
pub fn bits<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

/// Random machine with `states` states (the last one final) over `symbols`
/// tape symbols (symbol 0 is the blank, the rest are input symbols).
pub fn turing_machine<R: Rng>(rng: &mut R, states: usize, symbols: usize) -> TuringMachine {
    assert!(states >= 2 && symbols >= 2);
    let names = (0..symbols).map(|a| if a == 0 { "_".to_string() } else { format!("s{a}") }).collect();
    let shifts = [Shift::Left, Shift::Stay, Shift::Right];
    let delta = (0..states * symbols)
        .map(|_| Transition {
            next: rng.gen_range(0..states),
            write: rng.gen_range(0..symbols),
            shift: shifts[rng.gen_range(0..3)],
        })
        .collect();
    TuringMachine::new(states, names, (1..symbols).collect(), 0, 0, states - 1, delta)
        .expect("generated machine is well formed")
}
