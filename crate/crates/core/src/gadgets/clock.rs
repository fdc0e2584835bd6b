use crate::netcore::{Configuration, Graph, Network, UpdateScheme};

use super::{CompiledKind, Literal, SourceKind, Witness};

/// Number of vertices in the clock gadget.
pub const CLOCK_SIZE: usize = 12;

/// `(vertex, label)` for the eight labeled clock vertices. The label is a
/// 3-letter word `s_0 s_1 s_2`; the vertex is in state `s_{t mod 3}` at step `t`.
pub const CLOCK_LABELS: [(usize, &str); 8] = [
    (0, "001"),
    (1, "110"),
    (2, "010"),
    (3, "101"),
    (4, "100"),
    (5, "011"),
    (9, "111"),
    (11, "000"),
];

const CLOCK_EDGES: [(usize, usize); 14] = [
    (0, 2),
    (2, 4),
    (4, 6),
    (1, 3),
    (3, 5),
    (5, 7),
    (0, 1),
    (2, 3),
    (4, 5),
    (6, 7),
    (0, 6),
    (1, 7),
    (8, 9),
    (10, 11),
];

const CLOCK_BLOCKS: [u64; CLOCK_SIZE] = [1, 1, 2, 2, 3, 3, 4, 4, 4, 4, 4, 4];

const CLOCK_ACTIVE: [usize; 6] = [1, 3, 4, 7, 8, 9];

/// Index of a label `s_0 s_1 s_2` read as a binary number.
pub fn label_index(bits: [bool; 3]) -> usize {
    (bits[0] as usize) << 2 | (bits[1] as usize) << 1 | bits[2] as usize
}

/// Bit `s_{t mod 3}` of the label with index `s`.
pub fn label_bit(s: usize, t: usize) -> bool {
    (s >> (2 - t % 3)) & 1 == 1
}

/// Clock vertex carrying the label with index `s`.
pub fn clock_vertex(s: usize) -> usize {
    CLOCK_LABELS
        .iter()
        .find(|(_, l)| label_index(parse_label(l)) == s)
        .map(|&(v, _)| v)
        .expect("every label occurs")
}

fn parse_label(l: &str) -> [bool; 3] {
    let b: Vec<bool> = l.bytes().map(|c| c == b'1').collect();
    [b[0], b[1], b[2]]
}

/// Initial configuration of the clock gadget.
pub fn clock_initial() -> Configuration {
    let mut c = Configuration::zeros(CLOCK_SIZE);
    for v in CLOCK_ACTIVE {
        c.set(v, true);
    }
    c
}

/// The 12-vertex clock: an 8-cycle with four chords plus two isolated pairs,
/// updated in four blocks (three pairs, then the rest).
///
/// From [`clock_initial`] each labeled vertex cycles through its label with
/// period 3. The witness has source kind `Clock` and observes label `s` at
/// its vertex.
pub fn build_clock() -> (Network, Witness) {
    let graph = Graph::new(CLOCK_SIZE, CLOCK_EDGES).expect("clock edges are simple");
    let scheme = UpdateScheme::from_raw(&CLOCK_BLOCKS).expect("clock blocks are positive");
    let net = Network::majority(graph, scheme).expect("clock sizes agree");
    let mut w = Witness::new(SourceKind::Clock, CompiledKind::Network, 8, CLOCK_SIZE);
    let init = clock_initial();
    w.lift = init.iter().map(Literal::constant).collect();
    w.observe = CLOCK_LABELS
        .iter()
        .map(|&(v, l)| (v, Literal::Pos(label_index(parse_label(l)))))
        .collect();
    w.period = 3;
    w.note("source coordinate s is the label s_0 s_1 s_2 read in binary; at step t it reads s_{t mod 3}");
    w.stat("max_degree", net.graph().max_degree());
    (net, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::trajectory;

    #[test]
    fn labels_follow_their_schedule() {
        let (net, _) = build_clock();
        let traj = trajectory(&net, &clock_initial(), 9);
        for (t, cfg) in traj.iter().enumerate() {
            for &(v, l) in &CLOCK_LABELS {
                let s = label_index(parse_label(l));
                assert_eq!(cfg.get(v), label_bit(s, t), "vertex {v} label {l} t {t}");
            }
        }
    }

    #[test]
    fn label_vertices_are_distinct_and_complete() {
        let mut seen: Vec<usize> = (0..8).map(clock_vertex).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn all_degrees_are_odd_and_at_most_three() {
        let (net, _) = build_clock();
        for v in 0..CLOCK_SIZE {
            let d = net.graph().degree(v);
            assert!(d % 2 == 1 && d <= 3);
        }
    }
}
