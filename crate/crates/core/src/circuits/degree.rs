use crate::error::Result;

use super::{Circuit, Gate};

/// Rewrites a monotone circuit so every gate has in-degree and out-degree at
/// most 2 (output slots count toward out-degree).
///
/// Wide AND/OR gates become balanced trees of 2-input gates of the same
/// type, split left-first. Gates with more than two uses get a copy tree of
/// 1-input OR buffers. A circuit already within the bound comes back
/// unchanged.
pub fn bound_degree(c: &Circuit) -> Result<Circuit> {
    c.require_monotone()?;
    let (max_in, max_out) = c.max_in_out();
    if max_in <= 2 && max_out <= 2 {
        return Ok(c.clone());
    }
    let out_deg = c.out_degrees();
    let mut gates: Vec<Gate> = Vec::with_capacity(c.len() * 2);
    // ports[g]: one entry per use of g, consumed in order
    let mut ports: Vec<Vec<usize>> = Vec::with_capacity(c.len());
    let mut cursor = vec![0usize; c.len()];

    let mut take = |ports: &Vec<Vec<usize>>, g: usize| {
        let p = ports[g][cursor[g]];
        cursor[g] += 1;
        p
    };

    // all inputs first, so their fan-out buffers come after them
    gates.extend(std::iter::repeat_n(Gate::Input, c.n()));
    for (g, gate) in c.gates().iter().enumerate() {
        let root = match gate {
            Gate::Input => g,
            Gate::Not(_) => unreachable!("monotone"),
            Gate::And(s) | Gate::Or(s) => {
                let leaves: Vec<usize> = s.iter().map(|&src| take(&ports, src)).collect();
                let is_and = matches!(gate, Gate::And(_));
                fan_in_tree(&mut gates, &leaves, is_and)
            }
        };
        let mut p = Vec::with_capacity(out_deg[g]);
        fan_out_ports(&mut gates, root, out_deg[g], &mut p);
        ports.push(p);
    }
    let outputs = c.outputs().iter().map(|&o| take(&ports, o)).collect();
    Circuit::new(c.n(), gates, outputs)
}

fn push(gates: &mut Vec<Gate>, g: Gate) -> usize {
    gates.push(g);
    gates.len() - 1
}

/// Builds the gate over `leaves`; for more than two leaves, a balanced tree.
fn fan_in_tree(gates: &mut Vec<Gate>, leaves: &[usize], is_and: bool) -> usize {
    let make = |s: Vec<usize>| if is_and { Gate::And(s) } else { Gate::Or(s) };
    if leaves.len() <= 2 {
        return push(gates, make(leaves.to_vec()));
    }
    let (l, r) = leaves.split_at(leaves.len().div_ceil(2));
    let a = subtree(gates, l, is_and);
    let b = subtree(gates, r, is_and);
    push(gates, make(vec![a, b]))
}

fn subtree(gates: &mut Vec<Gate>, leaves: &[usize], is_and: bool) -> usize {
    if leaves.len() == 1 {
        leaves[0]
    } else {
        fan_in_tree(gates, leaves, is_and)
    }
}

/// Appends `uses` ports for `root` to `out`, adding buffers so that no gate
/// hands out more than two.
fn fan_out_ports(gates: &mut Vec<Gate>, root: usize, uses: usize, out: &mut Vec<usize>) {
    if uses <= 2 {
        out.extend(std::iter::repeat_n(root, uses));
        return;
    }
    let a = uses.div_ceil(2);
    for part in [a, uses - a] {
        if part == 1 {
            out.push(root);
        } else {
            let buf = push(gates, Gate::Or(vec![root]));
            fan_out_ports(gates, buf, part, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::bits_of;

    #[test]
    fn five_input_and_becomes_four_two_input_ands() {
        let mut gates = vec![Gate::Input; 5];
        gates.push(Gate::And((0..5).collect()));
        let c = Circuit::new(5, gates, vec![5]).unwrap();
        let b = bound_degree(&c).unwrap();
        let ands: Vec<_> = b.gates().iter().filter(|g| matches!(g, Gate::And(_))).collect();
        assert_eq!(ands.len(), 4);
        assert!(ands.iter().all(|g| g.sources().len() == 2));
        for v in 0..32 {
            let x = bits_of(v, 5);
            assert_eq!(b.evaluate(&x).unwrap(), c.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn wide_fan_out_gets_buffers() {
        let mut gates = vec![Gate::Input; 2];
        gates.push(Gate::Or(vec![0, 1]));
        for _ in 0..4 {
            gates.push(Gate::And(vec![2]));
        }
        let c = Circuit::new(2, gates, vec![3, 4, 5, 6]).unwrap();
        let b = bound_degree(&c).unwrap();
        let (i, o) = b.max_in_out();
        assert!(i <= 2 && o <= 2);
        for v in 0..4 {
            let x = bits_of(v, 2);
            assert_eq!(b.evaluate(&x).unwrap(), c.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn busy_first_input_keeps_inputs_in_front() {
        let mut gates = vec![Gate::Input; 2];
        gates.extend((0..3).map(|_| Gate::Or(vec![0, 1])));
        let c = Circuit::new(2, gates, vec![2, 3, 4]).unwrap();
        let b = bound_degree(&c).unwrap();
        for v in 0..4 {
            let x = bits_of(v, 2);
            assert_eq!(b.evaluate(&x).unwrap(), c.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn small_degree_is_unchanged() {
        let c = Circuit::new(2, vec![Gate::Input, Gate::Input, Gate::And(vec![0, 1])], vec![2, 2]).unwrap();
        assert_eq!(bound_degree(&c).unwrap(), c);
    }

    #[test]
    fn non_monotone_is_rejected() {
        let c = Circuit::new(1, vec![Gate::Input, Gate::Not(0)], vec![1]).unwrap();
        assert!(bound_degree(&c).is_err());
    }
}
