use crate::circuits::{bound_degree, flatten_depth1, monotonize, synchronize, Circuit};
use crate::error::{Error, Result};
use crate::netcore::{Configuration, Network};

use super::clocked::compile_clocked_to_majority;
use super::cylinder::{compile_circuit_to_clocked, cylinder_input_vertex};
use super::{AnswerMode, Claim, CompiledKind, Literal, SourceKind, Witness};

/// A one-vertex prediction instance on a plain majority network.
#[derive(Debug, Clone)]
pub struct BseqInstance {
    pub network: Network,
    pub config: Configuration,
    pub target: usize,
    pub witness: Witness,
    /// Layer count of the synchronized circuit; one source iteration takes
    /// `3 * depth` network steps.
    pub depth: usize,
}

fn circuit_stage(n: usize, m: usize, lift: Vec<Literal>, observe: Vec<(usize, Literal)>) -> Witness {
    let mut w = Witness::new(SourceKind::IteratedCircuit, CompiledKind::Circuit, n, m);
    w.lift = lift;
    w.observe = observe;
    w
}

/// Compiles "is coordinate `i` ever 1 along the iteration of `c` from `x`"
/// into "is the target vertex ever active" on a majority network with a
/// block-sequential scheme.
///
/// Stages: dual-rail monotonization, degree bounding, synchronization,
/// depth-1 flattening, the clocked cylinder and clock removal. The stage
/// witnesses are composed; the result observes `C^u(x)` every `3 D` steps.
/// Requires `x_i = 0`.
pub fn compile_bseq_instance(c: &Circuit, x: &[bool], i: usize) -> Result<BseqInstance> {
    c.require_iterable()?;
    let n = c.n();
    if x.len() != n {
        return Err(Error::SizeMismatch { what: "initial state", got: x.len(), expected: n });
    }
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    if x[i] {
        return Err(Error::Precondition(format!("coordinate {i} must start at 0")));
    }

    let (mono, _) = monotonize(c);
    let rails = |j: usize| if j < n { Literal::Pos(j) } else { Literal::Neg(j - n) };
    let w1 = circuit_stage(n, 2 * n, (0..2 * n).map(rails).collect(), (0..2 * n).map(|j| (j, rails(j))).collect());

    let bounded = bound_degree(&mono)?;
    let m = bounded.n();
    let w2 = circuit_stage(m, m, (0..m).map(Literal::Pos).collect(), (0..m).map(|j| (j, Literal::Pos(j))).collect());

    let layered = synchronize(&bounded)?;
    let width = layered.width;
    let padded = |j: usize| if j < m { Literal::Pos(j) } else { Literal::Zero };
    let w3 = circuit_stage(m, width, (0..width).map(padded).collect(), (0..width).map(|j| (j, padded(j))).collect());

    let (flat, emb) = flatten_depth1(&layered.circuit)?;
    let coords = emb.n * emb.depth;
    let first = |j: usize| if j < emb.n { Literal::Pos(j) } else { Literal::Zero };
    let mut w4 = circuit_stage(width, coords, (0..coords).map(first).collect(), (0..coords).map(|j| (j, first(j))).collect());
    w4.period = emb.depth;

    let (clocked, w5) = compile_circuit_to_clocked(&flat)?;
    let (network, w6) = compile_clocked_to_majority(&clocked)?;

    let mut w = w1.compose(&w2)?.compose(&w3)?.compose(&w4)?.compose(&w5)?.compose(&w6)?;
    let target = cylinder_input_vertex(coords, i);
    w.claim = Claim::Answer(AnswerMode::Once);
    w.target = Some(target);
    w.source_target = Some(i);
    w.stat("depth", emb.depth);
    w.stat("width", width);
    w.stat("clocked_max_degree", clocked.graph().max_degree());
    w.stat("max_degree", network.graph().max_degree());
    w.stat("max_block_size", network.scheme().max_block_size());
    let config = Configuration::from_bits(&w.lift_state(x));
    Ok(BseqInstance { network, config, target, witness: w, depth: emb.depth })
}
