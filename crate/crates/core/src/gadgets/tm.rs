use crate::circuits::{tm_to_circuit, TmCircuit, TuringMachine};
use crate::error::Result;

use super::{CompiledKind, Literal, SourceKind, Witness};

/// Compiles a bounded run of `m` on `w` (tape of `k |w|` cells) into an
/// iterable circuit, with the identity witness between the machine's
/// encoded configuration and the circuit state.
pub fn compile_tm(m: &TuringMachine, w: &[usize], k: usize, max_gates: usize) -> Result<(TmCircuit, Witness)> {
    let tc = tm_to_circuit(m, w, k, max_gates)?;
    let n = tc.layout.len();
    let mut wit = Witness::new(SourceKind::TuringMachine, CompiledKind::Circuit, n, n);
    wit.lift = (0..n).map(Literal::Pos).collect();
    wit.observe = (0..n).map(|j| (j, Literal::Pos(j))).collect();
    wit.source_target = Some(tc.halt);
    wit.target = Some(tc.halt);
    wit.note("cells in binary low bit first, then one-hot head, then state in binary, then the halt flag");
    wit.stat("cells", tc.layout.cells);
    wit.stat("gates", tc.circuit.len() - n);
    Ok((tc, wit))
}
