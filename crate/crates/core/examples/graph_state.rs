//! Prepares an encoded graph state and checks it against the CZ construction.

use parity_core::algorithms::{graph_state_logical, graph_state_prep, Graph};
use parity_core::scheduler::resource_stats;
use parity_core::simulator::{check_stabilizers, encode, logical_register, state_fidelity, StateVector};

fn main() -> parity_core::Result<()> {
    let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)])?;
    let (layout, circuit) = graph_state_prep(&g, false)?;
    let s = resource_stats(&circuit);
    println!("ring of 4: {} qubits, depth {} (bound {}), CNOT {}", layout.k(), s.depth, g.n + 3, s.cnot_count);
    print!("{}", layout.render_ascii());

    let mut got = StateVector::zero(layout.qubits.clone())?;
    got.apply(&circuit)?;
    let mut want = StateVector::zero(logical_register(g.n))?;
    want.apply(&graph_state_logical(&g))?;
    let want = encode(&layout, &want)?;
    println!("fidelity {:.12}, stabilizer deviation {:.1e}", state_fidelity(&want, &got), check_stabilizers(&layout, &got));
    Ok(())
}
