//! Compiles the quantum Fourier transform onto LHZ layouts and prints its resources.

use parity_core::algorithms::{qft_logical, qft_parity};
use parity_core::scheduler::resource_stats;
use parity_core::simulator::verify_equivalence;

fn main() -> parity_core::Result<()> {
    println!("{:>3} {:>7} {:>6} {:>7} {:>6}", "n", "qubits", "CNOT", "single", "depth");
    for n in 3..=8 {
        let (layout, circuit) = qft_parity(n)?;
        let s = resource_stats(&circuit);
        println!("{n:>3} {:>7} {:>6} {:>7} {:>6}", layout.k(), s.cnot_count, s.single_qubit_count, s.depth);
    }
    let (layout, circuit) = qft_parity(4)?;
    let fidelity = verify_equivalence(&qft_logical(4)?, &circuit, &layout)?;
    println!("n=4 fidelity against the logical QFT: {fidelity:.12}");
    Ok(())
}
