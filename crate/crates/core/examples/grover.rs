//! Multi-controlled phase and Grover diffusion on the staircase layout.

use std::f64::consts::PI;

use parity_core::algorithms::{grover_diffusion, multi_controlled_phase};
use parity_core::scheduler::resource_stats;

fn main() -> parity_core::Result<()> {
    for m in 2..=5 {
        let (g, c) = multi_controlled_phase(m, PI)?;
        let s = resource_stats(&c);
        println!(
            "m={m}: {} physical qubits ({} beyond the problem data qubits), ancilla lines {:?}, depth {}, CNOT {}",
            g.layout.k(),
            g.ancilla_physical_qubits(),
            g.ancilla_line_lengths(),
            s.depth,
            s.cnot_count
        );
    }
    let (g, d) = grover_diffusion(4)?;
    println!("diffusion on 4 qubits: {:?}", resource_stats(&d));
    print!("{}", g.layout.render_ascii());
    Ok(())
}
