//! The logical gate set on a 5-qubit LHZ layout: rotations, CPhase, CNOT, CCP and Toffoli.

use parity_core::layouts::lhz_layout;
use parity_core::scheduler::{cnot_depth_formula, resource_stats, unitary_depth_formula};
use parity_core::synth::{synth_cnot, synth_cphase, synth_rx, synth_toffoli, synth_unitary};

fn main() -> parity_core::Result<()> {
    let n = 5;
    let l = lhz_layout(n)?;
    println!("RX(0.3) on qubit 2: {:?}", resource_stats(&synth_rx(&l, 2, 0.3, None)?));
    let u = resource_stats(&synth_unitary(&l, 2, 0.1, 0.2, 0.3, None)?);
    println!("unitary on qubit 2: depth {} (2*ceil(n/2)+1 = {})", u.depth, unitary_depth_formula(n));
    println!("CPhase(0,3): {:?}", resource_stats(&synth_cphase(&l, 0, 3, 0.5)?));
    for (c, t) in [(0, 1), (1, 3), (0, 4)] {
        let s = resource_stats(&synth_cnot(&l, c, t, None)?);
        println!(
            "CNOT {c}->{t}: {} CNOT, {} rotations, depth {} (closed form {})",
            s.cnot_count,
            s.single_qubit_count,
            s.depth,
            cnot_depth_formula(n, c, t)?
        );
    }
    println!("Toffoli(1,2;3): {:?}", resource_stats(&synth_toffoli(&l, 1, 2, 3)?));
    Ok(())
}
