//! A hand-placed layout with a three-body parity qubit, used for a native ZZZ rotation.

use parity_core::layouts::custom_layout;
use parity_core::simulator::verify_equivalence;
use parity_core::synth::synth_higher_order_rz;
use parity_core::{Circuit, Gate, QubitLabel};

fn main() -> parity_core::Result<()> {
    let q = |v: &[usize]| QubitLabel::new(v.iter().copied());
    let layout = custom_layout(
        3,
        vec![q(&[0])?, q(&[0, 1])?, q(&[1])?, q(&[0, 1, 2])?, q(&[1, 2])?, q(&[2])?],
        vec![(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (3, 1)],
        None,
    )?;
    print!("{}", layout.render_ascii());
    println!("{} derived constraints", layout.constraints.len());

    let phi = 0.4;
    let physical = synth_higher_order_rz(&layout, &[0, 1, 2], phi)?;
    let mut logical = Circuit::logical(3);
    for g in [Gate::cnot(0, 2), Gate::cnot(1, 2), Gate::rz(2, -2.0 * phi), Gate::cnot(1, 2), Gate::cnot(0, 2)] {
        logical.push(g);
    }
    println!("exp(i phi Z0 Z1 Z2) as {} physical gate(s), fidelity {:.12}", physical.len(), verify_equivalence(&logical, &physical, &layout)?);

    // Placing a qubit off its line is reported with the offending line.
    let broken = custom_layout(2, vec![q(&[0])?, q(&[0, 1])?, q(&[1])?], vec![(0, 0), (3, 0), (1, 0)], None);
    println!("broken layout: {}", broken.unwrap_err());
    Ok(())
}
