//! Writes a binary state dump of an encoded state and reads it back.

use parity_core::algorithms::qft_parity;
use parity_core::simulator::{decode, StateVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (layout, circuit) = qft_parity(3)?;
    let mut state = StateVector::zero(layout.qubits.clone())?;
    state.apply(&circuit)?;

    let path = std::env::temp_dir().join("parity-qft3.bin");
    let mut file = std::fs::File::create(&path)?;
    state.write_dump(&mut file)?;
    let back = StateVector::read_dump(&mut std::fs::File::open(&path)?)?;
    println!("wrote {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());
    assert_eq!(back.amplitudes, state.amplitudes);

    // The dump carries no labels; decoding needs the layout's register.
    let labelled = StateVector::from_amplitudes(layout.qubits.clone(), back.amplitudes)?;
    let logical = decode(&layout, &labelled)?;
    for (i, a) in logical.amplitudes.iter().enumerate() {
        println!("|{i:03b}> {:+.4}{:+.4}i", a.re, a.im);
    }
    Ok(())
}
