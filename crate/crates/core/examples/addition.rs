//! Draper addition on the three-block layout: adds two 3-bit numbers in the parity encoding.

use parity_core::algorithms::{draper_addition, draper_core};
use parity_core::scheduler::resource_stats;
use parity_core::simulator::{decode, encode, logical_register, StateVector};

fn main() -> parity_core::Result<()> {
    let n = 3;
    let (layout, circuit) = draper_addition(n, false)?;
    let (_, core) = draper_core(n, false)?;
    println!("core step: {:?}", resource_stats(&core));

    // Qubits 0..n hold a and n..2n hold b, most significant bit first.
    let (a, b) = (5usize, 6usize);
    let bits = |v: usize, offset: usize| (0..n).map(|i| (v >> (n - 1 - i) & 1) << (offset + i)).sum::<usize>();
    let input = StateVector::basis(logical_register(2 * n), (bits(a, 0) | bits(b, n)) as u64)?;
    let mut state = encode(&layout, &input)?;
    state.apply(&circuit)?;
    let out = decode(&layout, &state)?;
    let (index, _) = out
        .amplitudes
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .unwrap();
    let sum = (0..n).fold(0, |v, i| 2 * v + (index >> i & 1));
    println!("{a} + {b} mod {} = {sum}", 1 << n);
    Ok(())
}
