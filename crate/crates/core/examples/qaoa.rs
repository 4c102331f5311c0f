//! One QAOA layer for a random all-to-all Ising model on the LHZ layout.

use parity_core::algorithms::{qaoa_driver, qaoa_logical, qaoa_step, IsingModel, QaoaParams};
use parity_core::layouts::lhz_layout;
use parity_core::scheduler::{resource_stats, schedule};
use parity_core::simulator::verify_equivalence;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> parity_core::Result<()> {
    let mut rng = StdRng::seed_from_u64(7);
    let n = 4;
    let layout = lhz_layout(n)?;
    let model = IsingModel::random_all_to_all(n, &mut rng);
    let params = QaoaParams::new(vec![0.4], vec![0.9])?;
    let circuit = qaoa_step(&model, &params, &layout)?;
    println!("layer: {:?}", resource_stats(&circuit));
    let fidelity = verify_equivalence(&qaoa_logical(n, &model, &params)?, &circuit, &layout)?;
    println!("fidelity {fidelity:.12}");
    for n in 4..=8 {
        let d = schedule(&qaoa_driver(&lhz_layout(n)?, 0.4)?).depth();
        println!("driver depth n={n}: {d} (7n-8 = {})", 7 * n - 8);
    }
    Ok(())
}
