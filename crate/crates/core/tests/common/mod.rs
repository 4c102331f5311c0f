#![allow(dead_code)]

use num_complex::Complex64;
use parity_core::circuit::{Circuit, Gate, Space};
use parity_core::layout::ParityLayout;
use parity_core::simulator::{encode, logical_register, StateVector};
use parity_core::QubitLabel;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const TOL: f64 = 1e-10;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn logical(n: usize, gates: &[Gate]) -> Circuit {
    let mut c = Circuit::logical(n);
    for g in gates {
        c.push(g.clone());
    }
    c
}

/// Random circuit over `k` plain qubits drawn from the full gate alphabet.
pub fn random_circuit(rng: &mut impl Rng, k: usize, len: usize) -> Circuit {
    let mut c = Circuit::new(Space::Physical, (0..k).map(QubitLabel::data).collect());
    for _ in 0..len {
        let a = rng.random_range(0..k);
        let mut b = rng.random_range(0..k);
        while b == a && k > 1 {
            b = rng.random_range(0..k);
        }
        let angle = [std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2, rng.random_range(-3.0..3.0)]
            [rng.random_range(0..3)];
        let g = match rng.random_range(0..10) {
            0..=3 if k > 1 => Gate::cnot(a, b),
            4..=6 => Gate::rz(a, angle),
            7 => Gate::rx(a, angle),
            8 => Gate::h(a),
            _ if k > 1 => Gate::cp(a, b, angle),
            _ => Gate::x(a),
        };
        c.push(g);
    }
    c
}

/// Phase picked up by an encoded logical basis state, or `None` if it is not an eigenstate.
pub fn basis_phase(layout: &ParityLayout, physical: &Circuit, bits: u64) -> Option<f64> {
    let input = encode(layout, &StateVector::basis(logical_register(layout.n_logical), bits).unwrap()).unwrap();
    let mut out = input.clone();
    out.apply(physical).unwrap();
    let o = input.inner(&out);
    ((o.norm() - 1.0).abs() < TOL).then(|| o.arg())
}

/// Angle difference reduced to (-pi, pi].
pub fn wrap(a: f64) -> f64 {
    let t = std::f64::consts::TAU;
    let r = a.rem_euclid(t);
    if r > std::f64::consts::PI {
        r - t
    } else {
        r
    }
}

/// Full unitary of a small circuit, column `j` = image of basis state `j`.
pub fn unitary(c: &Circuit) -> Vec<Vec<Complex64>> {
    (0..1u64 << c.width())
        .map(|j| {
            let mut s = StateVector::basis(c.register.clone(), j).unwrap();
            s.apply(c).unwrap();
            s.amplitudes
        })
        .collect()
}

/// `|tr(A^dagger B)| / dim`: 1 iff equal up to a global phase.
pub fn unitary_overlap(a: &Circuit, b: &Circuit) -> f64 {
    let (ua, ub) = (unitary(a), unitary(b));
    let dim = ua.len() as f64;
    let tr: Complex64 = ua
        .iter()
        .zip(&ub)
        .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x.conj() * y).sum::<Complex64>())
        .sum();
    tr.norm() / dim
}
