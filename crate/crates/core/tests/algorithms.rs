mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64;
use parity_core::algorithms::*;
use parity_core::layouts::{graph_state_layout, lhz_layout};
use parity_core::scheduler::{resource_stats, schedule};
use parity_core::simulator::*;
use parity_core::{Circuit, ParityLayout, QubitLabel};
use rand::Rng;

fn assert_equiv(name: &str, logical: &Circuit, physical: &Circuit, layout: &ParityLayout, fixed_zero: Vec<usize>) {
    let eq = verify_equivalence_on(logical, physical, layout, &InputSpace { fixed_zero, random_states: 3, seed: 3 }).unwrap();
    assert!(eq.fidelity >= 1.0 - TOL, "{name}: fidelity {}", eq.fidelity);
    assert!(eq.stabilizer_deviation < TOL, "{name}: deviation {}", eq.stabilizer_deviation);
}

fn bit(s: usize, q: usize) -> usize {
    s >> q & 1
}

/// Value of a register stored most significant bit first on logical qubits `offset..offset+n`.
fn msb_value(s: usize, offset: usize, n: usize) -> usize {
    (0..n).fold(0, |v, i| 2 * v + bit(s, offset + i))
}

#[test]
fn logical_qft_matches_the_dft() {
    // Without the final swaps, input x is read MSB-first while output y is little-endian.
    for n in 1..=5 {
        let dim = 1usize << n;
        let c = qft_logical(n).unwrap();
        for s in 0..dim {
            let x = msb_value(s, 0, n);
            let mut st = StateVector::basis(logical_register(n), s as u64).unwrap();
            st.apply(&c).unwrap();
            for (y, a) in st.amplitudes.iter().enumerate() {
                let want = Complex64::from_polar(1.0 / (dim as f64).sqrt(), 2.0 * PI * (x * y) as f64 / dim as f64);
                assert!((a - want).norm() < TOL, "n={n} x={x} y={y}");
            }
        }
    }
}

#[test]
fn parity_qft_is_equivalent() {
    for n in 2..=4 {
        let (l, c) = qft_parity(n).unwrap();
        assert_equiv(&format!("qft {n}"), &qft_logical(n).unwrap(), &c, &l, vec![]);
        let (_, raw) = qft_parity_with(n, false).unwrap();
        assert_equiv(&format!("raw qft {n}"), &qft_logical(n).unwrap(), &raw, &l, vec![]);
        assert!(raw.len() >= c.len());
    }
}

#[test]
fn parity_qft_resources() {
    for n in 3..=10 {
        let (l, c) = qft_parity(n).unwrap();
        let s = resource_stats(&c);
        assert_eq!(l.k(), n * (n + 1) / 2);
        assert_eq!(s.cnot_count, 2 * n * (n - 1), "n={n}");
        assert_eq!(s.depth, 8 * n - 9, "n={n}");
    }
}

fn check_adder(n: usize, r2_internal: bool, inputs: impl Iterator<Item = usize>) {
    let (l, c) = draper_addition(n, r2_internal).unwrap();
    let mask = (1usize << n) - 1;
    for s in inputs {
        let (a, b) = (msb_value(s, 0, n), msb_value(s, n, n));
        let sum = (a + b) & mask;
        let mut want = s & !mask;
        for i in 0..n {
            want |= (sum >> (n - 1 - i) & 1) << i;
        }
        let input = encode(&l, &StateVector::basis(logical_register(2 * n), s as u64).unwrap()).unwrap();
        let expect = encode(&l, &StateVector::basis(logical_register(2 * n), want as u64).unwrap()).unwrap();
        let mut out = input;
        out.apply(&c).unwrap();
        let o = expect.inner(&out);
        assert!((o - Complex64::new(1.0, 0.0)).norm() < TOL, "n={n} a={a} b={b}: overlap {o}");
    }
}

#[test]
fn addition_is_exhaustively_correct() {
    for n in 1..=3 {
        check_adder(n, false, 0..1 << (2 * n));
    }
    for n in 1..=2 {
        check_adder(n, true, 0..1 << (2 * n));
    }
    check_adder(3, true, [0b000_000, 0b111_001, 0b101_011, 0b011_110].into_iter());
}

#[test]
fn addition_matches_its_logical_reference() {
    for n in 1..=2 {
        for r2 in [false, true] {
            let (l, c) = draper_addition(n, r2).unwrap();
            assert_equiv("add", &draper_addition_logical(n).unwrap(), &c, &l, vec![]);
        }
    }
}

#[test]
fn addition_core_is_one_layer_without_cnots() {
    for n in 1..=8 {
        let (l, core) = draper_core(n, false).unwrap();
        let s = resource_stats(&core);
        assert_eq!(l.k(), n * (n + 2));
        assert_eq!(s.cnot_count, 0);
        assert_eq!(s.depth, 1);
    }
}

#[test]
fn multi_controlled_phase_oracle() {
    // Encoded problem basis states with ancillas at zero pick up phi exactly when all
    // m+1 problem qubits are one, and the ancillas come back to zero.
    for (m, phi) in [(2, 0.8), (3, PI)] {
        let (g, c) = multi_controlled_phase(m, phi).unwrap();
        for s in 0..1u64 << (m + 1) {
            let expect = if s == (1 << (m + 1)) - 1 { phi } else { 0.0 };
            let got = basis_phase(&g.layout, &c, s).unwrap_or_else(|| panic!("m={m} s={s:b} left its basis state"));
            assert!(wrap(got - expect).abs() < TOL, "m={m} s={s:b}: {got}");
        }
        assert_equiv("mcp", &multi_controlled_phase_logical(m, phi).unwrap(), &c, &g.layout, vec![]);
    }
}

#[test]
fn multi_controlled_phase_depth_is_linear() {
    let depths: Vec<usize> = (2..=6).map(|m| schedule(&multi_controlled_phase(m, PI).unwrap().1).depth()).collect();
    let steps: Vec<usize> = depths.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.windows(2).all(|w| w[0] == w[1]), "depths {depths:?}");
}

#[test]
fn diffusion_is_the_reflection_about_the_uniform_state() {
    let n_total = 3;
    let (g, c) = grover_diffusion(n_total).unwrap();
    let dim = 1usize << n_total;
    let mut phase: Option<Complex64> = None;
    for s in 0..dim {
        let input = encode(&g.layout, &StateVector::basis(logical_register(g.layout.n_logical), s as u64).unwrap()).unwrap();
        let mut out = input;
        out.apply(&c).unwrap();
        let out = decode(&g.layout, &out).unwrap();
        for (t, a) in out.amplitudes.iter().enumerate() {
            if t >= dim {
                assert!(a.norm() < TOL, "ancilla left dirty");
                continue;
            }
            let want = 2.0 / dim as f64 - if s == t { 1.0 } else { 0.0 };
            if want.abs() > 1e-9 {
                let p = *phase.get_or_insert(a / want);
                assert!((a - p * want).norm() < TOL, "s={s} t={t}");
            } else {
                assert!(a.norm() < TOL);
            }
        }
    }
    assert!((phase.unwrap().norm() - 1.0).abs() < TOL);
    assert_equiv("diffusion", &grover_diffusion_logical(n_total).unwrap(), &c, &g.layout, vec![]);
}

/// Direct evaluation of one QAOA layer: diagonal cost phases, then `exp(-i beta X)` per qubit.
fn qaoa_oracle(n: usize, model: &IsingModel, beta: f64, gamma: f64, psi: &StateVector) -> StateVector {
    let mut amps = psi.amplitudes.clone();
    for (s, a) in amps.iter_mut().enumerate() {
        let energy: f64 = model
            .terms
            .iter()
            .map(|(t, j)| j * if t.iter().map(|&q| bit(s, q)).sum::<usize>() % 2 == 0 { 1.0 } else { -1.0 })
            .sum();
        *a *= Complex64::from_polar(1.0, -gamma * energy);
    }
    for q in 0..n {
        let (co, si) = (beta.cos(), beta.sin());
        for s in 0..amps.len() {
            if bit(s, q) == 0 {
                let (a0, a1) = (amps[s], amps[s | 1 << q]);
                amps[s] = co * a0 - Complex64::i() * si * a1;
                amps[s | 1 << q] = co * a1 - Complex64::i() * si * a0;
            }
        }
    }
    StateVector::from_amplitudes(psi.register.clone(), amps).unwrap()
}

#[test]
fn qaoa_layer() {
    let mut r = rng(21);
    for n in 2..=4 {
        let model = IsingModel::random_all_to_all(n, &mut r);
        let (beta, gamma) = (r.random_range(-1.5..1.5), r.random_range(-1.5..1.5));
        let params = QaoaParams::new(vec![beta], vec![gamma]).unwrap();
        let logical = qaoa_logical(n, &model, &params).unwrap();
        let psi = StateVector::random(logical_register(n), &mut r).unwrap();
        let mut got = psi.clone();
        got.apply(&logical).unwrap();
        let want = qaoa_oracle(n, &model, beta, gamma, &psi);
        assert!((state_fidelity(&want, &got) - 1.0).abs() < TOL, "logical n={n}");
        let l = lhz_layout(n).unwrap();
        let phys = qaoa_step(&model, &params, &l).unwrap();
        assert_equiv("qaoa", &logical, &phys, &l, vec![]);
    }
    let two = QaoaParams::new(vec![0.2, 0.5], vec![0.3, -0.1]).unwrap();
    let model = IsingModel::random_all_to_all(3, &mut r);
    let l = lhz_layout(3).unwrap();
    assert_equiv("qaoa p=2", &qaoa_logical(3, &model, &two).unwrap(), &qaoa_step(&model, &two, &l).unwrap(), &l, vec![]);
    assert!(QaoaParams::new(vec![0.1], vec![]).is_err());
    let three_body = IsingModel::new(vec![(vec![0, 1, 2], 1.0)]).unwrap();
    assert!(qaoa_step(&three_body, &two, &l).is_err());
}

#[test]
fn qaoa_driver_depth() {
    for n in 4..=8 {
        let d = qaoa_driver(&lhz_layout(n).unwrap(), 0.3).unwrap();
        assert_eq!(schedule(&d).depth(), 7 * n - 8);
    }
}

/// `X~_a prod_{b in N(a)} Z~_b` applied to an encoded state: X on line `a`, Z on data `(b)`.
fn encoded_stabilizer(l: &ParityLayout, g: &Graph, a: usize, psi: &StateVector) -> StateVector {
    let xmask: usize = l.line(a).iter().map(|q| 1 << l.index_of(q).unwrap()).sum();
    let zmask: usize = g.neighbors(a).iter().map(|&b| 1 << l.index_of(&QubitLabel::data(b)).unwrap()).sum();
    let mut out = psi.clone();
    for (s, amp) in psi.amplitudes.iter().enumerate() {
        let sign = if (s & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out.amplitudes[s ^ xmask] = amp * sign;
    }
    out
}

#[test]
fn graph_states_are_stabilized_and_match_the_oracle() {
    for n in 2..=4 {
        for g in Graph::all(n) {
            let (l, c) = graph_state_prep(&g, false).unwrap();
            let mut got = StateVector::zero(l.qubits.clone()).unwrap();
            got.apply(&c).unwrap();
            assert!(check_stabilizers(&l, &got) < TOL, "{:?}", g.edges);
            for a in 0..n {
                let k = encoded_stabilizer(&l, &g, a, &got);
                assert!((got.inner(&k) - Complex64::new(1.0, 0.0)).norm() < TOL, "{:?} K_{a}", g.edges);
            }
            let mut want = StateVector::zero(logical_register(n)).unwrap();
            want.apply(&graph_state_logical(&g)).unwrap();
            let want = encode(&l, &want).unwrap();
            assert!((state_fidelity(&want, &got) - 1.0).abs() < TOL);
        }
    }
}

#[test]
fn graph_state_decoding_leaves_ancillas_clean() {
    let g = Graph::new(4, vec![(0, 1), (1, 3), (2, 3)]).unwrap();
    let (l, c) = graph_state_prep(&g, true).unwrap();
    let mut got = StateVector::zero(l.qubits.clone()).unwrap();
    got.apply(&c).unwrap();
    let mut want = StateVector::zero(logical_register(4)).unwrap();
    want.apply(&graph_state_logical(&g)).unwrap();
    let data: Vec<usize> = (0..4).map(|i| l.index_of(&QubitLabel::data(i)).unwrap()).collect();
    for (s, a) in got.amplitudes.iter().enumerate() {
        let parity_bits = data.iter().fold(s, |acc, &q| acc & !(1 << q));
        if parity_bits != 0 {
            assert!(a.norm() < TOL);
        } else {
            let logical_idx = data.iter().enumerate().map(|(i, &q)| (s >> q & 1) << i).sum::<usize>();
            assert!((a - want.amplitudes[logical_idx]).norm() < TOL, "s={s}");
        }
    }
}

#[test]
fn graph_state_bounds() {
    let mut r = rng(33);
    for _ in 0..30 {
        let n = r.random_range(3..=8);
        let g = Graph::random(n, 0.5, &mut r);
        let (_, c) = graph_state_prep(&g, false).unwrap();
        let s = resource_stats(&c);
        assert!(s.depth <= n + 3, "n={n} {:?}: depth {}", g.edges, s.depth);
        assert!(s.cnot_count <= 2 * n * (n - 1));
        let l = graph_state_layout(n, &g.edges).unwrap();
        let enc = schedule(&encoding_circuit(&l).unwrap()).depth();
        assert!(enc <= n + 1);
    }
}

#[test]
fn encoder_writes_every_parity() {
    let l = lhz_layout(4).unwrap();
    let enc = encoding_circuit(&l).unwrap();
    let data: Vec<usize> = (0..4).map(|i| l.index_of(&QubitLabel::data(i)).unwrap()).collect();
    for bits in 0..16u64 {
        let input = data.iter().enumerate().map(|(i, &q)| (bits >> i & 1) << q).sum::<u64>();
        let mut s = StateVector::basis(l.qubits.clone(), input).unwrap();
        s.apply(&enc).unwrap();
        assert_eq!(s.amplitudes[l.encode_mask(bits) as usize], Complex64::new(1.0, 0.0));
    }
}

#[test]
fn argument_errors() {
    assert!(qft_parity(1).is_err());
    assert!(grover_diffusion(2).is_err());
    assert!(Graph::new(3, vec![(0, 0)]).is_err());
    assert!(Graph::new(3, vec![(0, 1), (1, 0)]).is_err());
    assert!(IsingModel::new(vec![(vec![1, 0], 1.0)]).is_err());
    assert_eq!(Graph::all(4).len(), 64);
}
