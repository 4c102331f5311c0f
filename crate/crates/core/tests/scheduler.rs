mod common;

use common::*;
use parity_core::algorithms::{qaoa_driver, qft_parity};
use parity_core::layouts::lhz_layout;
use parity_core::scheduler::*;
use parity_core::{Circuit, Gate, GateKind};
use proptest::prelude::*;

#[test]
fn commutation_whitelist() {
    assert!(commutes(&Gate::rz(0, 0.1), &Gate::rz(0, 0.2)));
    assert!(commutes(&Gate::rz(0, 0.1), &Gate::cnot(0, 1)));
    assert!(!commutes(&Gate::rz(1, 0.1), &Gate::cnot(0, 1)));
    assert!(commutes(&Gate::cnot(0, 1), &Gate::cnot(0, 2)));
    assert!(commutes(&Gate::cnot(0, 2), &Gate::cnot(1, 2)));
    assert!(!commutes(&Gate::cnot(0, 1), &Gate::cnot(1, 2)));
    assert!(!commutes(&Gate::rx(0, 0.1), &Gate::rz(0, 0.1)));
    assert!(commutes(&Gate::h(3), &Gate::cnot(0, 1)));
}

#[test]
fn whitelisted_pairs_really_commute() {
    let gates = [
        Gate::rz(0, 0.3),
        Gate::rz(1, -0.8),
        Gate::rx(0, 0.5),
        Gate::h(1),
        Gate::x(2),
        Gate::cnot(0, 1),
        Gate::cnot(1, 0),
        Gate::cnot(0, 2),
        Gate::cnot(2, 1),
        Gate::cnot(1, 2),
        Gate::cp(0, 1, 0.7),
    ];
    for a in &gates {
        for b in &gates {
            if commutes(a, b) {
                let ab = logical(3, &[a.clone(), b.clone()]);
                let ba = logical(3, &[b.clone(), a.clone()]);
                assert!(unitary_overlap(&ab, &ba) > 1.0 - TOL, "{a:?} / {b:?}");
            }
        }
    }
}

#[test]
fn cancellation_examples() {
    let c = logical(2, &[Gate::cnot(0, 1), Gate::cnot(0, 1)]);
    assert!(cancel_adjacent_cnots(&c).is_empty());
    let c = logical(3, &[Gate::cnot(0, 1), Gate::rz(0, 0.2), Gate::cnot(0, 2), Gate::cnot(0, 1)]);
    assert_eq!(cancel_adjacent_cnots(&c).gates, vec![Gate::rz(0, 0.2), Gate::cnot(0, 2)]);
    let c = logical(2, &[Gate::cnot(0, 1), Gate::rz(1, 0.2), Gate::cnot(0, 1)]);
    assert_eq!(cancel_adjacent_cnots(&c).len(), 3);
    let c = logical(2, &[Gate::cnot(0, 1), Gate::cnot(1, 0)]);
    assert_eq!(cancel_adjacent_cnots(&c).len(), 2);
}

#[test]
fn merge_examples() {
    let c = logical(2, &[Gate::rz(0, 0.25), Gate::cnot(0, 1), Gate::rz(0, 0.5)]);
    assert_eq!(merge_rz(&c).gates, vec![Gate::rz(0, 0.75), Gate::cnot(0, 1)]);
    let c = logical(1, &[Gate::rz(0, 0.25), Gate::rz(0, -0.25)]);
    assert!(merge_rz(&c).is_empty());
    let c = logical(1, &[Gate::rz(0, 0.25), Gate::h(0), Gate::rz(0, 0.5)]);
    assert_eq!(merge_rz(&c).len(), 3);
}

#[test]
fn schedule_examples() {
    let c = logical(3, &[Gate::h(0), Gate::h(1), Gate::cnot(0, 1), Gate::rz(2, 0.1)]);
    let s = schedule(&c);
    assert_eq!(s.depth(), 2);
    assert_eq!(s.assignment, vec![0, 0, 1, 0]);
    assert_eq!(s.stats.cnot_count, 1);
    assert_eq!(s.stats.single_qubit_count, 3);
    assert_eq!(schedule(&Circuit::logical(2)).depth(), 0);
    // Commuting chains on a shared control still serialize on that qubit.
    let c = logical(3, &[Gate::cnot(0, 1), Gate::cnot(0, 2)]);
    assert_eq!(schedule(&c).depth(), 2);
}

#[test]
fn stats_renderings() {
    let s = resource_stats(&logical(2, &[Gate::cnot(0, 1), Gate::cp(0, 1, 0.1), Gate::h(0)]));
    let t = s.to_table();
    for label in ["qubits", "CNOT gates", "CP gates", "single-qubit gates", "total gates", "circuit depth"] {
        assert!(t.contains(label));
    }
    let v: serde_json::Value = serde_json::from_str(&s.to_json()).unwrap();
    assert_eq!(v["cnot_count"], 1);
    assert_eq!(v["cp_count"], 1);
    assert_eq!(v["total_gates"], 3);
    assert_eq!(v["depth"], 3);
}

#[test]
fn depth_formulas() {
    assert_eq!(unitary_depth_formula(4), 5);
    assert_eq!(unitary_depth_formula(5), 7);
    // Hand evaluation, 1-based: n=4, c=1, t=3 gives |2-1| = |2-3|, k=1: 2(2+1+1)+3.
    assert_eq!(cnot_depth_formula(4, 0, 2).unwrap(), 11);
    assert!(cnot_depth_formula(4, 1, 1).is_err());
    assert!(cnot_depth_formula(4, 0, 4).is_err());
}

#[test]
fn driver_and_qft_depths() {
    for n in 3..=9 {
        let l = lhz_layout(n).unwrap();
        let d = qaoa_driver(&l, 0.4).unwrap();
        assert_eq!(schedule(&d).depth(), 7 * n - 8, "driver n={n}");
        let (_, q) = qft_parity(n).unwrap();
        assert_eq!(schedule(&q).depth(), 8 * n - 9, "qft n={n}");
    }
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    let gate = (0..6usize, 0..4usize, 1..4usize, -3.0f64..3.0).prop_map(|(k, a, off, th)| {
        let b = (a + off) % 4;
        match k {
            0 => Gate::rz(a, th),
            1 => Gate::rx(a, th),
            2 => Gate::h(a),
            3 => Gate::cnot(a, b),
            4 => Gate::cnot(b, a),
            _ => Gate::rz(a, [0.0, th, -th][off % 3]),
        }
    });
    prop::collection::vec(gate, 0..40).prop_map(|gates| logical(4, &gates))
}

proptest! {
    #[test]
    fn passes_preserve_the_unitary(c in arb_circuit()) {
        for out in [cancel_adjacent_cnots(&c), merge_rz(&c), optimize(&c)] {
            prop_assert!(out.len() <= c.len());
            prop_assert!(unitary_overlap(&c, &out) > 1.0 - 1e-9);
        }
        let o = optimize(&c);
        prop_assert_eq!(optimize(&o).gates, o.gates.clone());
        prop_assert!(o.gates.iter().all(|g| g.kind != GateKind::Rz || g.angle().abs() > 1e-12));
    }

    #[test]
    fn layers_are_disjoint_and_replay_the_circuit(c in arb_circuit()) {
        let s = schedule(&c);
        let mut replay = Vec::new();
        for layer in &s.layers {
            let mut seen = std::collections::BTreeSet::new();
            for g in layer {
                for &q in &g.qubits {
                    prop_assert!(seen.insert(q), "qubit {} twice in a layer", q);
                }
            }
            replay.extend(layer.iter().cloned());
        }
        prop_assert_eq!(replay.len(), c.len());
        prop_assert!(unitary_overlap(&c, &logical(4, &replay)) > 1.0 - 1e-9);
        prop_assert_eq!(s.stats.total_gates, c.len());
    }
}
