//! Cancellation and merge passes, ASAP layer scheduling and resource accounting.

use serde::Serialize;

use crate::circuit::{canonical_angle, Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Commutation whitelist used by the passes and the scheduler.
///
/// Gates on disjoint qubits commute, as do two RZ gates, an RZ with a CNOT whose control
/// it acts on, and two CNOTs that share only their control or only their target.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    if !a.qubits.iter().any(|q| b.qubits.contains(q)) {
        return true;
    }
    use GateKind::*;
    match (a.kind, b.kind) {
        (Rz, Rz) => true,
        (Rz, Cnot) => a.qubits[0] == b.qubits[0],
        (Cnot, Rz) => b.qubits[0] == a.qubits[0],
        (Cnot, Cnot) => {
            (a.qubits[0] == b.qubits[0]) != (a.qubits[1] == b.qubits[1])
                && a.qubits[0] != b.qubits[1]
                && a.qubits[1] != b.qubits[0]
        }
        _ => false,
    }
}

/// Removes pairs of identical CNOTs whose intermediate gates all commute with them.
pub fn cancel_adjacent_cnots(circuit: &Circuit) -> Circuit {
    let mut gates: Vec<Option<Gate>> = circuit.gates.iter().cloned().map(Some).collect();
    loop {
        let mut changed = false;
        for i in 0..gates.len() {
            let Some(g) = gates[i].clone() else { continue };
            if g.kind != GateKind::Cnot {
                continue;
            }
            for j in i + 1..gates.len() {
                let Some(h) = &gates[j] else { continue };
                if h.kind == GateKind::Cnot && h.qubits == g.qubits {
                    gates[i] = None;
                    gates[j] = None;
                    changed = true;
                    break;
                }
                if !commutes(&g, h) {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rebuild(circuit, gates)
}

/// Folds RZ gates on the same qubit together through commuting gates and drops zero rotations.
pub fn merge_rz(circuit: &Circuit) -> Circuit {
    let mut gates: Vec<Option<Gate>> = circuit.gates.iter().cloned().map(Some).collect();
    for i in 0..gates.len() {
        let Some(g) = gates[i].clone() else { continue };
        if g.kind != GateKind::Rz {
            continue;
        }
        let mut angle = g.angle();
        for slot in gates.iter_mut().skip(i + 1) {
            let Some(h) = slot.as_ref() else { continue };
            if h.kind == GateKind::Rz && h.qubits == g.qubits {
                angle += h.angle();
                *slot = None;
                continue;
            }
            if !commutes(&g, h) {
                break;
            }
        }
        let angle = canonical_angle(angle);
        gates[i] = (angle.abs() > 1e-12).then(|| Gate::rz(g.qubits[0], angle));
    }
    rebuild(circuit, gates)
}

/// Cancellation followed by RZ merging, repeated until nothing changes.
pub fn optimize(circuit: &Circuit) -> Circuit {
    let mut cur = circuit.clone();
    loop {
        let next = merge_rz(&cancel_adjacent_cnots(&cur));
        if next.gates.len() == cur.gates.len() {
            return next;
        }
        cur = next;
    }
}

fn rebuild(circuit: &Circuit, gates: Vec<Option<Gate>>) -> Circuit {
    Circuit {
        gates: gates.into_iter().flatten().collect(),
        ..circuit.clone()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResourceStats {
    pub qubits: usize,
    pub depth: usize,
    pub cnot_count: usize,
    pub cp_count: usize,
    pub single_qubit_count: usize,
    pub total_gates: usize,
}

impl ResourceStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }

    /// Aligned two-column table with the usual resource row labels.
    pub fn to_table(&self) -> String {
        let rows = [
            ("qubits", self.qubits),
            ("CNOT gates", self.cnot_count),
            ("CP gates", self.cp_count),
            ("single-qubit gates", self.single_qubit_count),
            ("total gates", self.total_gates),
            ("circuit depth", self.depth),
        ];
        let mut out = String::new();
        for (name, v) in rows {
            out.push_str(&format!("{name:<20}{v:>8}\n"));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ScheduledCircuit {
    pub layers: Vec<Vec<Gate>>,
    pub stats: ResourceStats,
    /// Layer index of each input gate, in input order.
    pub assignment: Vec<usize>,
}

impl ScheduledCircuit {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// ASAP list scheduling with unit-time gates.
///
/// Each gate is placed in the earliest layer after every earlier gate it shares a qubit
/// with and does not commute with, then moved later until its qubits are free. Earlier
/// gaps are filled when possible; ties follow input order.
pub fn schedule(circuit: &Circuit) -> ScheduledCircuit {
    let width = circuit.width();
    let mut history: Vec<Vec<usize>> = vec![Vec::new(); width];
    let mut busy: Vec<Vec<bool>> = Vec::new();
    let mut assignment = Vec::with_capacity(circuit.gates.len());
    for (idx, g) in circuit.gates.iter().enumerate() {
        let mut lb = 0;
        for &q in &g.qubits {
            for &j in &history[q] {
                if !commutes(g, &circuit.gates[j]) {
                    lb = lb.max(assignment[j] + 1);
                }
            }
        }
        let mut layer = lb;
        loop {
            if layer == busy.len() {
                busy.push(vec![false; width]);
            }
            if g.qubits.iter().all(|&q| !busy[layer][q]) {
                break;
            }
            layer += 1;
        }
        for &q in &g.qubits {
            busy[layer][q] = true;
            history[q].push(idx);
        }
        assignment.push(layer);
    }
    let depth = assignment.iter().map(|l| l + 1).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth];
    for (g, &l) in circuit.gates.iter().zip(&assignment) {
        layers[l].push(g.clone());
    }
    let stats = count(circuit, depth);
    ScheduledCircuit { layers, stats, assignment }
}

fn count(circuit: &Circuit, depth: usize) -> ResourceStats {
    let cnot_count = circuit.gates.iter().filter(|g| g.kind == GateKind::Cnot).count();
    let cp_count = circuit.gates.iter().filter(|g| g.kind == GateKind::Cp).count();
    let single_qubit_count = circuit.gates.len() - cnot_count - cp_count;
    ResourceStats {
        qubits: circuit.width(),
        depth,
        cnot_count,
        cp_count,
        single_qubit_count,
        total_gates: circuit.gates.len(),
    }
}

/// Exact gate counts plus the scheduled depth.
pub fn resource_stats(circuit: &Circuit) -> ResourceStats {
    schedule(circuit).stats
}

/// Closed-form depth of a logical CNOT on an `n`-qubit LHZ layout.
///
/// `c` and `t` are 0-based; the formula is evaluated with 1-based indices
/// (see `docs/CONVENTIONS.md`):
/// `2(ceil(n/2) + floor(max(|n/2-c|, |n/2-t|)) + k) + 3`, with `k = 1` when the two
/// distances are equal and 0 otherwise.
pub fn cnot_depth_formula(n: usize, c: usize, t: usize) -> Result<usize> {
    if c == t {
        return Err(Error::InvalidArgument("control and target coincide".into()));
    }
    if c >= n || t >= n {
        return Err(Error::InvalidArgument(format!("indices ({c},{t}) out of range for n={n}")));
    }
    let half = n as f64 / 2.0;
    let dc = (half - (c + 1) as f64).abs();
    let dt = (half - (t + 1) as f64).abs();
    let k = usize::from(dc == dt);
    Ok(2 * (n.div_ceil(2) + dc.max(dt).floor() as usize + k) + 3)
}

/// Single-qubit unitary depth bound `2 ceil(n/2) + 1`.
pub fn unitary_depth_formula(n: usize) -> usize {
    2 * n.div_ceil(2) + 1
}
