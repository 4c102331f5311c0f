//! Builders for the concrete layouts: full LHZ triangle, reduced layouts,
//! the two-register addition layout and the multi-control (Grover) layout.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::label::QubitLabel;
use crate::layout::{local_constraints, path_order, validate_layout, Constraint, ParityLayout, Pos};

/// Grid position of a one- or two-body label in the triangular LHZ embedding.
///
/// Parity qubit `(i,j)` sits at `x = j, y = i`; data qubit `(i)` on the diagonal at `(i,i)`.
/// Line `i` is the column above `(i)` followed by the row to its right, so lines `i` and
/// `j` meet only at `(i,j)`.
pub fn lhz_position(label: &QubitLabel) -> Option<Pos> {
    match label.indices() {
        [i] => Some((*i as i64, *i as i64)),
        [i, j] => Some((*j as i64, *i as i64)),
        _ => None,
    }
}

/// Logical line of `i` in the triangular embedding, restricted to labels kept by `keep`.
fn lhz_line(n: usize, i: usize, keep: &dyn Fn(&QubitLabel) -> bool) -> Vec<QubitLabel> {
    (0..n).map(|p| QubitLabel::pair(p, i)).filter(|q| keep(q)).collect()
}

/// Full LHZ layout: `n` data qubits plus all `n(n-1)/2` two-body parity qubits.
pub fn lhz_layout(n: usize) -> Result<ParityLayout> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("LHZ layout needs n >= 2, got {n}")));
    }
    let mut qubits = Vec::new();
    for i in 0..n {
        qubits.push(QubitLabel::data(i));
        for j in i + 1..n {
            qubits.push(QubitLabel::pair(i, j));
        }
    }
    let positions = qubits.iter().map(|q| lhz_position(q).unwrap()).collect();
    let p = QubitLabel::pair;
    let mut constraints = Vec::new();
    for i in 0..n - 1 {
        constraints.push(Constraint::new(vec![p(i, i), p(i, i + 1), p(i + 1, i + 1)]));
    }
    for x in 1..n - 1 {
        constraints.push(Constraint::new(vec![p(x - 1, x), p(x - 1, x + 1), p(x, x + 1)]));
    }
    for x in 2..n - 1 {
        for y in 0..x - 1 {
            constraints.push(Constraint::new(vec![p(y, x), p(y, x + 1), p(y + 1, x), p(y + 1, x + 1)]));
        }
    }
    let lines = (0..n).map(|i| lhz_line(n, i, &|_| true)).collect();
    Ok(ParityLayout::new(n, qubits, positions, constraints, lines))
}

/// Layout with the given qubit labels at explicit positions.
///
/// Logical lines are ordered along the grid; when `constraints` is `None` an independent
/// set of plaquette-local constraints is derived from the geometry.
pub fn custom_layout(
    n: usize,
    qubits: Vec<QubitLabel>,
    positions: Vec<Pos>,
    constraints: Option<Vec<Constraint>>,
) -> Result<ParityLayout> {
    if qubits.len() != positions.len() {
        return Err(Error::InvalidLayout(format!(
            "{} positions for {} qubits",
            positions.len(),
            qubits.len()
        )));
    }
    let at: HashMap<QubitLabel, Pos> = qubits.iter().cloned().zip(positions.iter().copied()).collect();
    let lines = (0..n)
        .map(|i| {
            let members: Vec<QubitLabel> = qubits.iter().filter(|q| q.contains(i)).cloned().collect();
            path_order(&members, &|q| at[q]).unwrap_or(members)
        })
        .collect();
    let constraints = constraints.unwrap_or_else(|| local_constraints(&qubits, &positions));
    let layout = ParityLayout::new(n, qubits, positions, constraints, lines);
    let violations = validate_layout(&layout);
    if violations.is_empty() {
        Ok(layout)
    } else {
        let list: Vec<String> = violations.into_iter().map(|v| v.0).collect();
        Err(Error::InvalidLayout(list.join("; ")))
    }
}

/// Data qubits plus only the requested parity qubits, placed in the LHZ embedding.
///
/// Labels must be one- or two-body. Without explicit `constraints` a local set is derived.
pub fn reduced_layout(
    n: usize,
    required: &[QubitLabel],
    constraints: Option<Vec<Constraint>>,
) -> Result<ParityLayout> {
    let mut labels: BTreeSet<QubitLabel> = (0..n).map(QubitLabel::data).collect();
    for q in required {
        if q.indices().iter().any(|&i| i >= n) {
            return Err(Error::InvalidLayout(format!("label {q} exceeds {n} logical qubits")));
        }
        labels.insert(q.clone());
    }
    let mut qubits = Vec::new();
    for i in 0..n {
        for j in i..n {
            let q = QubitLabel::pair(i, j);
            if labels.remove(&q) {
                qubits.push(q);
            }
        }
    }
    if let Some(q) = labels.into_iter().next() {
        return Err(Error::InvalidLayout(format!(
            "label {q} has no place in the triangular embedding; build a custom layout with positions"
        )));
    }
    let positions = qubits.iter().map(|q| lhz_position(q).unwrap()).collect();
    custom_layout(n, qubits, positions, constraints)
}

/// Labels kept for a graph-state layout: for each edge `(a,b)` every pair inside `a..=b`.
///
/// This keeps each line contiguous from its data qubit and the constraint set complete;
/// pairs that are not edges act as ancillas.
pub fn graph_state_labels(edges: &[(usize, usize)]) -> Vec<QubitLabel> {
    let mut keep = BTreeSet::new();
    for &(a, b) in edges {
        let (a, b) = (a.min(b), a.max(b));
        for i in a..=b {
            for j in i + 1..=b {
                keep.insert(QubitLabel::pair(i, j));
            }
        }
    }
    keep.into_iter().collect()
}

pub fn graph_state_layout(n: usize, edges: &[(usize, usize)]) -> Result<ParityLayout> {
    reduced_layout(n, &graph_state_labels(edges), None)
}

/// Logical index of qubit `i` of register R1 (`a_i`) in an addition layout.
pub fn addition_a(_n: usize, i: usize) -> usize {
    i
}

/// Logical index of qubit `q` of register R2 (`b_q`) in an addition layout.
pub fn addition_b(n: usize, q: usize) -> usize {
    n + q
}

/// Layout for adding register R2 into register R1.
///
/// R1 is a full LHZ triangle whose logical lines continue upward through an
/// inter-register block holding `(a_i, b_q)` for `q >= i`. The R2 lines run as rows
/// through that block and end in the R2 data qubits (`r2_internal = false`, `n(n+2)`
/// qubits) or continue into a mirrored LHZ triangle for R2 (`true`, `3n(n+1)/2` qubits).
pub fn addition_layout(n: usize, r2_internal: bool) -> Result<ParityLayout> {
    if n < 1 {
        return Err(Error::InvalidArgument("addition layout needs n >= 1".into()));
    }
    let a = |i: usize| addition_a(n, i);
    let b = |q: usize| addition_b(n, q);
    let ni = n as i64;
    let mut qubits = Vec::new();
    let mut positions = Vec::new();
    let mut put = |q: QubitLabel, p: Pos| {
        qubits.push(q);
        positions.push(p);
    };
    for i in 0..n {
        put(QubitLabel::data(a(i)), (i as i64, i as i64));
        for j in i + 1..n {
            put(QubitLabel::pair(a(i), a(j)), (j as i64, i as i64));
        }
    }
    for q in 0..n {
        for i in 0..=q {
            put(QubitLabel::pair(a(i), b(q)), (i as i64, -(ni - q as i64)));
        }
    }
    if r2_internal {
        for r in 0..n {
            put(QubitLabel::data(b(r)), (r as i64 - ni, r as i64 - ni));
            for s in r + 1..n {
                put(QubitLabel::pair(b(r), b(s)), (s as i64 - ni, r as i64 - ni));
            }
        }
    } else {
        for q in 0..n {
            put(QubitLabel::data(b(q)), (-1, -(ni - q as i64)));
        }
    }
    custom_layout(2 * n, qubits, positions, None)
}

/// Multi-control layout together with its register bookkeeping.
#[derive(Clone, Debug)]
pub struct GroverLayout {
    pub m: usize,
    pub layout: ParityLayout,
}

impl GroverLayout {
    /// Logical index of problem qubit `a` (`0..=m`); the last one is the phase target.
    pub fn problem(&self, a: usize) -> usize {
        a
    }

    /// Logical index of ancilla `a` (`1..m`); ancilla `a` holds the AND of problem qubits `0..=a`.
    pub fn ancilla(&self, a: usize) -> usize {
        self.m + a
    }

    pub fn ancillas(&self) -> Vec<usize> {
        (1..self.m).map(|a| self.ancilla(a)).collect()
    }

    /// Physical qubits other than the `m+1` problem data qubits.
    pub fn ancilla_physical_qubits(&self) -> usize {
        self.layout.k() - (self.m + 1)
    }

    /// Lengths of the ancilla logical lines, in ancilla order.
    pub fn ancilla_line_lengths(&self) -> Vec<usize> {
        self.ancillas().iter().map(|&k| self.layout.line(k).len()).collect()
    }
}

/// Layout for an `m`-controlled phase on `m+1` problem qubits with `m-1` ancillas.
///
/// Stage `a` of the Toffoli ladder computes ancilla `a` from ancilla `a-1` (problem
/// qubit 0 for the first stage) and problem qubit `a`; it owns the data qubits of both
/// new logical qubits and the three parity qubits the doubly-controlled phase needs.
/// Stages repeat along a diagonal staircase, so all constraints stay plaquette-local
/// and every ancilla line has at most five qubits. The physical CP of each stage acts
/// across a plaquette diagonal between an ancilla data qubit and a problem parity qubit.
pub fn grover_layout(m: usize) -> Result<GroverLayout> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("multi-control layout needs m >= 2, got {m}")));
    }
    let q = |a: usize| a;
    let k = |a: usize| if a == 0 { 0 } else { m + a };
    let mut qubits = vec![QubitLabel::data(q(0))];
    let mut positions: Vec<Pos> = vec![(1, 1)];
    for a in 1..m {
        let (sx, sy) = (a as i64, 2 * a as i64);
        let stage = [
            (QubitLabel::data(q(a)), (2, 1)),
            (QubitLabel::data(k(a)), (1, 0)),
            (QubitLabel::pair(q(a), k(a - 1)), (0, 1)),
            (QubitLabel::pair(k(a - 1), k(a)), (0, 0)),
            (QubitLabel::pair(q(a), k(a)), (1, 1)),
        ];
        for (label, (dx, dy)) in stage {
            qubits.push(label);
            positions.push((sx + dx, sy + dy));
        }
    }
    let mi = m as i64;
    qubits.push(QubitLabel::data(q(m)));
    positions.push((mi + 1, 2 * mi));
    qubits.push(QubitLabel::pair(q(m), k(m - 1)));
    positions.push((mi, 2 * mi));
    let layout = custom_layout(2 * m, qubits, positions, None)?;
    Ok(GroverLayout { m, layout })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lhz_small() {
        let l = lhz_layout(2).unwrap();
        assert_eq!(l.k(), 3);
        assert_eq!(l.constraints.len(), 1);
        assert!(validate_layout(&l).is_empty());
        assert!(lhz_layout(1).is_err());
    }

    #[test]
    fn lhz_constraints_complete() {
        for n in 2..=8 {
            let l = lhz_layout(n).unwrap();
            assert!(validate_layout(&l).is_empty(), "n={n}: {:?}", validate_layout(&l));
            assert_eq!(l.constraints.len(), n * (n - 1) / 2);
            assert_eq!(l.constraint_rank_deficit(), 0);
        }
    }

    #[test]
    fn reduced_path_graph() {
        let l = reduced_layout(3, &[QubitLabel::pair(0, 1), QubitLabel::pair(1, 2)], None).unwrap();
        assert_eq!(l.k(), 5);
        assert_eq!(l.constraint_rank_deficit(), 0);
        let l = reduced_layout(3, &[], None).unwrap();
        assert_eq!(l.k(), 3);
    }

    #[test]
    fn addition_counts() {
        for n in 1..=5 {
            let l = addition_layout(n, false).unwrap();
            assert_eq!(l.k(), n * (n + 2));
            assert_eq!(l.constraint_rank_deficit(), 0);
            let l = addition_layout(n, true).unwrap();
            assert_eq!(l.k(), 3 * n * (n + 1) / 2);
            assert_eq!(l.constraint_rank_deficit(), 0);
        }
    }

    #[test]
    fn grover_builds() {
        for m in 2..=6 {
            let g = grover_layout(m).unwrap();
            assert_eq!(g.layout.constraint_rank_deficit(), 0);
            assert!(g.ancilla_line_lengths().iter().all(|&l| l <= 5));
        }
    }
}
