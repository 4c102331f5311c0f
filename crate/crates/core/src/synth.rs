//! Physical gate sequences for logical gates on a parity layout.
//!
//! Logical `Z`-type operators act on one physical qubit (the data qubit, or the parity
//! qubit of the index set). Logical `X`-type rotations exponentiate the product of `X`
//! over a whole logical line, built from a CNOT chain that gathers the line parity onto
//! a root qubit, a single-qubit rotation there, and the mirrored chain.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::circuit::{Circuit, Gate, GateKind, Space};
use crate::error::{Error, Result};
use crate::label::QubitLabel;
use crate::layout::ParityLayout;
use crate::scheduler::{optimize, schedule};

/// Empty physical circuit over the layout's qubits.
pub fn physical_circuit(layout: &ParityLayout) -> Circuit {
    Circuit::new(Space::Physical, layout.qubits.clone())
}

/// Split of logical line `index` at `root` into the two CNOT sub-chains.
///
/// Both segments are listed from the far end toward the root.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisPlan {
    pub index: usize,
    pub root: QubitLabel,
    pub segments: [Vec<QubitLabel>; 2],
}

impl SynthesisPlan {
    pub fn new(layout: &ParityLayout, index: usize, root: &QubitLabel) -> Result<Self> {
        let line = line_of(layout, index)?;
        let r = line
            .iter()
            .position(|q| q == root)
            .ok_or_else(|| Error::RootNotOnLine { index, root: root.clone() })?;
        Ok(SynthesisPlan {
            index,
            root: root.clone(),
            segments: [line[..r].to_vec(), line[r + 1..].iter().rev().cloned().collect()],
        })
    }

    /// The CNOT sandwich around `core`.
    ///
    /// Each segment fans in from its far end, controls always nearer the root. The two
    /// CNOTs onto the root share their control and run last, the right segment's first;
    /// the fan-out starts with those two and then unwinds both segments.
    pub fn gates(&self, layout: &ParityLayout, core: &[Gate]) -> Result<Vec<Gate>> {
        let root = layout.require(&self.root)?;
        let mut arms = Vec::new();
        for seg in &self.segments {
            let mut ids = seg.iter().map(|q| layout.require(q)).collect::<Result<Vec<_>>>()?;
            ids.push(root);
            arms.push(ids.windows(2).map(|w| Gate::cnot(w[1], w[0])).collect::<Vec<_>>());
        }
        let (left, right) = (&arms[0], &arms[1]);
        let body = |a: &Vec<Gate>| a[..a.len().saturating_sub(1)].to_vec();
        let roots: Vec<Gate> = right.last().into_iter().chain(left.last()).cloned().collect();
        let mut out = body(left);
        out.extend(body(right));
        out.extend(roots.iter().cloned());
        out.extend_from_slice(core);
        out.extend(roots);
        out.extend(body(right).into_iter().rev());
        out.extend(body(left).into_iter().rev());
        Ok(out)
    }
}

fn line_of(layout: &ParityLayout, i: usize) -> Result<&[QubitLabel]> {
    if i >= layout.n_logical {
        return Err(Error::MissingIndex(i));
    }
    layout.require(&QubitLabel::data(i))?;
    Ok(layout.line(i))
}

fn data(layout: &ParityLayout, i: usize) -> Result<usize> {
    if i >= layout.n_logical {
        return Err(Error::MissingIndex(i));
    }
    layout.require(&QubitLabel::data(i))
}

fn parity(layout: &ParityLayout, label: QubitLabel) -> Result<usize> {
    layout.index_of(&label).ok_or(Error::ParityUnavailable(label))
}

/// Middle member of logical line `i` (the lower one for even lengths).
pub fn middle_root(layout: &ParityLayout, i: usize) -> Result<QubitLabel> {
    let line = line_of(layout, i)?;
    Ok(line[(line.len() - 1) / 2].clone())
}

/// Logical `R_z(alpha)`: one physical RZ on the data qubit.
pub fn synth_rz(layout: &ParityLayout, i: usize, alpha: f64) -> Result<Circuit> {
    let q = data(layout, i)?;
    let mut c = physical_circuit(layout);
    if alpha != 0.0 {
        c.push(Gate::rz(q, alpha));
    }
    Ok(c)
}

/// Logical `R_x(alpha)` via the line chain; the root defaults to the line middle.
pub fn synth_rx(layout: &ParityLayout, i: usize, alpha: f64, root: Option<&QubitLabel>) -> Result<Circuit> {
    let root = match root {
        Some(r) => r.clone(),
        None => middle_root(layout, i)?,
    };
    let plan = SynthesisPlan::new(layout, i, &root)?;
    let mut c = physical_circuit(layout);
    if alpha != 0.0 {
        let r = layout.require(&root)?;
        c.gates = plan.gates(layout, &[Gate::rx(r, alpha)])?;
    }
    Ok(c)
}

fn unitary_with_root(layout: &ParityLayout, i: usize, angles: [f64; 3], root: &QubitLabel) -> Result<Circuit> {
    let [alpha, beta, gamma] = angles;
    let d = data(layout, i)?;
    let plan = SynthesisPlan::new(layout, i, root)?;
    let r = layout.require(root)?;
    let mut c = physical_circuit(layout);
    if beta == 0.0 {
        if alpha + gamma != 0.0 {
            c.push(Gate::rz(d, alpha + gamma));
        }
        return Ok(c);
    }
    let rz = |a: f64| (a != 0.0).then(|| Gate::rz(d, a));
    if r == d {
        let core: Vec<Gate> = rz(gamma).into_iter().chain([Gate::rx(d, beta)]).chain(rz(alpha)).collect();
        c.gates = plan.gates(layout, &core)?;
    } else {
        c.gates.extend(rz(gamma));
        c.gates.extend(plan.gates(layout, &[Gate::rx(r, beta)])?);
        c.gates.extend(rz(alpha));
    }
    Ok(c)
}

/// Picks the candidate with the smallest key; ties go to the one nearest the line middle.
fn best_root<K: Ord>(
    layout: &ParityLayout,
    i: usize,
    candidates: &[QubitLabel],
    key: impl Fn(&QubitLabel) -> Result<K>,
) -> Result<QubitLabel> {
    let line = line_of(layout, i)?;
    let mid2 = line.len() as i64 - 1;
    let mut best: Option<((K, i64), QubitLabel)> = None;
    for q in candidates {
        let pos = line.iter().position(|x| x == q).unwrap() as i64;
        let k = (key(q)?, (2 * pos - mid2).abs());
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, q.clone()));
        }
    }
    best.map(|(_, q)| q).ok_or(Error::MissingIndex(i))
}

/// Logical `R_z(alpha) R_x(beta) R_z(gamma)` on logical qubit `i`.
///
/// With the root on the data qubit all three rotations sit inside one CNOT sandwich.
/// Without an explicit root the one giving the smallest scheduled depth is used.
pub fn synth_unitary(
    layout: &ParityLayout,
    i: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    root: Option<&QubitLabel>,
) -> Result<Circuit> {
    let angles = [alpha, beta, gamma];
    let root = match root {
        Some(r) => r.clone(),
        None => {
            let line = line_of(layout, i)?.to_vec();
            best_root(layout, i, &line, |q| Ok(schedule(&unitary_with_root(layout, i, angles, q)?).depth()))?
        }
    };
    unitary_with_root(layout, i, angles, &root)
}

/// Logical Hadamard. With the root on the data qubit the core is a physical H;
/// otherwise `H = i R_z(pi/2) R_x(pi/2) R_z(pi/2)` and the phase is tracked.
pub fn synth_h(layout: &ParityLayout, i: usize, root: Option<&QubitLabel>) -> Result<Circuit> {
    let d = data(layout, i)?;
    let root = root.cloned().unwrap_or_else(|| QubitLabel::data(i));
    if layout.require(&root)? == d {
        let mut c = physical_circuit(layout);
        c.gates = SynthesisPlan::new(layout, i, &root)?.gates(layout, &[Gate::h(d)])?;
        Ok(c)
    } else {
        let mut c = unitary_with_root(layout, i, [FRAC_PI_2; 3], &root)?;
        c.global_phase = FRAC_PI_2;
        Ok(c)
    }
}

/// Logical X: a physical X on every qubit of the line.
pub fn synth_x(layout: &ParityLayout, i: usize) -> Result<Circuit> {
    let mut c = physical_circuit(layout);
    for q in line_of(layout, i)? {
        c.push(Gate::x(layout.require(q)?));
    }
    Ok(c)
}

/// Logical controlled phase `diag(1,1,1,e^{i phi})` from three RZ rotations.
pub fn synth_cphase(layout: &ParityLayout, i: usize, j: usize, phi: f64) -> Result<Circuit> {
    if i == j {
        return Err(Error::InvalidArgument("controlled phase needs two distinct qubits".into()));
    }
    let (di, dj) = (data(layout, i)?, data(layout, j)?);
    let p = parity(layout, QubitLabel::pair(i, j))?;
    let mut c = physical_circuit(layout);
    if phi != 0.0 {
        c.push(Gate::rz(di, phi / 2.0));
        c.push(Gate::rz(p, -phi / 2.0));
        c.push(Gate::rz(dj, phi / 2.0));
        c.global_phase = phi / 4.0;
    }
    Ok(c)
}

fn cnot_sequence(layout: &ParityLayout, c: usize, t: usize, root: &QubitLabel) -> Result<Circuit> {
    let (dc, dt) = (data(layout, c)?, data(layout, t)?);
    let p = parity(layout, QubitLabel::pair(c, t))?;
    let plan = SynthesisPlan::new(layout, t, root)?;
    let r = layout.require(root)?;
    let chain = plan.gates(layout, &[Gate::rx(r, FRAC_PI_2)])?;
    let mut circ = physical_circuit(layout);
    circ.push(Gate::rz(dt, FRAC_PI_2));
    circ.gates.extend(chain.iter().cloned());
    circ.push(Gate::rz(dt, FRAC_PI_2));
    circ.push(Gate::rz(dc, FRAC_PI_2));
    circ.push(Gate::rz(p, -FRAC_PI_2));
    circ.push(Gate::rz(dt, FRAC_PI_2));
    circ.push(Gate::rz(dt, FRAC_PI_2));
    circ.gates.extend(chain);
    circ.push(Gate::rz(dt, FRAC_PI_2));
    circ.global_phase = PI + PI / 4.0;
    Ok(optimize(&circ))
}

/// Logical CNOT as `H(t) CZ(c,t) H(t)`.
///
/// The two Hadamard chains on the target line are cancelled down to the part that
/// actually meets the RZ on `(c,t)`, and the RZ gates on the target data qubit are
/// merged. The default root minimizes CNOT count, then scheduled depth.
pub fn synth_cnot(layout: &ParityLayout, c: usize, t: usize, root: Option<&QubitLabel>) -> Result<Circuit> {
    if c == t {
        return Err(Error::InvalidArgument("CNOT control equals target".into()));
    }
    let root = match root {
        Some(r) => r.clone(),
        None => {
            let line = line_of(layout, t)?.to_vec();
            best_root(layout, t, &line, |q| {
                let s = schedule(&cnot_sequence(layout, c, t, q)?).stats;
                Ok((s.cnot_count, s.depth))
            })?
        }
    };
    cnot_sequence(layout, c, t, &root)
}

/// Logical doubly-controlled phase from two logical CPs, one physical CP between the
/// data qubit `(i)` and the parity qubit `(j,k)` conjugated by X on `(j,k)`, and a
/// compensating phase on `(i)`.
pub fn synth_ccp(layout: &ParityLayout, i: usize, j: usize, k: usize, phi: f64) -> Result<Circuit> {
    if i == j || j == k || i == k {
        return Err(Error::InvalidArgument("controlled-controlled phase needs three distinct qubits".into()));
    }
    let di = data(layout, i)?;
    data(layout, j)?;
    data(layout, k)?;
    let jk = parity(layout, QubitLabel::pair(j, k))?;
    if !layout.cp_adjacent(di, jk) {
        return Err(Error::NotAdjacent { a: QubitLabel::data(i), b: QubitLabel::pair(j, k) });
    }
    let mut c = synth_cphase(layout, i, j, phi / 2.0)?;
    c.append(&synth_cphase(layout, i, k, phi / 2.0)?);
    if phi != 0.0 {
        c.push(Gate::x(jk));
        c.push(Gate::cp(di, jk, phi / 2.0));
        c.push(Gate::x(jk));
        c.push(Gate::rz(di, -phi / 2.0));
        c.global_phase -= phi / 4.0;
    }
    Ok(c)
}

/// Role assignment `(i, j, k)` of a three-qubit set such that `(i)` touches `(j,k)`.
pub fn ccp_roles(layout: &ParityLayout, qubits: [usize; 3]) -> Result<[usize; 3]> {
    let [a, b, c] = qubits;
    for [i, j, k] in [[a, b, c], [b, a, c], [c, a, b]] {
        if let (Some(di), Some(jk)) = (
            layout.index_of(&QubitLabel::data(i)),
            layout.index_of(&QubitLabel::pair(j, k)),
        ) {
            if layout.cp_adjacent(di, jk) {
                return Ok([i, j, k]);
            }
        }
    }
    Err(Error::InvalidLayout(format!(
        "no data qubit of {{{a},{b},{c}}} touches the parity qubit of the other two; use a layout tailored to this gate"
    )))
}

/// Logical Toffoli `H(k) CCZ H(k)`; only the target line carries CNOT chains.
pub fn synth_toffoli(layout: &ParityLayout, i: usize, j: usize, k: usize) -> Result<Circuit> {
    let [a, b, c] = ccp_roles(layout, [i, j, k])?;
    let h = synth_h(layout, k, None)?;
    let mut out = h.clone();
    out.append(&synth_ccp(layout, a, b, c, PI)?);
    out.append(&h);
    Ok(optimize(&out))
}

/// `exp(i phi Z_{q1} ... Z_{qm})` as one RZ(-2 phi) on the parity qubit of the index set.
pub fn synth_higher_order_rz(layout: &ParityLayout, indices: &[usize], phi: f64) -> Result<Circuit> {
    let label = QubitLabel::new(indices.iter().copied())?;
    let q = layout.index_of(&label).ok_or(Error::MissingQubit(label))?;
    let mut c = physical_circuit(layout);
    if phi != 0.0 {
        c.push(Gate::rz(q, -2.0 * phi));
    }
    Ok(c)
}

/// Turns controls in `negated` into negative controls by conjugating with X on the data
/// qubit of each negated index and on every touched parity qubit containing it. A parity
/// qubit holding two negated indices is flipped twice, so it is left alone.
pub fn apply_negative_controls(
    circuit: &Circuit,
    layout: &ParityLayout,
    negated: &[usize],
    touched: &[QubitLabel],
) -> Result<Circuit> {
    let mut flips = BTreeSet::new();
    let mut toggle = |q: usize| {
        if !flips.remove(&q) {
            flips.insert(q);
        }
    };
    for &i in negated {
        toggle(data(layout, i)?);
        for q in touched.iter().filter(|q| !q.is_data() && q.contains(i)) {
            toggle(layout.require(q)?);
        }
    }
    let mut out = physical_circuit(layout);
    out.global_phase = circuit.global_phase;
    out.gates.extend(flips.iter().map(|&q| Gate::x(q)));
    out.gates.extend(circuit.gates.iter().cloned());
    out.gates.extend(flips.iter().map(|&q| Gate::x(q)));
    Ok(out)
}

/// Labels of all qubits a circuit acts on.
pub fn touched_qubits(circuit: &Circuit) -> Vec<QubitLabel> {
    let ids: BTreeSet<usize> = circuit.gates.iter().flat_map(|g| g.qubits.iter().copied()).collect();
    ids.into_iter().map(|q| circuit.register[q].clone()).collect()
}

/// Compiles a logical circuit gate by gate and runs the cancellation and merge passes.
pub fn compile_logical(layout: &ParityLayout, logical: &Circuit) -> Result<Circuit> {
    if logical.space != Space::Logical {
        return Err(Error::InvalidCircuit("expected a logical circuit".into()));
    }
    logical.check()?;
    let idx = |q: usize| -> Result<usize> {
        match logical.register[q].indices() {
            [i] => Ok(*i),
            _ => Err(Error::InvalidCircuit(format!("logical register entry {} is not a single index", logical.register[q]))),
        }
    };
    let mut out = physical_circuit(layout);
    out.global_phase = logical.global_phase;
    for g in &logical.gates {
        let part = match g.kind {
            GateKind::Rz => synth_rz(layout, idx(g.qubits[0])?, g.angle())?,
            GateKind::Rx => synth_rx(layout, idx(g.qubits[0])?, g.angle(), None)?,
            GateKind::H => synth_h(layout, idx(g.qubits[0])?, None)?,
            GateKind::X => synth_x(layout, idx(g.qubits[0])?)?,
            GateKind::Cnot => synth_cnot(layout, idx(g.qubits[0])?, idx(g.qubits[1])?, None)?,
            GateKind::Cp => synth_cphase(layout, idx(g.qubits[0])?, idx(g.qubits[1])?, g.angle())?,
        };
        out.append(&part);
    }
    Ok(optimize(&out))
}
