//! Application circuits in logical form and compiled onto their parity layouts.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::label::QubitLabel;
use crate::layout::ParityLayout;
use crate::layouts::{addition_a, addition_b, addition_layout, graph_state_layout, grover_layout, lhz_layout, GroverLayout};
use crate::scheduler::optimize;
use crate::synth::{physical_circuit, synth_cphase, synth_h, synth_toffoli, synth_x, SynthesisPlan};

/// Angle of the controlled `R_k` rotation, `2 pi / 2^k`.
pub fn rk_angle(k: usize) -> f64 {
    2.0 * PI / 2f64.powi(k as i32)
}

/// QFT on the given logical qubits (first = most significant), without the final swaps.
pub fn push_qft_logical(c: &mut Circuit, qubits: &[usize]) {
    for (a, &i) in qubits.iter().enumerate() {
        c.push(Gate::h(i));
        for (b, &j) in qubits.iter().enumerate().skip(a + 1) {
            c.push(Gate::cp(j, i, rk_angle(b - a + 1)));
        }
    }
}

pub fn qft_logical(n: usize) -> Result<Circuit> {
    if n < 1 {
        return Err(Error::InvalidArgument("QFT needs n >= 1".into()));
    }
    let mut c = Circuit::logical(n);
    push_qft_logical(&mut c, &(0..n).collect::<Vec<_>>());
    Ok(c)
}

/// Raw (un-optimized) parity QFT on logical qubits `qubits` of `layout`.
///
/// Each qubit gets its Hadamard through a CNOT sandwich rooted at its data qubit, then
/// its controlled rotations as RZ triplets. Line blocks only serialize where lines cross.
fn qft_parity_raw(layout: &ParityLayout, qubits: &[usize]) -> Result<Circuit> {
    let mut c = physical_circuit(layout);
    for (a, &i) in qubits.iter().enumerate() {
        c.append(&synth_h(layout, i, None)?);
        for (b, &j) in qubits.iter().enumerate().skip(a + 1) {
            c.append(&synth_cphase(layout, i, j, rk_angle(b - a + 1))?);
        }
    }
    Ok(c)
}

/// QFT compiled onto `lhz_layout(n)`, after cancellation and RZ merging.
pub fn qft_parity(n: usize) -> Result<(ParityLayout, Circuit)> {
    qft_parity_with(n, true)
}

fn finish(c: Circuit, passes: bool) -> Circuit {
    if passes {
        optimize(&c)
    } else {
        c
    }
}

/// [`qft_parity`] with the cancellation and merge passes optional.
pub fn qft_parity_with(n: usize, passes: bool) -> Result<(ParityLayout, Circuit)> {
    if n < 2 {
        return Err(Error::InvalidArgument("parity QFT needs n >= 2".into()));
    }
    let layout = lhz_layout(n)?;
    let c = finish(qft_parity_raw(&layout, &(0..n).collect::<Vec<_>>())?, passes);
    Ok((layout, c))
}

/// Indices `(a_i, b_q, angle)` of the controlled rotations of the addition core step.
fn draper_rotations(n: usize) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for i in 0..n {
        for q in i..n {
            out.push((addition_a(n, i), addition_b(n, q), rk_angle(q - i + 1)));
        }
    }
    out
}

/// Logical Draper adder `|a>|b> -> |a+b mod 2^n>|b>` on `2n` qubits.
///
/// Qubits `0..n` hold `a`, `n..2n` hold `b`, most significant bit first.
pub fn draper_addition_logical(n: usize) -> Result<Circuit> {
    if n < 1 {
        return Err(Error::InvalidArgument("addition needs n >= 1".into()));
    }
    let a: Vec<usize> = (0..n).map(|i| addition_a(n, i)).collect();
    let mut qft = Circuit::logical(2 * n);
    push_qft_logical(&mut qft, &a);
    let mut c = qft.clone();
    for (x, y, phi) in draper_rotations(n) {
        c.push(Gate::cp(x, y, phi));
    }
    c.append(&qft.inverse());
    Ok(c)
}

/// The core step alone: all inter-register controlled rotations, compiled and merged.
pub fn draper_core(n: usize, r2_internal: bool) -> Result<(ParityLayout, Circuit)> {
    let layout = addition_layout(n, r2_internal)?;
    let mut c = physical_circuit(&layout);
    for (x, y, phi) in draper_rotations(n) {
        c.append(&synth_cphase(&layout, x, y, phi)?);
    }
    Ok((layout.clone(), optimize(&c)))
}

/// Full adder on `addition_layout(n, r2_internal)`: QFT on R1, the core step, inverse QFT.
pub fn draper_addition(n: usize, r2_internal: bool) -> Result<(ParityLayout, Circuit)> {
    draper_addition_with(n, r2_internal, true)
}

pub fn draper_addition_with(n: usize, r2_internal: bool, passes: bool) -> Result<(ParityLayout, Circuit)> {
    let layout = addition_layout(n, r2_internal)?;
    let a: Vec<usize> = (0..n).map(|i| addition_a(n, i)).collect();
    let qft = qft_parity_raw(&layout, &a)?;
    let (_, core) = draper_core(n, r2_internal)?;
    let mut c = qft.clone();
    c.append(&core);
    c.append(&qft.inverse());
    Ok((layout, finish(c, passes)))
}

/// Textbook logical `CCP(phi)` from CP and CNOT gates.
pub fn push_ccp_logical(c: &mut Circuit, i: usize, j: usize, k: usize, phi: f64) {
    c.push(Gate::cp(j, k, phi / 2.0));
    c.push(Gate::cnot(i, j));
    c.push(Gate::cp(j, k, -phi / 2.0));
    c.push(Gate::cnot(i, j));
    c.push(Gate::cp(i, k, phi / 2.0));
}

pub fn push_toffoli_logical(c: &mut Circuit, i: usize, j: usize, k: usize) {
    c.push(Gate::h(k));
    push_ccp_logical(c, i, j, k, PI);
    c.push(Gate::h(k));
}

/// Toffoli ladder computing ancilla `a` as the AND of problem qubits `0..=a`.
fn ladder(g: &GroverLayout) -> Vec<(usize, usize, usize)> {
    (1..g.m)
        .map(|a| {
            let prev = if a == 1 { g.problem(0) } else { g.ancilla(a - 1) };
            (prev, g.problem(a), g.ancilla(a))
        })
        .collect()
}

/// Logical `m`-controlled phase on problem qubits `0..=m` using ancillas `m+1..2m`.
pub fn multi_controlled_phase_logical(m: usize, phi: f64) -> Result<Circuit> {
    let g = grover_layout(m)?;
    let mut c = Circuit::logical(2 * m);
    let steps = ladder(&g);
    for &(x, y, t) in &steps {
        push_toffoli_logical(&mut c, x, y, t);
    }
    c.push(Gate::cp(g.ancilla(m - 1), g.problem(m), phi));
    for &(x, y, t) in steps.iter().rev() {
        push_toffoli_logical(&mut c, x, y, t);
    }
    Ok(c)
}

/// `m`-controlled phase on `grover_layout(m)`: Toffoli ladder, central CP, mirror ladder.
pub fn multi_controlled_phase(m: usize, phi: f64) -> Result<(GroverLayout, Circuit)> {
    let g = grover_layout(m)?;
    let l = &g.layout;
    let steps = ladder(&g);
    let mut c = physical_circuit(l);
    for &(x, y, t) in &steps {
        c.append(&synth_toffoli(l, x, y, t)?);
    }
    c.append(&synth_cphase(l, g.ancilla(m - 1), g.problem(m), phi)?);
    for &(x, y, t) in steps.iter().rev() {
        c.append(&synth_toffoli(l, x, y, t)?);
    }
    let c = optimize(&c);
    Ok((g, c))
}

/// Logical diffusion operator on `n_total` problem qubits (plus `n_total - 2` ancillas).
pub fn grover_diffusion_logical(n_total: usize) -> Result<Circuit> {
    if n_total < 3 {
        return Err(Error::InvalidArgument("diffusion needs at least 3 qubits".into()));
    }
    let m = n_total - 1;
    let mut c = Circuit::logical(2 * m);
    for q in 0..=m {
        c.push(Gate::h(q));
        c.push(Gate::x(q));
    }
    c.append(&multi_controlled_phase_logical(m, PI)?);
    for q in 0..=m {
        c.push(Gate::x(q));
        c.push(Gate::h(q));
    }
    Ok(c)
}

/// Diffusion operator: logical H and X on every problem qubit around `multi_controlled_phase(n_total-1, pi)`.
pub fn grover_diffusion(n_total: usize) -> Result<(GroverLayout, Circuit)> {
    grover_diffusion_with(n_total, true)
}

pub fn grover_diffusion_with(n_total: usize, passes: bool) -> Result<(GroverLayout, Circuit)> {
    if n_total < 3 {
        return Err(Error::InvalidArgument("diffusion needs at least 3 qubits".into()));
    }
    let (g, mcp) = multi_controlled_phase(n_total - 1, PI)?;
    let l = &g.layout;
    let mut wrap = physical_circuit(l);
    for q in 0..n_total {
        wrap.append(&synth_h(l, q, None)?);
        wrap.append(&synth_x(l, q)?);
    }
    let mut c = wrap.clone();
    c.append(&mcp);
    c.append(&wrap.inverse());
    let c = finish(c, passes);
    Ok((g, c))
}

/// Ising cost function `sum J_S Z_S` over index sets `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsingModel {
    pub terms: Vec<(Vec<usize>, f64)>,
}

impl IsingModel {
    pub fn new(terms: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        for (s, j) in &terms {
            QubitLabel::new(s.iter().copied())?;
            if !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidArgument(format!("term indices {s:?} not sorted")));
            }
            if !j.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient {j} not finite")));
            }
        }
        Ok(IsingModel { terms })
    }

    /// All one- and two-body terms with coefficients drawn uniformly from `[-1, 1)`.
    pub fn random_all_to_all(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut terms = Vec::new();
        for i in 0..n {
            terms.push((vec![i], rng.random_range(-1.0..1.0)));
            for j in i + 1..n {
                terms.push((vec![i, j], rng.random_range(-1.0..1.0)));
            }
        }
        IsingModel { terms }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QaoaParams {
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(betas: Vec<f64>, gammas: Vec<f64>) -> Result<Self> {
        if betas.is_empty() || betas.len() != gammas.len() {
            return Err(Error::InvalidArgument("need equally many betas and gammas, at least one".into()));
        }
        Ok(QaoaParams { betas, gammas })
    }
}

/// Driver `prod_i exp(-i beta X_i)` with every line's chain rooted at its data qubit.
pub fn qaoa_driver(layout: &ParityLayout, beta: f64) -> Result<Circuit> {
    let mut c = physical_circuit(layout);
    if beta == 0.0 {
        return Ok(c);
    }
    for i in 0..layout.n_logical {
        let d = QubitLabel::data(i);
        let r = layout.require(&d)?;
        let plan = SynthesisPlan::new(layout, i, &d)?;
        c.gates.extend(plan.gates(layout, &[Gate::rx(r, 2.0 * beta)])?);
    }
    Ok(optimize(&c))
}

/// `p` QAOA layers: one RZ(2 gamma J) per term qubit, then the line-chain driver.
pub fn qaoa_step(model: &IsingModel, params: &QaoaParams, layout: &ParityLayout) -> Result<Circuit> {
    qaoa_step_with(model, params, layout, true)
}

pub fn qaoa_step_with(model: &IsingModel, params: &QaoaParams, layout: &ParityLayout, passes: bool) -> Result<Circuit> {
    let mut targets = Vec::new();
    let mut missing = Vec::new();
    for (s, j) in &model.terms {
        let label = QubitLabel::new(s.iter().copied())?;
        match layout.index_of(&label) {
            Some(q) => targets.push((q, *j)),
            None => missing.push(label.to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::InvalidLayout(format!("no layout qubit for terms {}", missing.join(", "))));
    }
    let mut c = physical_circuit(layout);
    for (&beta, &gamma) in params.betas.iter().zip(&params.gammas) {
        for &(q, j) in &targets {
            if gamma * j != 0.0 {
                c.push(Gate::rz(q, 2.0 * gamma * j));
            }
        }
        c.append(&qaoa_driver(layout, beta)?);
    }
    Ok(finish(c, passes))
}

/// Logical reference for [`qaoa_step`], starting from whatever state it is applied to.
pub fn qaoa_logical(n: usize, model: &IsingModel, params: &QaoaParams) -> Result<Circuit> {
    let mut c = Circuit::logical(n);
    for (&beta, &gamma) in params.betas.iter().zip(&params.gammas) {
        for (s, j) in &model.terms {
            let (&last, rest) = s.split_last().ok_or(Error::InvalidLabel(s.clone()))?;
            for &x in rest {
                c.push(Gate::cnot(x, last));
            }
            c.push(Gate::rz(last, 2.0 * gamma * j));
            for &x in rest.iter().rev() {
                c.push(Gate::cnot(x, last));
            }
        }
        for i in 0..n {
            c.push(Gate::rx(i, 2.0 * beta));
        }
    }
    Ok(c)
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("bad edge ({a},{b}) for {n} vertices")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({},{})", e.0, e.1)));
            }
            norm.push(e);
        }
        Ok(Graph { n, edges: norm })
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(x, y)| if x == a { Some(y) } else if y == a { Some(x) } else { None })
            .collect()
    }

    /// Every simple graph on `n` vertices.
    pub fn all(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0..1u64 << pairs.len())
            .map(|mask| Graph {
                n,
                edges: pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect(),
            })
            .collect()
    }

    pub fn random(n: usize, p: f64, rng: &mut impl rand::Rng) -> Graph {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.random_bool(p))
            .collect();
        Graph { n, edges }
    }
}

/// Circuit that writes every parity qubit of `layout` from the data qubits.
///
/// Column stage: for each `k` a copy chain runs from `(k)` up its column, so `(k-1,k)`
/// holds `x_k` and the deeper entries hold `x_{k-1} + x_k` (the second one preloaded
/// from the first step of the previous column). Row stage: a chain from each `(i)` along
/// its row turns every `(i,k)` into `x_i + x_k`. Needs the triangular embedding with an
/// interval-closed label set.
pub fn encoding_circuit(layout: &ParityLayout) -> Result<Circuit> {
    let n = layout.n_logical;
    let id = |i: usize, k: usize| layout.index_of(&QubitLabel::pair(i, k));
    let mut c = physical_circuit(layout);
    for q in &layout.qubits {
        if q.len() > 2 {
            return Err(Error::InvalidLayout(format!("encoder cannot write multi-index qubit {q}")));
        }
    }
    for k in 0..n {
        let mut prev = layout.require(&QubitLabel::data(k))?;
        let mut first = true;
        for i in (0..k).rev() {
            let Some(q) = id(i, k) else { break };
            c.push(Gate::cnot(prev, q));
            prev = q;
            if first && k + 1 < n {
                if let Some(next) = id(i, k + 1) {
                    c.push(Gate::cnot(q, next));
                }
            }
            first = false;
        }
    }
    for i in 0..n {
        let mut prev = layout.require(&QubitLabel::data(i))?;
        for k in i + 1..n {
            let Some(q) = id(i, k) else { break };
            c.push(Gate::cnot(prev, q));
            prev = q;
        }
    }
    Ok(c)
}

/// Logical `|G> = prod_edges CZ |+>^n`.
pub fn graph_state_logical(g: &Graph) -> Circuit {
    let mut c = Circuit::logical(g.n);
    for i in 0..g.n {
        c.push(Gate::h(i));
    }
    for &(a, b) in &g.edges {
        c.push(Gate::cp(a, b, PI));
    }
    c
}

/// Prepares the encoded graph state from all-zero physical qubits: H on the data qubits,
/// the encoder, and one RZ layer for all CZ gates. With `decode` the encoder is run
/// backwards at the end, leaving `|G>` on the data qubits and the rest at zero.
pub fn graph_state_prep(g: &Graph, decode: bool) -> Result<(ParityLayout, Circuit)> {
    let layout = graph_state_layout(g.n, &g.edges)?;
    let enc = encoding_circuit(&layout)?;
    let mut c = physical_circuit(&layout);
    for i in 0..g.n {
        c.push(Gate::h(layout.require(&QubitLabel::data(i))?));
    }
    c.append(&enc);
    let mut cz = physical_circuit(&layout);
    for &(a, b) in &g.edges {
        cz.append(&synth_cphase(&layout, a, b, PI)?);
    }
    c.append(&crate::scheduler::merge_rz(&cz));
    if decode {
        c.append(&enc.inverse());
    }
    Ok((layout, c))
}
