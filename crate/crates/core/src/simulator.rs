//! Dense statevector engine: circuit application, the encoding isometry, stabilizer
//! checks and code-subspace equivalence.
//!
//! Amplitude index bit `q` holds register qubit `q` (little-endian).

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::label::QubitLabel;
use crate::layout::ParityLayout;

pub const DEFAULT_SIM_CAP: usize = 22;
pub const CAP_ENV: &str = "PARITY_SIM_CAP";

/// Largest register the simulator accepts: `PARITY_SIM_CAP` if set and valid, else 22.
pub fn sim_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SIM_CAP)
}

fn check_cap(qubits: usize) -> Result<()> {
    let cap = sim_cap();
    if qubits > cap {
        Err(Error::CapExceeded { qubits, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub register: Vec<QubitLabel>,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// All qubits in `|0>`.
    pub fn zero(register: Vec<QubitLabel>) -> Result<Self> {
        Self::basis(register, 0)
    }

    pub fn basis(register: Vec<QubitLabel>, index: u64) -> Result<Self> {
        check_cap(register.len())?;
        if index >> register.len() != 0 {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {} qubits",
                register.len()
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << register.len()];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { register, amplitudes })
    }

    pub fn from_amplitudes(register: Vec<QubitLabel>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_cap(register.len())?;
        if amplitudes.len() != 1usize << register.len() {
            return Err(Error::InvalidArgument(format!(
                "{} amplitudes for {} qubits",
                amplitudes.len(),
                register.len()
            )));
        }
        Ok(StateVector { register, amplitudes })
    }

    /// Normalized state with independent Gaussian-like random amplitudes.
    pub fn random(register: Vec<QubitLabel>, rng: &mut impl Rng) -> Result<Self> {
        check_cap(register.len())?;
        let amps: Vec<Complex64> = (0..1usize << register.len())
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let mut s = StateVector { register, amplitudes: amps };
        s.normalize();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.register.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        for a in &mut self.amplitudes {
            *a /= n;
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let amps = &mut self.amplitudes;
        let bit = |q: usize| 1usize << q;
        match g.kind {
            GateKind::Rz => {
                let (s, c) = (g.angle() / 2.0).sin_cos();
                let lo = Complex64::new(c, -s);
                let hi = Complex64::new(c, s);
                let m = bit(g.qubits[0]);
                for (i, a) in amps.iter_mut().enumerate() {
                    *a *= if i & m == 0 { lo } else { hi };
                }
            }
            GateKind::Rx => {
                let (s, c) = (g.angle() / 2.0).sin_cos();
                let ms = Complex64::new(0.0, -s);
                single(amps, g.qubits[0], [[c.into(), ms], [ms, c.into()]]);
            }
            GateKind::H => {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                single(amps, g.qubits[0], [[r.into(), r.into()], [r.into(), (-r).into()]]);
            }
            GateKind::X => {
                let m = bit(g.qubits[0]);
                for i in 0..amps.len() {
                    if i & m == 0 {
                        amps.swap(i, i | m);
                    }
                }
            }
            GateKind::Cnot => {
                let (c, t) = (bit(g.qubits[0]), bit(g.qubits[1]));
                for i in 0..amps.len() {
                    if i & c != 0 && i & t == 0 {
                        amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Cp => {
                let m = bit(g.qubits[0]) | bit(g.qubits[1]);
                let ph = Complex64::from_polar(1.0, g.angle());
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & m == m {
                        *a *= ph;
                    }
                }
            }
        }
    }

    /// Applies every gate of `circuit`, then its tracked global phase.
    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width() != self.n_qubits() {
            return Err(Error::InvalidArgument(format!(
                "circuit over {} qubits applied to a {}-qubit state",
                circuit.width(),
                self.n_qubits()
            )));
        }
        circuit.check()?;
        for g in &circuit.gates {
            self.apply_gate(g);
        }
        if circuit.global_phase != 0.0 {
            let ph = Complex64::from_polar(1.0, circuit.global_phase);
            for a in &mut self.amplitudes {
                *a *= ph;
            }
        }
        Ok(())
    }

    /// Binary dump: qubit count as little-endian `u64`, then interleaved real/imaginary
    /// little-endian `f64` pairs.
    pub fn write_dump(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(&(self.n_qubits() as u64).to_le_bytes())?;
        for a in &self.amplitudes {
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a dump written by [`StateVector::write_dump`]; the register is `0..K` as data labels.
    pub fn read_dump(r: &mut impl Read) -> Result<StateVector> {
        let io = |e: std::io::Error| Error::Format(format!("state dump: {e}"));
        let mut word = [0u8; 8];
        r.read_exact(&mut word).map_err(io)?;
        let k = u64::from_le_bytes(word) as usize;
        check_cap(k)?;
        let mut amps = Vec::with_capacity(1 << k);
        for _ in 0..1usize << k {
            r.read_exact(&mut word).map_err(io)?;
            let re = f64::from_le_bytes(word);
            r.read_exact(&mut word).map_err(io)?;
            amps.push(Complex64::new(re, f64::from_le_bytes(word)));
        }
        StateVector::from_amplitudes((0..k).map(QubitLabel::data).collect(), amps)
    }
}

fn single(amps: &mut [Complex64], q: usize, m: [[Complex64; 2]; 2]) {
    let b = 1usize << q;
    for i in 0..amps.len() {
        if i & b == 0 {
            let (a0, a1) = (amps[i], amps[i | b]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | b] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Logical register `0..n` as data labels.
pub fn logical_register(n: usize) -> Vec<QubitLabel> {
    (0..n).map(QubitLabel::data).collect()
}

/// Encoding isometry: each logical basis state goes to its parity image.
pub fn encode(layout: &ParityLayout, logical: &StateVector) -> Result<StateVector> {
    if logical.n_qubits() != layout.n_logical {
        return Err(Error::InvalidArgument(format!(
            "{}-qubit logical state for a layout with {} logical qubits",
            logical.n_qubits(),
            layout.n_logical
        )));
    }
    let mut out = StateVector::zero(layout.qubits.clone())?;
    out.amplitudes[0] = Complex64::new(0.0, 0.0);
    for (s, a) in logical.amplitudes.iter().enumerate() {
        out.amplitudes[layout.encode_mask(s as u64) as usize] = *a;
    }
    Ok(out)
}

/// Inverse of [`encode`] on the code space; fails with the leakage norm otherwise.
pub fn decode(layout: &ParityLayout, physical: &StateVector) -> Result<StateVector> {
    if physical.n_qubits() != layout.k() {
        return Err(Error::InvalidArgument(format!(
            "{}-qubit physical state for a layout with {} qubits",
            physical.n_qubits(),
            layout.k()
        )));
    }
    let mut out = StateVector::zero(logical_register(layout.n_logical))?;
    let mut in_code = vec![false; physical.amplitudes.len()];
    for s in 0..out.amplitudes.len() {
        let idx = layout.encode_mask(s as u64) as usize;
        in_code[idx] = true;
        out.amplitudes[s] = physical.amplitudes[idx];
    }
    let leak = physical
        .amplitudes
        .iter()
        .zip(&in_code)
        .filter(|(_, &kept)| !kept)
        .map(|(a, _)| a.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if leak > 1e-10 {
        return Err(Error::Leakage(leak));
    }
    Ok(out)
}

/// Largest `|| C_l psi - psi ||` over the layout constraints.
pub fn check_stabilizers(layout: &ParityLayout, physical: &StateVector) -> f64 {
    layout
        .constraint_masks()
        .iter()
        .map(|&m| {
            let odd: f64 = physical
                .amplitudes
                .iter()
                .enumerate()
                .filter(|(i, _)| (*i as u64 & m).count_ones() % 2 == 1)
                .map(|(_, a)| a.norm_sqr())
                .sum();
            2.0 * odd.sqrt()
        })
        .fold(0.0, f64::max)
}

/// Which logical inputs an equivalence check ranges over.
#[derive(Clone, Debug, Default)]
pub struct InputSpace {
    /// Logical qubits held at `|0>` on input (e.g. ancillas).
    pub fixed_zero: Vec<usize>,
    /// Number of random superpositions checked on top of the basis states.
    pub random_states: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Equivalence {
    /// Worst overlap over all checked inputs, after removing one common global phase.
    pub fidelity: f64,
    /// Worst stabilizer deviation of the physical outputs.
    pub stabilizer_deviation: f64,
}

/// Compares a logical circuit against its physical compilation on the code space.
///
/// Every logical basis state and a few random superpositions are pushed through
/// `E U_log` and `U_phys E`. A single global phase is fixed from the summed basis
/// overlaps so relative phases between basis states are checked as well.
pub fn verify_equivalence(logical: &Circuit, physical: &Circuit, layout: &ParityLayout) -> Result<f64> {
    let opts = InputSpace { random_states: 4, ..Default::default() };
    Ok(verify_equivalence_on(logical, physical, layout, &opts)?.fidelity)
}

pub fn verify_equivalence_on(
    logical: &Circuit,
    physical: &Circuit,
    layout: &ParityLayout,
    inputs: &InputSpace,
) -> Result<Equivalence> {
    check_cap(layout.k())?;
    if logical.width() != layout.n_logical {
        return Err(Error::InvalidArgument(format!(
            "logical circuit has {} qubits, layout has {}",
            logical.width(),
            layout.n_logical
        )));
    }
    if physical.register != layout.qubits {
        return Err(Error::InvalidArgument("physical register differs from the layout qubits".into()));
    }
    let n = layout.n_logical;
    let fixed: u64 = inputs.fixed_zero.iter().map(|&i| 1u64 << i).sum();
    let basis: Vec<u64> = (0..1u64 << n).filter(|s| s & fixed == 0).collect();
    let run = |psi: &StateVector| -> Result<(Complex64, f64)> {
        let mut expect = psi.clone();
        expect.apply(logical)?;
        let expect = encode(layout, &expect)?;
        let mut got = encode(layout, psi)?;
        got.apply(physical)?;
        Ok((expect.inner(&got), check_stabilizers(layout, &got)))
    };
    let mut overlaps = Vec::with_capacity(basis.len());
    let mut dev: f64 = 0.0;
    for &s in &basis {
        let (o, d) = run(&StateVector::basis(logical_register(n), s)?)?;
        overlaps.push(o);
        dev = dev.max(d);
    }
    let sum: Complex64 = overlaps.iter().sum();
    let phase = if sum.norm() > 1e-12 { sum / sum.norm() } else { Complex64::new(1.0, 0.0) };
    let mut fidelity = overlaps.iter().map(|o| (o * phase.conj()).re).fold(1.0, f64::min);
    let mut rng = StdRng::seed_from_u64(inputs.seed);
    for _ in 0..inputs.random_states {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for &s in &basis {
            amps[s as usize] = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        let mut psi = StateVector::from_amplitudes(logical_register(n), amps)?;
        psi.normalize();
        let (o, d) = run(&psi)?;
        fidelity = fidelity.min((o * phase.conj()).re);
        dev = dev.max(d);
    }
    Ok(Equivalence { fidelity, stabilizer_deviation: dev })
}

/// `|<a|b>|` for two states after removing a global phase.
pub fn state_fidelity(a: &StateVector, b: &StateVector) -> f64 {
    a.inner(b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Space;
    use crate::layouts::lhz_layout;

    fn reg(n: usize) -> Vec<QubitLabel> {
        logical_register(n)
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::zero(reg(1)).unwrap();
        s.apply_gate(&Gate::h(0));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes[0].re - r).abs() < 1e-15 && (s.amplitudes[1].re - r).abs() < 1e-15);
    }

    #[test]
    fn cnot_truth_table() {
        for (input, output) in [(0, 0), (1, 3), (2, 2), (3, 1)] {
            let mut s = StateVector::basis(reg(2), input).unwrap();
            s.apply_gate(&Gate::cnot(0, 1));
            assert_eq!(s.amplitudes[output].re, 1.0);
        }
    }

    #[test]
    fn encode_bell_pair() {
        let l = lhz_layout(2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let psi = StateVector::from_amplitudes(reg(2), vec![r.into(), z, z, r.into()]).unwrap();
        let phys = encode(&l, &psi).unwrap();
        assert_eq!(phys.amplitudes[0].re, r);
        assert_eq!(phys.amplitudes[0b101].re, r);
        assert!(check_stabilizers(&l, &phys) < 1e-12);
        assert_eq!(decode(&l, &phys).unwrap(), psi);
    }

    #[test]
    fn leakage_and_deviation() {
        let l = lhz_layout(2).unwrap();
        let mut phys = encode(&l, &StateVector::zero(reg(2)).unwrap()).unwrap();
        phys.apply_gate(&Gate::x(2));
        assert!(matches!(decode(&l, &phys), Err(Error::Leakage(_))));
        assert!((check_stabilizers(&l, &phys) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn dump_round_trip() {
        let mut rng = StdRng::seed_from_u64(3);
        let s = StateVector::random(reg(3), &mut rng).unwrap();
        let mut buf = Vec::new();
        s.write_dump(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 16 * 8);
        assert_eq!(StateVector::read_dump(&mut buf.as_slice()).unwrap(), s);
    }

    #[test]
    fn identity_equivalence() {
        let l = lhz_layout(3).unwrap();
        let phys = Circuit::new(Space::Physical, l.qubits.clone());
        assert!((verify_equivalence(&Circuit::logical(3), &phys, &l).unwrap() - 1.0).abs() < 1e-12);
    }
}
