//! Gate-list intermediate representation shared by logical and physical circuits.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::label::QubitLabel;

/// The fixed gate alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Rx,
    Rz,
    H,
    Cnot,
    Cp,
    X,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "RX",
            GateKind::Rz => "RZ",
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
            GateKind::Cp => "CP",
            GateKind::X => "X",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "RX" => GateKind::Rx,
            "RZ" => GateKind::Rz,
            "H" => GateKind::H,
            "CNOT" | "CX" => GateKind::Cnot,
            "CP" => GateKind::Cp,
            "X" => GateKind::X,
            other => return Err(Error::Format(format!("unknown gate kind {other:?}"))),
        })
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cp => 2,
            _ => 1,
        }
    }

    pub fn has_angle(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Rz | GateKind::Cp)
    }
}

/// One gate acting on register positions. For CNOT the first qubit is the control.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub angle: Option<f64>,
}

/// Reduces an angle to (-2π, 2π]. Every gate in the alphabet has period 4π.
pub fn canonical_angle(a: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    if a > -2.0 * PI && a <= 2.0 * PI {
        return a;
    }
    let period = 4.0 * PI;
    let mut r = a.rem_euclid(period);
    if r > 2.0 * PI {
        r -= period;
    }
    r
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>, angle: Option<f64>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidCircuit(format!(
                "{} expects {} qubit(s), got {}",
                kind.name(),
                kind.arity(),
                qubits.len()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidCircuit(format!("{} on a single qubit", kind.name())));
        }
        let angle = match (kind.has_angle(), angle) {
            (true, Some(a)) if a.is_finite() => Some(canonical_angle(a)),
            (true, Some(a)) => return Err(Error::InvalidCircuit(format!("non-finite angle {a}"))),
            (true, None) => return Err(Error::InvalidCircuit(format!("{} needs an angle", kind.name()))),
            (false, None) => None,
            (false, Some(_)) => {
                return Err(Error::InvalidCircuit(format!("{} takes no angle", kind.name())))
            }
        };
        Ok(Gate { kind, qubits, angle })
    }

    pub fn rx(q: usize, a: f64) -> Self {
        Gate { kind: GateKind::Rx, qubits: vec![q], angle: Some(canonical_angle(a)) }
    }
    pub fn rz(q: usize, a: f64) -> Self {
        Gate { kind: GateKind::Rz, qubits: vec![q], angle: Some(canonical_angle(a)) }
    }
    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H, qubits: vec![q], angle: None }
    }
    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X, qubits: vec![q], angle: None }
    }
    pub fn cnot(c: usize, t: usize) -> Self {
        assert_ne!(c, t, "CNOT needs two distinct qubits");
        Gate { kind: GateKind::Cnot, qubits: vec![c, t], angle: None }
    }
    pub fn cp(a: usize, b: usize, phi: f64) -> Self {
        assert_ne!(a, b, "CP needs two distinct qubits");
        Gate { kind: GateKind::Cp, qubits: vec![a, b], angle: Some(canonical_angle(phi)) }
    }

    pub fn angle(&self) -> f64 {
        self.angle.unwrap_or(0.0)
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    /// The inverse gate (angles negated, self-inverse gates unchanged).
    pub fn inverse(&self) -> Self {
        let mut g = self.clone();
        g.angle = g.angle.map(|a| canonical_angle(-a));
        g
    }
}

/// Whether a circuit addresses logical qubits or physical qubits of a layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Logical,
    Physical,
}

impl Space {
    fn name(self) -> &'static str {
        match self {
            Space::Logical => "logical",
            Space::Physical => "physical",
        }
    }
}

/// An ordered gate list over a register.
///
/// Logical registers hold one single-index label per logical qubit. Physical
/// registers hold the layout's qubit labels in layout order. `global_phase`
/// records a phase factor `e^{i·global_phase}` that is tracked but never emitted as a gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub space: Space,
    pub register: Vec<QubitLabel>,
    pub gates: Vec<Gate>,
    pub global_phase: f64,
}

impl Circuit {
    pub fn new(space: Space, register: Vec<QubitLabel>) -> Self {
        Circuit { space, register, gates: Vec::new(), global_phase: 0.0 }
    }

    /// Logical circuit over qubits `0..n`.
    pub fn logical(n: usize) -> Self {
        Circuit::new(Space::Logical, (0..n).map(QubitLabel::data).collect())
    }

    pub fn width(&self) -> usize {
        self.register.len()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        debug_assert!(g.qubits.iter().all(|&q| q < self.register.len()));
        self.gates.push(g);
    }

    /// Appends the gates of `other`, which must share this register.
    pub fn append(&mut self, other: &Circuit) {
        assert_eq!(self.register, other.register, "registers differ");
        self.gates.extend(other.gates.iter().cloned());
        self.global_phase += other.global_phase;
    }

    /// The inverse circuit: reversed order, inverted gates, negated phase.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            space: self.space,
            register: self.register.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            global_phase: -self.global_phase,
        }
    }

    /// Checks gate arity, register bounds and angle finiteness.
    pub fn check(&self) -> Result<()> {
        for (k, g) in self.gates.iter().enumerate() {
            Gate::new(g.kind, g.qubits.clone(), g.angle)
                .map_err(|e| Error::InvalidCircuit(format!("gate {k}: {e}")))?;
            if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.register.len()) {
                return Err(Error::InvalidCircuit(format!(
                    "gate {k} references qubit {q} outside a register of {}",
                    self.register.len()
                )));
            }
        }
        Ok(())
    }

    /// Serializes to the versioned JSON circuit format; angles carry 17 significant digits.
    pub fn to_json(&self) -> String {
        self.to_json_with_layers(None)
    }

    /// Like [`Circuit::to_json`], optionally adding a `"layers"` array with the
    /// scheduled layer index of every gate.
    pub fn to_json_with_layers(&self, layers: Option<&[usize]>) -> String {
        let mut s = String::new();
        let reg: Vec<String> = self
            .register
            .iter()
            .map(|l| serde_json::to_string(l.indices()).expect("indices serialize"))
            .collect();
        let _ = write!(
            s,
            "{{\n  \"version\": 1,\n  \"space\": \"{}\",\n  \"register\": [{}],\n",
            self.space.name(),
            reg.join(", ")
        );
        if self.global_phase != 0.0 {
            let _ = writeln!(s, "  \"global_phase\": {},", fmt_f64(self.global_phase));
        }
        if let Some(layers) = layers {
            let ls: Vec<String> = layers.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(s, "  \"layers\": [{}],", ls.join(", "));
        }
        s.push_str("  \"gates\": [");
        for (k, g) in self.gates.iter().enumerate() {
            s.push_str(if k == 0 { "\n    " } else { ",\n    " });
            let qs: Vec<String> = g.qubits.iter().map(|q| q.to_string()).collect();
            let _ = write!(s, "{{\"kind\": \"{}\", \"qubits\": [{}]", g.kind.name(), qs.join(", "));
            if let Some(a) = g.angle {
                let _ = write!(s, ", \"angle\": {}", fmt_f64(a));
            }
            s.push('}');
        }
        s.push_str(if self.gates.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        s
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        #[derive(Deserialize)]
        struct RawGate {
            kind: String,
            qubits: Vec<usize>,
            angle: Option<f64>,
        }
        #[derive(Deserialize)]
        struct Raw {
            version: u32,
            space: String,
            register: Vec<QubitLabel>,
            gates: Vec<RawGate>,
            #[serde(default)]
            global_phase: f64,
        }
        let raw: Raw = serde_json::from_str(text)?;
        if raw.version != 1 {
            return Err(Error::Format(format!("unsupported circuit version {}", raw.version)));
        }
        let space = match raw.space.as_str() {
            "logical" => Space::Logical,
            "physical" => Space::Physical,
            other => return Err(Error::Format(format!("unknown space {other:?}"))),
        };
        let mut c = Circuit::new(space, raw.register);
        c.global_phase = raw.global_phase;
        for g in raw.gates {
            let kind = GateKind::parse(&g.kind)?;
            c.gates.push(Gate::new(kind, g.qubits, g.angle)?);
        }
        c.check()?;
        Ok(c)
    }
}

fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        assert!((canonical_angle(3.0 * PI) - (-PI)).abs() < 1e-12);
        assert!((canonical_angle(2.0 * PI) - 2.0 * PI).abs() < 1e-12);
        assert!((canonical_angle(-2.0 * PI) - 2.0 * PI).abs() < 1e-12);
        assert_eq!(canonical_angle(0.5), 0.5);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut c = Circuit::logical(3);
        c.push(Gate::rz(0, 0.1 + 0.2));
        c.push(Gate::cnot(0, 2));
        c.push(Gate::cp(1, 2, -1.0 / 3.0));
        c.push(Gate::h(1));
        c.global_phase = 0.25;
        let back = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        for (a, b) in back.gates.iter().zip(&c.gates) {
            assert_eq!(a.angle.map(f64::to_bits), b.angle.map(f64::to_bits));
        }
    }

    #[test]
    fn rejects_bad_gates() {
        assert!(Gate::new(GateKind::Cnot, vec![1], None).is_err());
        assert!(Gate::new(GateKind::Rz, vec![1], None).is_err());
        assert!(Gate::new(GateKind::H, vec![1], Some(1.0)).is_err());
        assert!(Gate::new(GateKind::Rz, vec![0], Some(f64::NAN)).is_err());
        let text = r#"{"version":1,"space":"logical","register":[[0]],"gates":[{"kind":"CNOT","qubits":[0,1]}]}"#;
        assert!(Circuit::from_json(text).is_err());
    }
}
