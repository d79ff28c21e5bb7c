//! Gate descriptors and circuits, with a stable JSON form.
//!
//! The wire format is an object per gate: `{"kind": str, "slots": [int…],
//! "param": float?, "k": int?}` with 1-based slots. Controlled gates list
//! `[control, target]`.

use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gate::Unitary2;
use crate::ordering::OrderOp;
use crate::state::SimplexState;
use crate::tensor::LiftedOp;

/// A single-qubit gate kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingleGate {
    /// Hadamard.
    Hadamard,
    /// Pauli X.
    PauliX,
    /// Pauli Y.
    PauliY,
    /// Pauli Z.
    PauliZ,
    /// Rabi rotation through θ.
    Rabi(f64),
    /// Phase gate diag(1, e^{iφ}).
    Phase(f64),
    /// Fourier rotation diag(1, e^{2πi/2ᵏ}).
    Rotation(u32),
}

impl SingleGate {
    /// The 2×2 unitary.
    pub fn unitary(&self) -> Unitary2 {
        match *self {
            SingleGate::Hadamard => Unitary2::hadamard(),
            SingleGate::PauliX => Unitary2::pauli_x(),
            SingleGate::PauliY => Unitary2::pauli_y(),
            SingleGate::PauliZ => Unitary2::pauli_z(),
            SingleGate::Rabi(theta) => Unitary2::rabi(theta),
            SingleGate::Phase(phi) => Unitary2::phase(phi),
            SingleGate::Rotation(k) => Unitary2::rotation_rk(k),
        }
    }

    fn kind_str(&self) -> &'static str {
        match self {
            SingleGate::Hadamard => "h",
            SingleGate::PauliX => "x",
            SingleGate::PauliY => "y",
            SingleGate::PauliZ => "z",
            SingleGate::Rabi(_) => "rabi",
            SingleGate::Phase(_) => "phase",
            SingleGate::Rotation(_) => "rk",
        }
    }
}

/// One gate of a circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    /// A single-qubit gate at `slot`.
    Single {
        /// The gate.
        gate: SingleGate,
        /// Target slot, 1-based.
        slot: usize,
    },
    /// A controlled single-qubit gate.
    Controlled {
        /// The gate applied to the target when the control is set.
        gate: SingleGate,
        /// Control slot, 1-based.
        control: usize,
        /// Target slot, 1-based.
        target: usize,
    },
    /// Exchange of two qubits.
    Swap {
        /// First slot.
        a: usize,
        /// Second slot.
        b: usize,
    },
    /// Phase collection into slot σ.
    Gamma {
        /// Destination slot for the accumulated phase.
        sigma: usize,
    },
    /// Adjacent phase switch on slots (j, j+1).
    Omega {
        /// Left slot of the pair.
        j: usize,
    },
}

/// What a gate becomes on the simplex side.
pub enum SimplexAction {
    /// A sum-of-separable operator.
    Lifted(LiftedOp),
    /// A chain of adjacent-pair ordering stages.
    Order(OrderOp),
}

impl GateSpec {
    /// Checks slot indices against a qubit count.
    pub fn validate(&self, n: usize) -> Result<()> {
        let check = |slot: usize| {
            if slot == 0 || slot > n {
                Err(Error::SlotOutOfRange { slot, n })
            } else {
                Ok(())
            }
        };
        match self {
            GateSpec::Single { slot, .. } => check(*slot),
            GateSpec::Controlled { control, target, .. } => {
                check(*control)?;
                check(*target)?;
                if control == target {
                    return Err(Error::ControlEqualsTarget { slot: *control });
                }
                Ok(())
            }
            GateSpec::Swap { a, b } => {
                check(*a)?;
                check(*b)?;
                if a == b {
                    return Err(Error::ControlEqualsTarget { slot: *a });
                }
                Ok(())
            }
            GateSpec::Gamma { sigma } => {
                if *sigma == 0 || *sigma > n {
                    Err(Error::OrderOutOfRange { sigma: *sigma, n })
                } else {
                    Ok(())
                }
            }
            GateSpec::Omega { j } => {
                if *j == 0 || *j + 1 > n {
                    Err(Error::SlotOutOfRange { slot: *j, n })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The simplex-side action of this gate on n qubits. Every descriptor
    /// maps to exactly one action; the match is exhaustive by construction.
    pub fn simplex_action(&self, n: usize) -> Result<SimplexAction> {
        self.validate(n)?;
        Ok(match self {
            GateSpec::Single { gate, slot } => {
                SimplexAction::Lifted(LiftedOp::single(n, *slot, &gate.unitary())?)
            }
            GateSpec::Controlled { gate, control, target } => {
                SimplexAction::Lifted(LiftedOp::controlled(n, *control, *target, &gate.unitary())?)
            }
            GateSpec::Swap { a, b } => SimplexAction::Lifted(swap_op(n, *a, *b)?),
            GateSpec::Gamma { sigma } => SimplexAction::Order(OrderOp::gamma_n(n, *sigma)?),
            GateSpec::Omega { j } => SimplexAction::Order(OrderOp::omega_n(n, *j)?),
        })
    }
}

/// SWAP of slots a and b as the three-CNOT composition, expanded into one
/// sum-of-separable operator. Exchanges logical bits; stored phases stay in
/// their slots.
pub fn swap_op(n: usize, a: usize, b: usize) -> Result<LiftedOp> {
    let x = Unitary2::pauli_x();
    let ab = LiftedOp::controlled(n, a, b, &x)?;
    let ba = LiftedOp::controlled(n, b, a, &x)?;
    ab.after(&ba)?.after(&ab)
}

/// An ordered list of gates on n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    /// Qubit count.
    pub n: usize,
    /// Gates, applied front to back.
    pub gates: Vec<GateSpec>,
}

impl Circuit {
    /// An empty circuit.
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    /// Checks every gate's slot indices.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            g.validate(self.n)?;
        }
        Ok(())
    }

    /// Runs the circuit on a simplex state, gate by gate.
    pub fn run_simplex(&self, init: &SimplexState) -> Result<SimplexState> {
        if init.n() != self.n {
            return Err(Error::DimensionMismatch { op: self.n, state: init.n() });
        }
        let mut state = init.clone();
        for gate in &self.gates {
            state = match gate.simplex_action(self.n)? {
                SimplexAction::Lifted(op) => op.apply(&state)?,
                SimplexAction::Order(op) => op.apply(&state)?,
            };
        }
        Ok(state)
    }
}

/// Raw JSON shape of one gate.
#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: String,
    slots: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    param: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
}

impl Serialize for GateSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = match self {
            GateSpec::Single { gate, slot } => GateRecord {
                kind: gate.kind_str().to_string(),
                slots: vec![*slot],
                param: match gate {
                    SingleGate::Rabi(t) | SingleGate::Phase(t) => Some(*t),
                    _ => None,
                },
                k: match gate {
                    SingleGate::Rotation(k) => Some(*k),
                    _ => None,
                },
            },
            GateSpec::Controlled { gate, control, target } => GateRecord {
                kind: format!("c{}", gate.kind_str()),
                slots: vec![*control, *target],
                param: match gate {
                    SingleGate::Rabi(t) | SingleGate::Phase(t) => Some(*t),
                    _ => None,
                },
                k: match gate {
                    SingleGate::Rotation(k) => Some(*k),
                    _ => None,
                },
            },
            GateSpec::Swap { a, b } => GateRecord {
                kind: "swap".to_string(),
                slots: vec![*a, *b],
                param: None,
                k: None,
            },
            GateSpec::Gamma { sigma } => GateRecord {
                kind: "gamma".to_string(),
                slots: vec![*sigma],
                param: None,
                k: None,
            },
            GateSpec::Omega { j } => GateRecord {
                kind: "omega".to_string(),
                slots: vec![*j],
                param: None,
                k: None,
            },
        };
        rec.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GateSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rec = GateRecord::deserialize(de)?;
        let one_slot = |rec: &GateRecord| -> std::result::Result<usize, D::Error> {
            if rec.slots.len() != 1 {
                return Err(D::Error::custom(format!(
                    "gate '{}' takes 1 slot, got {}",
                    rec.kind,
                    rec.slots.len()
                )));
            }
            Ok(rec.slots[0])
        };
        let two_slots = |rec: &GateRecord| -> std::result::Result<(usize, usize), D::Error> {
            if rec.slots.len() != 2 {
                return Err(D::Error::custom(format!(
                    "gate '{}' takes 2 slots, got {}",
                    rec.kind,
                    rec.slots.len()
                )));
            }
            Ok((rec.slots[0], rec.slots[1]))
        };
        let param = |rec: &GateRecord| -> std::result::Result<f64, D::Error> {
            rec.param
                .ok_or_else(|| D::Error::custom(format!("gate '{}' needs a param", rec.kind)))
        };
        let k_of = |rec: &GateRecord| -> std::result::Result<u32, D::Error> {
            let k = rec
                .k
                .ok_or_else(|| D::Error::custom(format!("gate '{}' needs k", rec.kind)))?;
            if k == 0 {
                return Err(D::Error::custom("rotation index k must be at least 1"));
            }
            Ok(k)
        };

        let (base, controlled) = match rec.kind.strip_prefix('c') {
            // "c" alone isn't a gate; bare kinds that happen to start with
            // 'c' would be matched here first, but none do
            Some(rest) if !rest.is_empty() => (rest.to_string(), true),
            _ => (rec.kind.clone(), false),
        };

        let single = match base.as_str() {
            "h" => Some(SingleGate::Hadamard),
            "x" => Some(SingleGate::PauliX),
            "y" => Some(SingleGate::PauliY),
            "z" => Some(SingleGate::PauliZ),
            "rabi" => Some(SingleGate::Rabi(param(&rec)?)),
            "phase" => Some(SingleGate::Phase(param(&rec)?)),
            "rk" => Some(SingleGate::Rotation(k_of(&rec)?)),
            _ => None,
        };

        if let Some(gate) = single {
            if controlled {
                let (control, target) = two_slots(&rec)?;
                return Ok(GateSpec::Controlled { gate, control, target });
            }
            return Ok(GateSpec::Single { gate, slot: one_slot(&rec)? });
        }

        match rec.kind.as_str() {
            "swap" => {
                let (a, b) = two_slots(&rec)?;
                Ok(GateSpec::Swap { a, b })
            }
            "gamma" => Ok(GateSpec::Gamma { sigma: one_slot(&rec)? }),
            "omega" => Ok(GateSpec::Omega { j: one_slot(&rec)? }),
            other => Err(D::Error::custom(format!("unknown gate kind '{other}'"))),
        }
    }
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            n: usize,
            gates: &'a [GateSpec],
        }
        Raw { n: self.n, gates: &self.gates }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            gates: Vec<GateSpec>,
        }
        let raw = Raw::deserialize(de)?;
        let circuit = Circuit { n: raw.n, gates: raw.gates };
        circuit.validate().map_err(D::Error::custom)?;
        Ok(circuit)
    }
}

/// Draws a random circuit over the differential-test gate set
/// {H, Y_θ, Z_φ, C-R_k, CNOT, SWAP}.
pub fn random_circuit<R: Rng>(n: usize, depth: usize, rng: &mut R) -> Circuit {
    assert!(n >= 2, "random circuits need at least two qubits");
    let mut gates = Vec::with_capacity(depth);
    for _ in 0..depth {
        let pick = rng.gen_range(0..6);
        let gate = match pick {
            0 => GateSpec::Single { gate: SingleGate::Hadamard, slot: rng.gen_range(1..=n) },
            1 => GateSpec::Single {
                gate: SingleGate::Rabi(rng.gen_range(0.0..std::f64::consts::TAU)),
                slot: rng.gen_range(1..=n),
            },
            2 => GateSpec::Single {
                gate: SingleGate::Phase(rng.gen_range(0.0..std::f64::consts::TAU)),
                slot: rng.gen_range(1..=n),
            },
            3 => {
                let (control, target) = distinct_pair(n, rng);
                GateSpec::Controlled {
                    gate: SingleGate::Rotation(rng.gen_range(1..=4)),
                    control,
                    target,
                }
            }
            4 => {
                let (control, target) = distinct_pair(n, rng);
                GateSpec::Controlled { gate: SingleGate::PauliX, control, target }
            }
            _ => {
                let (a, b) = distinct_pair(n, rng);
                GateSpec::Swap { a, b }
            }
        };
        gates.push(gate);
    }
    Circuit { n, gates }
}

fn distinct_pair<R: Rng>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(1..=n);
    let mut b = rng.gen_range(1..=n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}
