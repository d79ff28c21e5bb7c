//! Conventional reference implementations used as ground truth: a dense
//! state-vector simulator and a direct discrete Fourier transform.
//!
//! Gates are applied axis-wise with 2×2 blocks rather than dense 2ⁿ×2ⁿ
//! matrices. Global phase is tracked exactly — no phase normalization —
//! because the simplex map distinguishes states that differ by one.

use num_complex::Complex64;

use crate::circuit::{Circuit, GateSpec};
use crate::error::{Error, Result};
use crate::gate::Unitary2;
use crate::measure::projection_prob;
use crate::state::{validate_state, Amplitude, StateReport, MAX_QUBITS};
use crate::tensor::map_qubits;

/// A dense 2ⁿ complex state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The logical basis state ∣index⟩.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::BadVectorLength { len: index, expected: dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Tensor product of per-qubit states.
    pub fn from_product(qubits: &[(Amplitude, Amplitude)]) -> Result<Self> {
        if qubits.is_empty() || qubits.len() > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n: qubits.len(), max: MAX_QUBITS });
        }
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for &(c0, c1) in qubits {
            let mut next = Vec::with_capacity(amps.len() * 2);
            for a in &amps {
                next.push(a * c0);
                next.push(a * c1);
            }
            amps = next;
        }
        Self::from_amplitudes(amps)
    }

    /// Wraps a full amplitude vector, checking normalization.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadSequenceLength { len });
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
        }
        let norm_sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sq.is_finite() {
            return Err(Error::NotFinite);
        }
        if (norm_sq - 1.0).abs() > crate::state::NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { n, amps })
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The amplitudes, ∣q₁…q_n⟩ at index (q₁…q_n)₂.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// All 2ⁿ outcome probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Squared norm (should stay 1 through unitary evolution).
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Applies a 2×2 unitary to `slot` (1-based).
    pub fn apply_single(&mut self, slot: usize, u: &Unitary2) {
        let n = self.n;
        assert!(slot >= 1 && slot <= n, "slot out of range");
        let m = u.matrix();
        let stride = 1usize << (n - slot);
        let span = stride * 2;
        let blocks = self.amps.len() / span;
        for blk in 0..blocks {
            let base = blk * span;
            for i in 0..stride {
                let lo = base + i;
                let hi = lo + stride;
                let a = self.amps[lo];
                let b = self.amps[hi];
                self.amps[lo] = m[0][0] * a + m[0][1] * b;
                self.amps[hi] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    /// Applies a controlled unitary, control and target 1-based.
    pub fn apply_controlled(&mut self, control: usize, target: usize, u: &Unitary2) {
        let n = self.n;
        assert!(control >= 1 && control <= n && target >= 1 && target <= n);
        assert_ne!(control, target, "control and target must differ");
        let m = u.matrix();
        let cbit = 1usize << (n - control);
        let tbit = 1usize << (n - target);
        for idx in 0..self.amps.len() {
            if idx & cbit != 0 && idx & tbit == 0 {
                let lo = idx;
                let hi = idx | tbit;
                let a = self.amps[lo];
                let b = self.amps[hi];
                self.amps[lo] = m[0][0] * a + m[0][1] * b;
                self.amps[hi] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    /// Exchanges two qubits.
    pub fn apply_swap(&mut self, a: usize, b: usize) {
        let x = Unitary2::pauli_x();
        self.apply_controlled(a, b, &x);
        self.apply_controlled(b, a, &x);
        self.apply_controlled(a, b, &x);
    }
}

/// Runs a circuit through the state-vector engine. Phase-bookkeeping gates
/// (gamma/omega) act as the identity on amplitudes: they only move where
/// the simplex encoding stores phase.
pub fn sv_simulate(circuit: &Circuit, init: &StateVector) -> Result<StateVector> {
    if init.n() != circuit.n {
        return Err(Error::DimensionMismatch { op: circuit.n, state: init.n() });
    }
    circuit.validate()?;
    let mut state = init.clone();
    for gate in &circuit.gates {
        match gate {
            GateSpec::Single { gate, slot } => state.apply_single(*slot, &gate.unitary()),
            GateSpec::Controlled { gate, control, target } => {
                state.apply_controlled(*control, *target, &gate.unitary())
            }
            GateSpec::Swap { a, b } => state.apply_swap(*a, *b),
            GateSpec::Gamma { .. } | GateSpec::Omega { .. } => {}
        }
    }
    Ok(state)
}

/// Direct O(L²) discrete Fourier transform
/// y_k = (1/√L)·Σ_j e^{2πi·jk/L}·x_j.
pub fn dft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    let len = x.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::BadSequenceLength { len });
    }
    let scale = 1.0 / (len as f64).sqrt();
    let step = std::f64::consts::TAU / len as f64;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, xj) in x.iter().enumerate() {
            acc += Complex64::from_polar(1.0, step * (j * k % len) as f64) * xj;
        }
        out.push(acc * scale);
    }
    Ok(out)
}

/// Inverse of [`dft`].
pub fn idft(y: &[Complex64]) -> Result<Vec<Complex64>> {
    let conj: Vec<Complex64> = y.iter().map(|c| c.conj()).collect();
    Ok(dft(&conj)?.into_iter().map(|c| c.conj()).collect())
}

/// Outcome of a dual-engine comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffReport {
    /// Qubit count.
    pub n: usize,
    /// Largest absolute probability deviation across all 2ⁿ outcomes.
    pub max_abs_dev: f64,
    /// Tolerance the comparison was run at.
    pub tolerance: f64,
    /// Whether every outcome agreed within tolerance.
    pub pass: bool,
    /// Per-outcome probabilities from the simplex engine.
    pub simplex_probs: Vec<f64>,
    /// Per-outcome probabilities from the state-vector engine.
    pub reference_probs: Vec<f64>,
    /// Canonical-form diagnostics of the simplex end state.
    pub state_report: StateReport,
}

/// Runs a circuit through both engines from the same product-state init and
/// compares every outcome probability.
pub fn differential_check(
    circuit: &Circuit,
    init: &[(Amplitude, Amplitude)],
    tolerance: f64,
) -> Result<DiffReport> {
    let n = circuit.n;
    if init.len() != n {
        return Err(Error::DimensionMismatch { op: n, state: init.len() });
    }
    circuit.validate()?;

    let simplex_out = circuit.run_simplex(&map_qubits(init)?)?;
    let reference_out = sv_simulate(circuit, &StateVector::from_product(init)?)?;

    let dim = 1usize << n;
    let mut simplex_probs = Vec::with_capacity(dim);
    for q in 0..dim {
        let bits: Vec<u8> = (0..n).map(|s| ((q >> (n - 1 - s)) & 1) as u8).collect();
        simplex_probs.push(projection_prob(&simplex_out, &bits)?);
    }
    let reference_probs = reference_out.probabilities();

    let max_abs_dev = simplex_probs
        .iter()
        .zip(&reference_probs)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    Ok(DiffReport {
        n,
        max_abs_dev,
        tolerance,
        pass: max_abs_dev <= tolerance,
        simplex_probs,
        reference_probs,
        state_report: validate_state(&simplex_out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::SingleGate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_circuit_textbook() {
        let circuit = Circuit {
            n: 2,
            gates: vec![
                GateSpec::Single { gate: SingleGate::Hadamard, slot: 1 },
                GateSpec::Controlled { gate: SingleGate::PauliX, control: 1, target: 2 },
            ],
        };
        let out = sv_simulate(&circuit, &StateVector::basis(2, 0).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - c(h, 0.0)).norm() < 1e-15);
        assert!(out.amplitudes()[1].norm() < 1e-15);
        assert!(out.amplitudes()[2].norm() < 1e-15);
        assert!((out.amplitudes()[3] - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let init = StateVector::from_product(&[(c(0.6, 0.0), c(0.0, 0.8))]).unwrap();
        let out = sv_simulate(&Circuit::new(1), &init).unwrap();
        assert_eq!(out, init);
    }

    #[test]
    fn phase_gate_keeps_global_phase() {
        let circuit = Circuit {
            n: 1,
            gates: vec![GateSpec::Single { gate: SingleGate::Phase(0.7), slot: 1 }],
        };
        let out = sv_simulate(&circuit, &StateVector::basis(1, 1).unwrap()).unwrap();
        let want = Complex64::from_polar(1.0, 0.7);
        assert!((out.amplitudes()[1] - want).norm() < 1e-15);
    }

    #[test]
    fn norm_preserved_per_gate() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let circuit = crate::circuit::random_circuit(3, 30, &mut rng);
        let mut sv = StateVector::basis(3, 0).unwrap();
        for g in &circuit.gates {
            let step = Circuit { n: 3, gates: vec![g.clone()] };
            sv = sv_simulate(&step, &sv).unwrap();
            assert!((sv.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dft_of_delta_is_uniform() {
        let mut x = vec![c(0.0, 0.0); 8];
        x[0] = c(1.0, 0.0);
        let y = dft(&x).unwrap();
        let want = 1.0 / 8.0_f64.sqrt();
        for v in y {
            assert!((v - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn two_point_dft() {
        let a = c(0.3, 0.4);
        let b = c(-0.1, 0.9);
        let y = dft(&[a, b]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((y[0] - (a + b) * h).norm() < 1e-15);
        assert!((y[1] - (a - b) * h).norm() < 1e-15);
    }

    #[test]
    fn dft_round_trip_and_parseval() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let x: Vec<Complex64> =
            (0..16).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let y = dft(&x).unwrap();
        let back = idft(&y).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
        let ex: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        let ey: f64 = y.iter().map(|v| v.norm_sqr()).sum();
        assert!((ex - ey).abs() < 1e-12);
    }

    #[test]
    fn differential_bell() {
        let circuit = Circuit {
            n: 2,
            gates: vec![
                GateSpec::Single { gate: SingleGate::Hadamard, slot: 1 },
                GateSpec::Controlled { gate: SingleGate::PauliX, control: 1, target: 2 },
            ],
        };
        let init = [(c(1.0, 0.0), c(0.0, 0.0)), (c(1.0, 0.0), c(0.0, 0.0))];
        let report = differential_check(&circuit, &init, 1e-12).unwrap();
        assert!(report.pass, "max dev {}", report.max_abs_dev);
    }

    #[test]
    fn differential_empty_circuit_exact() {
        let init = [(c(1.0, 0.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0))];
        let report = differential_check(&Circuit::new(2), &init, 0.0).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_abs_dev, 0.0);
    }
}
