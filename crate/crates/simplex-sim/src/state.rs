//! The single-qubit map into the probability simplex and the state types
//! built on it.
//!
//! A qubit c₀∣0⟩ + c₁∣1⟩ is stored as a deviation vector
//!
//! ```text
//! p = (x₀, x₁, −x₀, −x₁, y₀, y₁, −y₀, −y₁),   c_b = x_b + i·y_b
//! ```
//!
//! and the probability distribution it represents is s = (u + p)/8, with u
//! the all-ones vector. Every entry of a mapped state is a probability; the
//! real and imaginary parts of the amplitudes live in how far those
//! probabilities deviate from uniform. For n qubits the deviation has 8ⁿ
//! entries and s = (u^⊗n + p)/8ⁿ.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude of a logical basis component.
pub type Amplitude = Complex64;

/// Dimension of a single-qubit simplex vector.
pub const SLOT_DIM: usize = 8;

/// Dense-storage cap on the qubit count (8^8 ≈ 1.7e7 reals per state).
pub const MAX_QUBITS: usize = 8;

/// Tolerance used by the canonical-form diagnostics.
pub const CANONICAL_TOL: f64 = 1e-10;

/// Deviation of a mapped state from the uniform distribution, length 8ⁿ.
///
/// Entries sum to zero and the Euclidean norm of a normalized mapped state
/// is √(2ⁿ). Index layout is 0-based row-major: axis k is qubit k+1, the
/// leftmost tensor factor being qubit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PVec {
    n: usize,
    data: Vec<f64>,
}

impl PVec {
    /// Wraps a raw deviation vector, checking length and finiteness.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
        }
        let expected = SLOT_DIM.pow(n as u32);
        if data.len() != expected {
            return Err(Error::BadVectorLength { len: data.len(), expected });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotFinite);
        }
        Ok(Self { n, data })
    }

    /// All-zero deviation (the uniform distribution).
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
        }
        Ok(Self { n, data: vec![0.0; SLOT_DIM.pow(n as u32)] })
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries as a slice.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Dot product with another deviation of the same size.
    pub fn dot(&self, other: &PVec) -> f64 {
        assert_eq!(self.n, other.n, "deviation size mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// Kronecker product, `self` as the leftmost factor.
    pub fn kron(&self, other: &PVec) -> Result<PVec> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
        }
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(PVec { n, data })
    }

    /// Componentwise `self + coeff * other`.
    pub fn add_scaled(&mut self, coeff: f64, other: &PVec) {
        assert_eq!(self.n, other.n, "deviation size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += coeff * b;
        }
    }

    /// Scales every entry.
    pub fn scale(&mut self, coeff: f64) {
        for a in &mut self.data {
            *a *= coeff;
        }
    }
}

/// A probability-simplex state in canonical form.
///
/// Only the deviation is stored; the uniform part u^⊗n/8ⁿ is implicit and
/// materialized on demand by [`SimplexState::probabilities`]. Every lifted
/// transformation reduces to a linear map on the deviation, and keeping the
/// uniform part symbolic avoids cancellation against it when amplitudes are
/// small.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexState {
    p: PVec,
    order: Option<usize>,
}

impl SimplexState {
    /// Wraps a deviation as an untagged state.
    pub fn from_deviation(p: PVec) -> Self {
        Self { p, order: None }
    }

    /// Wraps a deviation and declares the slot holding the accumulated phase.
    pub fn with_order(p: PVec, sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > p.n() {
            return Err(Error::OrderOutOfRange { sigma, n: p.n() });
        }
        Ok(Self { p, order: Some(sigma) })
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        self.p.n()
    }

    /// The stored deviation.
    pub fn deviation(&self) -> &PVec {
        &self.p
    }

    /// Consumes the state, returning the deviation.
    pub fn into_deviation(self) -> PVec {
        self.p
    }

    /// Phase-order tag, if one has been established.
    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub(crate) fn set_order(&mut self, order: Option<usize>) {
        self.order = order;
    }

    /// Materializes the full probability vector s = (u^⊗n + p)/8ⁿ.
    pub fn probabilities(&self) -> Vec<f64> {
        let scale = 1.0 / (SLOT_DIM.pow(self.n() as u32) as f64);
        self.p.as_slice().iter().map(|v| (1.0 + v) * scale).collect()
    }
}

/// Basis deviation p̄_b for the logical state ∣b⟩, b ∈ {0, 1}.
pub fn p_basis(b: u8) -> PVec {
    assert!(b <= 1, "bit must be 0 or 1");
    p_general(b, Complex64::new(1.0, 0.0))
}

/// Generalized basis deviation P̄_b(c): Re(c) at index b, −Re(c) at b+2,
/// Im(c) at b+4, −Im(c) at b+6.
pub fn p_general(b: u8, c: Amplitude) -> PVec {
    assert!(b <= 1, "bit must be 0 or 1");
    let mut data = vec![0.0; SLOT_DIM];
    let b = b as usize;
    data[b] = c.re;
    data[b + 2] = -c.re;
    data[b + 4] = c.im;
    data[b + 6] = -c.im;
    PVec { n: 1, data }
}

/// Tolerance on the squared norm of input amplitudes.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Maps a normalized qubit c₀∣0⟩ + c₁∣1⟩ to its simplex state.
///
/// Rejects unnormalized or non-finite input rather than clamping; the map is
/// only defined on the unit sphere.
pub fn map_qubit(c0: Amplitude, c1: Amplitude) -> Result<SimplexState> {
    if !(c0.re.is_finite() && c0.im.is_finite() && c1.re.is_finite() && c1.im.is_finite()) {
        return Err(Error::NotFinite);
    }
    let norm_sq = c0.norm_sqr() + c1.norm_sqr();
    if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let mut p = p_general(0, c0);
    p.add_scaled(1.0, &p_general(1, c1));
    Ok(SimplexState::from_deviation(p))
}

/// Exact left-inverse of [`map_qubit`].
///
/// The map is injective but not surjective: vectors violating the
/// equal-magnitude opposite-sign pairing of the deviation layout are not
/// images of any qubit and are rejected.
pub fn unmap_qubit(s: &SimplexState) -> Result<(Amplitude, Amplitude)> {
    assert_eq!(s.n(), 1, "unmap_qubit takes a single-qubit state");
    let p = s.deviation().as_slice();
    let mut residual: f64 = 0.0;
    for i in 0..2 {
        residual = residual.max((p[i] + p[i + 2]).abs());
        residual = residual.max((p[i + 4] + p[i + 6]).abs());
    }
    if residual > 1e-9 {
        return Err(Error::NotCanonical { residual });
    }
    Ok((
        Complex64::new(p[0], p[4]),
        Complex64::new(p[1], p[5]),
    ))
}

/// Diagnostics produced by [`validate_state`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateReport {
    /// Smallest probability entry.
    pub min_entry: f64,
    /// Largest probability entry.
    pub max_entry: f64,
    /// Σs − 1.
    pub sum_deviation: f64,
    /// u·p, the residual of the deviation against the uniform direction.
    pub u_dot_p: f64,
    /// ‖p‖ − √(2ⁿ), the per-qubit norm residual.
    pub norm_residual: f64,
}

impl StateReport {
    /// True when every residual is below `tol` and entries lie in [0, 1].
    ///
    /// Exact zeros are accepted: logical basis states produce them.
    pub fn is_canonical(&self, tol: f64) -> bool {
        self.min_entry >= -tol
            && self.max_entry <= 1.0 + tol
            && self.sum_deviation.abs() <= tol
            && self.u_dot_p.abs() <= tol
            && self.norm_residual.abs() <= tol
    }
}

/// Reports entry range, sum deviation, u·p residual, and norm residual for
/// a state. Purely diagnostic; never fails.
pub fn validate_state(s: &SimplexState) -> StateReport {
    let n = s.n();
    let p = s.deviation().as_slice();
    let dim = p.len() as f64;
    let scale = 1.0 / dim;
    let mut min_entry = f64::INFINITY;
    let mut max_entry = f64::NEG_INFINITY;
    let mut u_dot_p = 0.0;
    for &v in p {
        let entry = (1.0 + v) * scale;
        min_entry = min_entry.min(entry);
        max_entry = max_entry.max(entry);
        u_dot_p += v;
    }
    StateReport {
        min_entry,
        max_entry,
        sum_deviation: u_dot_p * scale,
        u_dot_p,
        norm_residual: s.deviation().norm() - (2.0_f64).powi(n as i32).sqrt(),
    }
}
