//! Measurement quantities computed from simplex states.
//!
//! All expectations go through the deviation-space bilinear form
//!
//! ```text
//! ⟨A⟩ = (pᵀ · M_n[A] · p) / 2ⁿ
//! ```
//!
//! rather than full probability vectors: the measurement signal in the
//! overlap form shrinks as 4⁻ⁿ against the dominant uniform term, and the
//! deviation path sidesteps that cancellation entirely.
//!
//! Projection probabilities first collect scattered per-slot phases into a
//! single slot (the Γ cascade). After entangling gates mix phase-carrying
//! slots, the raw bilinear pairing sees only per-slot real parts and
//! misses cross-slot phase interference; on a phase-collected state the
//! pairing with a logical projector is exact.

use num_complex::Complex64;

use crate::cmat::CMat;
use crate::error::{Error, Result};
use crate::gate::LiftedFactor;
use crate::ordering::OrderOp;
use crate::state::{Amplitude, SimplexState, SLOT_DIM};
use crate::tensor::{sigma_deviation, Factor, LiftedOp};

/// Tolerance on A − A† for observable construction.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// One factor of a Pauli string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    /// Identity.
    I,
    /// σ_x.
    X,
    /// σ_y.
    Y,
    /// σ_z.
    Z,
}

impl Pauli {
    /// The 2×2 matrix.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match self {
            Pauli::I => [[one, zero], [zero, one]],
            Pauli::X => [[zero, one], [one, zero]],
            Pauli::Y => [[zero, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), zero]],
            Pauli::Z => [[one, zero], [zero, -one]],
        }
    }

    fn all() -> [Pauli; 4] {
        [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]
    }
}

/// A quantum observable, either dense Hermitian or a structured sum of
/// real-weighted Pauli tensor strings.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    /// Dense 2ⁿ×2ⁿ Hermitian matrix.
    Dense {
        /// Qubit count.
        n: usize,
        /// The matrix.
        matrix: CMat,
    },
    /// Real-weighted Pauli strings.
    PauliSum {
        /// Qubit count.
        n: usize,
        /// (weight, string) pairs; weights are real by construction.
        terms: Vec<(f64, Vec<Pauli>)>,
    },
    /// The logical-basis projector ∣q⟩⟨q∣.
    Projector {
        /// Bits of q, leftmost = qubit 1.
        bits: Vec<u8>,
    },
}

impl Observable {
    /// Wraps a dense matrix, rejecting non-Hermitian input.
    pub fn dense(matrix: CMat) -> Result<Self> {
        let dim = matrix.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::BadSequenceLength { len: dim });
        }
        let dev = matrix.hermiticity_residual();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { dev });
        }
        Ok(Observable::Dense { n: dim.trailing_zeros() as usize, matrix })
    }

    /// Builds a real-weighted Pauli-string sum.
    pub fn pauli_sum(n: usize, terms: Vec<(f64, Vec<Pauli>)>) -> Result<Self> {
        for (w, string) in &terms {
            if !w.is_finite() {
                return Err(Error::NotFinite);
            }
            if string.len() != n {
                return Err(Error::DimensionMismatch { op: string.len(), state: n });
            }
        }
        Ok(Observable::PauliSum { n, terms })
    }

    /// The projector onto logical pattern `bits`.
    pub fn projector(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        Observable::Projector { bits: bits.to_vec() }
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        match self {
            Observable::Dense { n, .. } => *n,
            Observable::PauliSum { n, .. } => *n,
            Observable::Projector { bits } => bits.len(),
        }
    }

    /// Expands into real-weighted Pauli strings.
    ///
    /// Dense matrices decompose through the trace pairing; Hermiticity makes
    /// every weight real (imaginary dust is discarded after a residual
    /// check at construction).
    pub fn to_pauli_sum(&self) -> Vec<(f64, Vec<Pauli>)> {
        match self {
            Observable::PauliSum { terms, .. } => terms.clone(),
            Observable::Projector { bits } => projector_pauli_terms(bits),
            Observable::Dense { n, matrix } => {
                let n = *n;
                let mut terms = Vec::new();
                let mut string = vec![Pauli::I; n];
                decompose_rec(matrix, n, 0, &mut string, &mut terms);
                terms
            }
        }
    }

    /// The dense matrix form (used by reference-side oracles).
    pub fn to_matrix(&self) -> CMat {
        match self {
            Observable::Dense { matrix, .. } => matrix.clone(),
            Observable::PauliSum { n, terms } => {
                let dim = 1usize << n;
                let mut acc = CMat::new(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
                    .expect("square");
                for (w, string) in terms {
                    let mut m = CMat::identity(1);
                    for p in string {
                        m = m.kron(&CMat::from_2x2(&p.matrix()));
                    }
                    for r in 0..dim {
                        for c in 0..dim {
                            *acc.entry_mut(r, c) += Complex64::new(*w, 0.0) * m.entry(r, c);
                        }
                    }
                }
                acc
            }
            Observable::Projector { bits } => {
                let n = bits.len();
                let dim = 1usize << n;
                let mut index = 0usize;
                for &b in bits {
                    index = (index << 1) | b as usize;
                }
                let mut m = CMat::new(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
                    .expect("square");
                *m.entry_mut(index, index) = Complex64::new(1.0, 0.0);
                m
            }
        }
    }
}

fn decompose_rec(
    a: &CMat,
    n: usize,
    slot: usize,
    string: &mut Vec<Pauli>,
    out: &mut Vec<(f64, Vec<Pauli>)>,
) {
    if slot == n {
        let mut s = CMat::identity(1);
        for p in string.iter() {
            s = s.kron(&CMat::from_2x2(&p.matrix()));
        }
        // w = Tr(S·A)/2^n; S is Hermitian so the trace of S·A is real for
        // Hermitian A
        let dim = a.dim();
        let mut tr = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            for k in 0..dim {
                tr += s.entry(r, k) * a.entry(k, r);
            }
        }
        let w = tr.re / dim as f64;
        if w.abs() > 1e-14 {
            out.push((w, string.clone()));
        }
        return;
    }
    for p in Pauli::all() {
        string[slot] = p;
        decompose_rec(a, n, slot + 1, string, out);
    }
    string[slot] = Pauli::I;
}

fn projector_pauli_terms(bits: &[u8]) -> Vec<(f64, Vec<Pauli>)> {
    // |q><q| = prod (I + (-1)^{q_i} Z)/2: one string per subset of slots
    let n = bits.len();
    let scale = 1.0 / (1u64 << n) as f64;
    let mut terms = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let mut string = vec![Pauli::I; n];
        let mut sign = 1.0;
        for (slot, p) in string.iter_mut().enumerate() {
            if (mask >> slot) & 1 == 1 {
                *p = Pauli::Z;
                if bits[slot] == 1 {
                    sign = -sign;
                }
            }
        }
        terms.push((sign * scale, string));
    }
    terms
}

/// Lifts an observable to its deviation-space operator.
///
/// For one qubit the dense block form I₄⊗Re(A) + Λ⊗Im(A) is used directly.
/// Multi-qubit observables lift string-by-string with factor-wise lifts;
/// logical projectors on more than three qubits place the diagonal
/// projection factors directly instead of expanding 2ⁿ strings (the two
/// routes act identically).
pub fn lift_observable(a: &Observable) -> LiftedOp {
    let n = a.n();
    match a {
        Observable::Dense { matrix, .. } if n == 1 => {
            let m = [
                [matrix.entry(0, 0), matrix.entry(0, 1)],
                [matrix.entry(1, 0), matrix.entry(1, 1)],
            ];
            LiftedOp::from_factor_terms(
                1,
                vec![(1.0, vec![Factor::Dense(Box::new(LiftedFactor::from_matrix2(&m)))])],
            )
        }
        Observable::Projector { bits } if n > 3 => LiftedOp::from_projector_string(bits),
        _ => {
            let terms = a
                .to_pauli_sum()
                .into_iter()
                .map(|(w, string)| {
                    let factors = string
                        .into_iter()
                        .map(|p| match p {
                            Pauli::I => Factor::Identity,
                            other => Factor::Dense(Box::new(LiftedFactor::from_matrix2(&other.matrix()))),
                        })
                        .collect();
                    (w, factors)
                })
                .collect();
            LiftedOp::from_factor_terms(n, terms)
        }
    }
}

/// Single-qubit outcome probabilities (|c₀|², |c₁|²) read straight off the
/// deviation components: |c₀|² = p₀² + p₄², |c₁|² = p₁² + p₅².
pub fn qubit_probs(s: &SimplexState) -> (f64, f64) {
    assert_eq!(s.n(), 1, "qubit_probs takes a single-qubit state");
    let p = s.deviation().as_slice();
    (p[0] * p[0] + p[4] * p[4], p[1] * p[1] + p[5] * p[5])
}

/// Expectation ⟨ψ∣A∣ψ⟩ of the pre-image state, computed entirely in
/// deviation space.
pub fn expect_p(a: &Observable, s: &SimplexState) -> Result<f64> {
    if a.n() != s.n() {
        return Err(Error::DimensionMismatch { op: a.n(), state: s.n() });
    }
    let lifted = lift_observable(a);
    let image = lifted.apply_deviation(s.deviation())?;
    Ok(s.deviation().dot(&image) / (1u64 << s.n()) as f64)
}

/// The overlap measurement sᵀ·T[A](s) = (1 + ⟨A⟩/4ⁿ)/8ⁿ.
///
/// Computed from the deviation bilinear form; the identity with the direct
/// probability-space dot product relies on M_n[A]·p staying orthogonal to
/// the uniform direction, which is checked here.
pub fn expect_overlap(a: &Observable, s: &SimplexState) -> Result<f64> {
    if a.n() != s.n() {
        return Err(Error::DimensionMismatch { op: a.n(), state: s.n() });
    }
    let n = s.n();
    let lifted = lift_observable(a);
    let image = lifted.apply_deviation(s.deviation())?;
    let u_residual: f64 = image.as_slice().iter().sum();
    debug_assert!(
        u_residual.abs() < 1e-8 * (1.0 + image.norm()),
        "lifted observable image left the uniform-orthogonal subspace"
    );
    let dim = (SLOT_DIM as f64).powi(n as i32);
    let expectation = s.deviation().dot(&image) / (1u64 << n) as f64;
    Ok((1.0 + expectation / (4.0_f64).powi(n as i32)) / dim)
}

/// Probability |⟨q∣ψ⟩|² of the logical outcome `q`.
///
/// Untagged states are first phase-collected into slot 1; the projector
/// pairing is then exact. States already carrying an order tag are paired
/// directly.
pub fn projection_prob(s: &SimplexState, q: &[u8]) -> Result<f64> {
    let n = s.n();
    if q.len() != n {
        return Err(Error::BitstringLength { len: q.len(), n });
    }
    let collected;
    let state = if s.order().is_some() || n == 1 {
        s
    } else {
        collected = OrderOp::gamma_n(n, 1)?.apply(s)?;
        &collected
    };
    expect_p(&Observable::projector(q), state)
}

/// Reads the 2ⁿ amplitudes out of a σ-ordered state: Re(c_q) sits on the
/// all-logical digit pattern of q, Im(c_q) on the same pattern with digit σ
/// raised by 4. Rejects states without that support structure.
pub fn extract_amplitudes(s: &SimplexState, sigma: usize) -> Result<Vec<Amplitude>> {
    let n = s.n();
    if sigma == 0 || sigma > n {
        return Err(Error::OrderOutOfRange { sigma, n });
    }
    let p = s.deviation().as_slice();
    let im_shift = 4 * SLOT_DIM.pow((n - sigma) as u32);
    let mut amps = Vec::with_capacity(1 << n);
    for q in 0..(1usize << n) {
        let mut flat = 0usize;
        for slot in 0..n {
            flat = flat * SLOT_DIM + ((q >> (n - 1 - slot)) & 1);
        }
        amps.push(Complex64::new(p[flat], p[flat + im_shift]));
    }
    // the extraction is only faithful if the state really has the
    // sigma-ordered support; rebuild and compare
    let rebuilt = sigma_deviation(&amps, n, sigma);
    let mut residual: f64 = 0.0;
    for (got, want) in p.iter().zip(&rebuilt) {
        residual = residual.max((got - want).abs());
    }
    if residual > 1e-8 {
        return Err(Error::NotOrdered { sigma, residual });
    }
    Ok(amps)
}
