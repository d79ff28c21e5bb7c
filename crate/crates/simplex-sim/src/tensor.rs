//! Multi-qubit combination and Kronecker-structured operators.
//!
//! Two states combine through the bi-affine map
//! τ(s₁, s₂) = ½[s₁⊗s₂ + Π(s₁)⊗Π(s₂)], whose sign-flipped copy cancels the
//! cross terms between the uniform parts and the deviations; the result is
//! again canonical with deviation p₁⊗p₂. Folding τ over a list gives the
//! n-qubit product map.
//!
//! Operators are stored as sums of separable terms, each term an n-tuple of
//! 8×8 factors. Application is axis-wise: each non-identity factor is
//! contracted against its own tensor mode, so one term costs O(8·8ⁿ) per
//! non-identity factor and the 8ⁿ×8ⁿ matrix never exists.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{lift_unitary, LiftedFactor, Unitary2};
use crate::state::{map_qubit, Amplitude, PVec, SimplexState, MAX_QUBITS, SLOT_DIM};

/// Reflects a state through the uniform distribution: p → −p.
///
/// On full probabilities this is the entry shuffle (u − p)/8ⁿ; negating the
/// deviation is exact on the mapped subspace.
pub fn pi_reflect(s: &SimplexState) -> SimplexState {
    let mut p = s.deviation().clone();
    p.scale(-1.0);
    let mut out = SimplexState::from_deviation(p);
    out.set_order(s.order());
    out
}

/// The bi-affine combination τ(s₁, s₂) = ½[s₁⊗s₂ + Π(s₁)⊗Π(s₂)].
///
/// In deviation form the cross terms vanish and the output deviation is
/// exactly p₁⊗p₂.
pub fn tau(s1: &SimplexState, s2: &SimplexState) -> Result<SimplexState> {
    let p = s1.deviation().kron(s2.deviation())?;
    Ok(SimplexState::from_deviation(p))
}

/// Right-fold of τ over a non-empty list of single-qubit states:
/// τ(s₁, τ(s₂, … τ(s_{n−1}, s_n))). Associativity of the underlying
/// operation makes the fold direction observationally irrelevant; fixing it
/// keeps outputs bit-reproducible.
pub fn simplex_tensor_n(states: &[SimplexState]) -> Result<SimplexState> {
    assert!(!states.is_empty(), "need at least one state");
    let mut acc = states[states.len() - 1].clone();
    for s in states[..states.len() - 1].iter().rev() {
        acc = tau(s, &acc)?;
    }
    Ok(acc)
}

/// Maps a list of per-qubit amplitude pairs and combines them with τ.
pub fn map_qubits(amps: &[(Amplitude, Amplitude)]) -> Result<SimplexState> {
    assert!(!amps.is_empty(), "need at least one qubit");
    let states = amps
        .iter()
        .map(|&(c0, c1)| map_qubit(c0, c1))
        .collect::<Result<Vec<_>>>()?;
    simplex_tensor_n(&states)
}

/// One slot of a separable term.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    /// Identity; skipped during application.
    Identity,
    /// A dense 8×8 factor.
    Dense(Box<LiftedFactor>),
}

impl Factor {
    fn is_identity(&self) -> bool {
        matches!(self, Factor::Identity)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Term {
    coeff: f64,
    factors: Vec<Factor>,
}

/// A sum of Kronecker-separable operators on n-qubit deviations.
///
/// The semantic matrix is Σ_t coeff_t·(F₁⊗…⊗F_n); it is applied axis-wise
/// and never materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedOp {
    n: usize,
    terms: Vec<Term>,
}

/// Tolerance on the imaginary part of sum-of-separable coefficients.
const COEFF_IMAG_TOL: f64 = 1e-12;

impl LiftedOp {
    /// The identity on n qubits.
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            terms: vec![Term { coeff: 1.0, factors: vec![Factor::Identity; n] }],
        }
    }

    /// Lift of a separable unitary U₁⊗…⊗U_n: one term with factor-wise
    /// lifts. Note this differs from lifting the 2ⁿ×2ⁿ product matrix with
    /// the single-factor formula; the factor-wise form is the defined one.
    pub fn separable(us: &[Unitary2]) -> Self {
        let factors = us
            .iter()
            .map(|u| Factor::Dense(Box::new(lift_unitary(u))))
            .collect();
        Self { n: us.len(), terms: vec![Term { coeff: 1.0, factors }] }
    }

    /// A single-qubit gate embedded at `slot` (1-based) with identities
    /// elsewhere.
    pub fn single(n: usize, slot: usize, u: &Unitary2) -> Result<Self> {
        if slot == 0 || slot > n {
            return Err(Error::SlotOutOfRange { slot, n });
        }
        let mut factors = vec![Factor::Identity; n];
        factors[slot - 1] = Factor::Dense(Box::new(lift_unitary(u)));
        Ok(Self { n, terms: vec![Term { coeff: 1.0, factors }] })
    }

    /// Controlled unitary with arbitrary control/target slots (1-based):
    /// (P̃₀ at control) + (P̃₁ at control, M[U] at target).
    pub fn controlled(n: usize, control: usize, target: usize, u: &Unitary2) -> Result<Self> {
        if control == 0 || control > n {
            return Err(Error::SlotOutOfRange { slot: control, n });
        }
        if target == 0 || target > n {
            return Err(Error::SlotOutOfRange { slot: target, n });
        }
        if control == target {
            return Err(Error::ControlEqualsTarget { slot: control });
        }
        let mut keep = vec![Factor::Identity; n];
        keep[control - 1] = Factor::Dense(Box::new(LiftedFactor::projector(0)));
        let mut act = vec![Factor::Identity; n];
        act[control - 1] = Factor::Dense(Box::new(LiftedFactor::projector(1)));
        act[target - 1] = Factor::Dense(Box::new(lift_unitary(u)));
        Ok(Self {
            n,
            terms: vec![
                Term { coeff: 1.0, factors: keep },
                Term { coeff: 1.0, factors: act },
            ],
        })
    }

    /// Lift of Σ_j a_j·(B_{j,1}⊗…⊗B_{j,n}) with real weights a_j and
    /// arbitrary 2×2 complex factors, each factor lifted independently.
    /// Complex weights are rejected: only real combinations of lifts track
    /// the corresponding operator sum.
    pub fn sum_separable(
        n: usize,
        terms: &[(Complex64, Vec<[[Complex64; 2]; 2]>)],
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (coeff, factors) in terms {
            if coeff.im.abs() > COEFF_IMAG_TOL {
                return Err(Error::ComplexCoefficient { im: coeff.im });
            }
            if factors.len() != n {
                return Err(Error::DimensionMismatch { op: factors.len(), state: n });
            }
            out.push(Term {
                coeff: coeff.re,
                factors: factors
                    .iter()
                    .map(|f| Factor::Dense(Box::new(LiftedFactor::from_matrix2(f))))
                    .collect(),
            });
        }
        Ok(Self { n, terms: out })
    }

    pub(crate) fn from_projector_string(bits: &[u8]) -> Self {
        let factors = bits
            .iter()
            .map(|&b| Factor::Dense(Box::new(LiftedFactor::projector(b))))
            .collect();
        Self { n: bits.len(), terms: vec![Term { coeff: 1.0, factors }] }
    }

    pub(crate) fn from_factor_terms(n: usize, terms: Vec<(f64, Vec<Factor>)>) -> Self {
        Self {
            n,
            terms: terms
                .into_iter()
                .map(|(coeff, factors)| Term { coeff, factors })
                .collect(),
        }
    }

    /// Qubit count the operator acts on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of separable terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Operator composition `other` then `self`, expanded term-by-term via
    /// (A₁⊗…⊗A_n)(B₁⊗…⊗B_n) = A₁B₁⊗…⊗A_nB_n. Term counts multiply.
    pub fn after(&self, other: &LiftedOp) -> Result<LiftedOp> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { op: self.n, state: other.n });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let factors = a
                    .factors
                    .iter()
                    .zip(&b.factors)
                    .map(|(fa, fb)| match (fa, fb) {
                        (Factor::Identity, f) => f.clone(),
                        (f, Factor::Identity) => f.clone(),
                        (Factor::Dense(ma), Factor::Dense(mb)) => {
                            Factor::Dense(Box::new(ma.compose(mb)))
                        }
                    })
                    .collect();
                terms.push(Term { coeff: a.coeff * b.coeff, factors });
            }
        }
        Ok(LiftedOp { n: self.n, terms })
    }

    /// Applies the operator to a deviation vector.
    pub fn apply_deviation(&self, p: &PVec) -> Result<PVec> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch { op: self.n, state: p.n() });
        }
        let mut acc = vec![0.0; p.as_slice().len()];
        let mut scratch = p.as_slice().to_vec();
        for term in &self.terms {
            if term.factors.iter().all(Factor::is_identity) {
                for (a, v) in acc.iter_mut().zip(p.as_slice()) {
                    *a += term.coeff * v;
                }
                continue;
            }
            scratch.copy_from_slice(p.as_slice());
            for (slot0, factor) in term.factors.iter().enumerate() {
                if let Factor::Dense(m) = factor {
                    mode_apply(&mut scratch, self.n, slot0, m);
                }
            }
            for (a, v) in acc.iter_mut().zip(&scratch) {
                *a += term.coeff * v;
            }
        }
        PVec::new(self.n, acc)
    }

    /// Applies the operator to a state. The phase-order tag is dropped:
    /// a general operator scatters stored phases.
    pub fn apply(&self, s: &SimplexState) -> Result<SimplexState> {
        Ok(SimplexState::from_deviation(self.apply_deviation(s.deviation())?))
    }
}

/// Contracts an 8×8 matrix against tensor mode `slot0` (0-based) of a dense
/// 8ⁿ vector, in place.
///
/// Gate factors are sparse (projectors are diagonal, most lifts carry one
/// or two entries per row), so rows are scanned once up front and only the
/// nonzero entries participate in the fiber products.
pub(crate) fn mode_apply(data: &mut [f64], n: usize, slot0: usize, m: &LiftedFactor) {
    debug_assert!(slot0 < n);
    let stride = SLOT_DIM.pow((n - 1 - slot0) as u32);
    let block = stride * SLOT_DIM;
    let outer = data.len() / block;
    let mat = m.matrix();

    let mut rows = [[(0usize, 0.0f64); SLOT_DIM]; SLOT_DIM];
    let mut counts = [0usize; SLOT_DIM];
    for (r, row) in mat.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v != 0.0 {
                rows[r][counts[r]] = (c, v);
                counts[r] += 1;
            }
        }
    }

    let mut vals = [0.0; SLOT_DIM];
    for o in 0..outer {
        let base_o = o * block;
        for i in 0..stride {
            let base = base_o + i;
            for (k, v) in vals.iter_mut().enumerate() {
                *v = data[base + k * stride];
            }
            for r in 0..SLOT_DIM {
                let mut acc = 0.0;
                for &(c, v) in &rows[r][..counts[r]] {
                    acc += v * vals[c];
                }
                data[base + r * stride] = acc;
            }
        }
    }
}

/// Builds the σ-ordered image of a full 2ⁿ amplitude vector: the deviation
/// Σ_q P_q^{(σ)}(c_q), with each amplitude's real part on the all-logical
/// digit pattern of q and its imaginary part on the same pattern with digit
/// σ raised by 4.
pub fn map_amplitudes(amps: &[Complex64], sigma: usize) -> Result<SimplexState> {
    let len = amps.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::BadSequenceLength { len });
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::CapacityExceeded { n, max: MAX_QUBITS });
    }
    if sigma == 0 || sigma > n {
        return Err(Error::OrderOutOfRange { sigma, n });
    }
    let norm_sq: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > crate::state::NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    if amps.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::NotFinite);
    }
    let data = sigma_deviation(amps, n, sigma);
    SimplexState::with_order(PVec::new(n, data)?, sigma)
}

/// Raw deviation of the σ-ordered encoding Σ_q P_q^{(σ)}(c_q); no
/// normalization requirement.
pub(crate) fn sigma_deviation(amps: &[Complex64], n: usize, sigma: usize) -> Vec<f64> {
    let mut data = vec![0.0; SLOT_DIM.pow(n as u32)];
    let im_shift = 4 * SLOT_DIM.pow((n - sigma) as u32);
    for (q, c) in amps.iter().enumerate() {
        // every subset of slots may sit on the negated copy (digit +2);
        // the sign is the parity of the subset
        for mask in 0..(1usize << n) {
            let mut flat = 0usize;
            let mut sign = 1.0;
            for slot in 0..n {
                let bit = (q >> (n - 1 - slot)) & 1;
                let neg = (mask >> slot) & 1;
                if neg == 1 {
                    sign = -sign;
                }
                flat = flat * SLOT_DIM + bit + 2 * neg;
            }
            data[flat] += sign * c.re;
            data[flat + im_shift] += sign * c.im;
        }
    }
    data
}
