//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by state construction, operator construction, and
/// execution paths.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input amplitudes do not satisfy |c0|^2 + |c1|^2 = 1.
    #[error("amplitudes are not normalized: |c0|^2 + |c1|^2 = {norm_sq}")]
    NotNormalized {
        /// The offending squared norm.
        norm_sq: f64,
    },

    /// A value that must be finite is NaN or infinite.
    #[error("non-finite value in input")]
    NotFinite,

    /// A matrix that must be unitary is not.
    #[error("matrix is not unitary (max |U†U - I| entry = {dev:.3e})")]
    NotUnitary {
        /// Largest absolute entry of U†U − I.
        dev: f64,
    },

    /// A matrix that must be Hermitian is not.
    #[error("observable is not Hermitian (max |A - A†| entry = {dev:.3e})")]
    NotHermitian {
        /// Largest absolute entry of A − A†.
        dev: f64,
    },

    /// A deviation vector violates the sign structure required of mapped
    /// states (equal-magnitude, opposite-sign component pairs).
    #[error("vector violates the deviation sign structure (residual {residual:.3e})")]
    NotCanonical {
        /// Largest violation of the pairing.
        residual: f64,
    },

    /// Requested qubit count exceeds the dense-storage cap.
    #[error("qubit count {n} exceeds the dense-storage cap of {max}")]
    CapacityExceeded {
        /// Requested count.
        n: usize,
        /// Maximum supported count.
        max: usize,
    },

    /// A 1-based slot index is outside `1..=n`.
    #[error("slot {slot} out of range for {n} qubits")]
    SlotOutOfRange {
        /// Offending slot.
        slot: usize,
        /// Qubit count.
        n: usize,
    },

    /// Control and target of a controlled gate coincide.
    #[error("control and target must differ (both {slot})")]
    ControlEqualsTarget {
        /// The repeated slot.
        slot: usize,
    },

    /// Operator and state qubit counts differ.
    #[error("operator acts on {op} qubits but state has {state}")]
    DimensionMismatch {
        /// Operator qubit count.
        op: usize,
        /// State qubit count.
        state: usize,
    },

    /// A sum-of-separable coefficient has a nonzero imaginary part.
    #[error("sum-of-separable coefficient must be real (imaginary part {im:.3e})")]
    ComplexCoefficient {
        /// Imaginary part of the offending coefficient.
        im: f64,
    },

    /// A deviation does not factor as `remainder ⊗ expected`.
    #[error("deviation does not factor through the expected last slot (residual {residual:.3e})")]
    NotFactorizable {
        /// Largest residual entry after the best factorization.
        residual: f64,
    },

    /// An operation that needs a phase-order tag got an untagged state.
    #[error("state carries no phase-order tag")]
    UntaggedOrder,

    /// Phase order index outside `1..=n`.
    #[error("phase order {sigma} out of range 1..={n}")]
    OrderOutOfRange {
        /// Requested order.
        sigma: usize,
        /// Qubit count.
        n: usize,
    },

    /// A state does not have the support structure of a sigma-ordered state.
    #[error("state lacks the {sigma}-ordered support structure (residual {residual:.3e})")]
    NotOrdered {
        /// The claimed order.
        sigma: usize,
        /// Reconstruction residual.
        residual: f64,
    },

    /// An oracle truth table has the wrong length.
    #[error("oracle table has {len} entries, expected 2^{n}")]
    BadOracleTable {
        /// Provided length.
        len: usize,
        /// Input bit count.
        n: usize,
    },

    /// An oracle flagged as balanced/constant does not match its table.
    #[error("oracle promise flag contradicts the table ({detail})")]
    PromiseMismatch {
        /// Human-readable description of the contradiction.
        detail: String,
    },

    /// A bitstring has the wrong length.
    #[error("bitstring has {len} bits, expected {n}")]
    BitstringLength {
        /// Provided length.
        len: usize,
        /// Qubit count.
        n: usize,
    },

    /// A sequence length is not a power of two.
    #[error("sequence length {len} is not a power of two")]
    BadSequenceLength {
        /// Provided length.
        len: usize,
    },

    /// A vector has a length inconsistent with its declared qubit count.
    #[error("vector has {len} entries, expected {expected}")]
    BadVectorLength {
        /// Provided length.
        len: usize,
        /// Required length.
        expected: usize,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
