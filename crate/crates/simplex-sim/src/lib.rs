//! Quantum circuit simulation in the probability simplex.
//!
//! An n-qubit state is represented not by 2ⁿ complex amplitudes but by a
//! probability distribution over 8ⁿ outcomes — n eight-sided dice — of the
//! canonical form s = (u^⊗n + p)/8ⁿ, where u is uniform and the deviation
//! vector p carries the real and imaginary parts of every amplitude with
//! both signs. Quantum gates become affine transformations of s, realized
//! as structured linear maps on p:
//!
//! - single-qubit unitaries lift to 8×8 factors ([`gate`]),
//! - states combine through a bi-affine mixing map whose sign-flipped copy
//!   cancels all cross terms ([`tensor`]),
//! - controlled gates and oracles are sums of separable terms applied
//!   axis-wise ([`tensor`]),
//! - the freedom in where accumulated phase is stored is managed by
//!   explicit reordering operators ([`ordering`]),
//! - measurement statistics come from a bilinear form on deviations
//!   ([`measure`]).
//!
//! The [`algorithm`] module runs Deutsch-Jozsa and the quantum Fourier
//! transform end to end in this representation, and [`reference`] carries a
//! conventional state-vector simulator plus a direct DFT used as ground
//! truth for differential testing. Everything is dense and exact at desk
//! scale: states up to eight qubits (8⁸ entries), double precision.
//!
//! ```
//! use simplex_sim::prelude::*;
//!
//! // Bell pair: combine two |0> qubits, Hadamard the first, CNOT.
//! let zero = SimplexState::from_deviation(p_basis(0));
//! let joined = tau(&zero, &zero).unwrap();
//! let h = LiftedOp::single(2, 1, &Unitary2::hadamard()).unwrap();
//! let cnot = LiftedOp::controlled(2, 1, 2, &Unitary2::pauli_x()).unwrap();
//! let bell = cnot.apply(&h.apply(&joined).unwrap()).unwrap();
//!
//! assert!((projection_prob(&bell, &[0, 0]).unwrap() - 0.5).abs() < 1e-12);
//! assert!(projection_prob(&bell, &[0, 1]).unwrap().abs() < 1e-12);
//! ```

#![warn(missing_docs)]

pub mod algorithm;
pub mod circuit;
pub mod cmat;
pub mod error;
pub mod gate;
pub mod measure;
pub mod ordering;
pub mod reference;
pub mod state;
pub mod tensor;

/// Commonly used items in one import.
pub mod prelude {
    pub use crate::algorithm::{
        build_dj_oracle, drop_last_slot, hadamard_all, qft_circuit, run_deutsch_jozsa, run_qft,
        swap_network, BooleanOracle, DjOutcome, Promise, Verdict,
    };
    pub use crate::circuit::{random_circuit, swap_op, Circuit, GateSpec, SingleGate};
    pub use crate::cmat::CMat;
    pub use crate::error::{Error, Result};
    pub use crate::gate::{apply_affine, lift_unitary, LiftedFactor, Unitary2};
    pub use crate::measure::{
        expect_overlap, expect_p, extract_amplitudes, lift_observable, projection_prob,
        qubit_probs, Observable, Pauli,
    };
    pub use crate::ordering::{reorder, OrderOp};
    pub use crate::reference::{dft, differential_check, idft, sv_simulate, StateVector};
    pub use crate::state::{
        map_qubit, p_basis, p_general, unmap_qubit, validate_state, Amplitude, PVec, SimplexState,
        StateReport, MAX_QUBITS,
    };
    pub use crate::tensor::{
        map_amplitudes, map_qubits, pi_reflect, simplex_tensor_n, tau, LiftedOp,
    };
}
