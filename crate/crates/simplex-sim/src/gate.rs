//! Lifting 2×2 unitaries to 8×8 maps on single-qubit deviations.
//!
//! A unitary U acting on amplitudes corresponds to the block matrix
//!
//! ```text
//! M[U] = I₄ ⊗ Re(U) + Λ ⊗ Im(U),   Λ = [[0,0,0,1],[0,0,1,0],[1,0,0,0],[0,1,0,0]]
//! ```
//!
//! acting on deviations, so that mapping then evolving equals evolving then
//! mapping. Λ plays the role of multiplication by i on the deviation layout.
//! The full-probability transform is affine: T[U](s) = (I − M)·u/8 + M·s.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{PVec, SimplexState, SLOT_DIM};

/// A validated 2×2 unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

/// Tolerance on U†U − I for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-10;

impl Unitary2 {
    /// Wraps a 2×2 complex matrix, rejecting non-unitary input.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                // (U†U)[r][c] = Σ_k conj(U[k][r]) U[k][c]
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += m[k][r].conj() * m[k][c];
                }
                let target = if r == c { 1.0 } else { 0.0 };
                dev = dev.max((acc - target).norm());
            }
        }
        if !dev.is_finite() || dev > UNITARY_TOL {
            return Err(Error::NotUnitary { dev });
        }
        Ok(Self { m })
    }

    /// The identity.
    pub fn identity() -> Self {
        Self::diag(1.0.into(), 1.0.into())
    }

    /// Hadamard gate.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            m: [
                [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
                [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
            ],
        }
    }

    /// Pauli X.
    pub fn pauli_x() -> Self {
        Self {
            m: [
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    /// Pauli Y.
    pub fn pauli_y() -> Self {
        Self {
            m: [
                [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
                [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    /// Pauli Z.
    pub fn pauli_z() -> Self {
        Self::diag(1.0.into(), (-1.0).into())
    }

    /// Rabi rotation through `theta`:
    /// ∣0⟩ ↦ cos(θ/2)∣0⟩ + sin(θ/2)∣1⟩, ∣1⟩ ↦ sin(θ/2)∣0⟩ − cos(θ/2)∣1⟩.
    pub fn rabi(theta: f64) -> Self {
        assert!(theta.is_finite(), "angle must be finite");
        let (s, c) = (theta / 2.0).sin_cos();
        Self {
            m: [
                [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
                [Complex64::new(s, 0.0), Complex64::new(-c, 0.0)],
            ],
        }
    }

    /// Phase gate diag(1, e^{iφ}).
    pub fn phase(phi: f64) -> Self {
        assert!(phi.is_finite(), "angle must be finite");
        Self::diag(1.0.into(), Complex64::from_polar(1.0, phi))
    }

    /// Rotation gate R_k = diag(1, e^{2πi/2ᵏ}) used by the Fourier circuit.
    pub fn rotation_rk(k: u32) -> Self {
        assert!(k >= 1, "rotation index must be at least 1");
        Self::phase(2.0 * std::f64::consts::PI / (2.0_f64).powi(k as i32))
    }

    fn diag(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self { m: [[a, zero], [zero, b]] }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Unitary2) -> Self {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = self.m[r][0] * other.m[0][c] + self.m[r][1] * other.m[1][c];
            }
        }
        Self { m }
    }

    /// Entry (r, c).
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.m[r][c]
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }
}

/// An 8×8 real map on single-qubit deviations, row-major.
///
/// Factors produced from unitaries satisfy two structural constraints: the
/// squared entries in each row sum to 1, and the image of a valid deviation
/// keeps the equal-magnitude opposite-sign pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedFactor {
    m: [[f64; SLOT_DIM]; SLOT_DIM],
}

impl LiftedFactor {
    /// Lifts an arbitrary 2×2 complex matrix: I₄ ⊗ Re(B) + Λ ⊗ Im(B).
    ///
    /// Well-defined for any B (the lift tracks B acting on amplitudes);
    /// projector and ladder-operator lifts come through here. Use
    /// [`lift_unitary`] when unitarity must be enforced.
    pub fn from_matrix2(b: &[[Complex64; 2]; 2]) -> Self {
        const LAMBDA: [[f64; 4]; 4] = [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ];
        let mut m = [[0.0; SLOT_DIM]; SLOT_DIM];
        for bi in 0..4 {
            for bj in 0..4 {
                let id = if bi == bj { 1.0 } else { 0.0 };
                let lam = LAMBDA[bi][bj];
                for r in 0..2 {
                    for c in 0..2 {
                        m[2 * bi + r][2 * bj + c] = id * b[r][c].re + lam * b[r][c].im;
                    }
                }
            }
        }
        Self { m }
    }

    /// The identity factor I₈.
    pub fn identity() -> Self {
        let mut m = [[0.0; SLOT_DIM]; SLOT_DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Projection factor P̃_b: keeps the logical-b components of a slot.
    ///
    /// P̃₀ is diagonal on even indices, P̃₁ on odd; together they cover every
    /// index exactly once.
    pub fn projector(b: u8) -> Self {
        assert!(b <= 1, "bit must be 0 or 1");
        let mut m = [[0.0; SLOT_DIM]; SLOT_DIM];
        let mut i = b as usize;
        while i < SLOT_DIM {
            m[i][i] = 1.0;
            i += 2;
        }
        Self { m }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LiftedFactor) -> Self {
        let mut m = [[0.0; SLOT_DIM]; SLOT_DIM];
        for r in 0..SLOT_DIM {
            for k in 0..SLOT_DIM {
                let a = self.m[r][k];
                if a == 0.0 {
                    continue;
                }
                for c in 0..SLOT_DIM {
                    m[r][c] += a * other.m[k][c];
                }
            }
        }
        Self { m }
    }

    /// Applies the factor to a single-qubit deviation.
    pub fn apply_deviation(&self, p: &PVec) -> PVec {
        assert_eq!(p.n(), 1, "LiftedFactor acts on single-qubit deviations");
        let src = p.as_slice();
        let mut out = vec![0.0; SLOT_DIM];
        for (r, row) in self.m.iter().enumerate() {
            out[r] = row.iter().zip(src).map(|(m, v)| m * v).sum();
        }
        PVec::new(1, out).expect("dimension preserved")
    }

    /// Entry (r, c).
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.m[r][c]
    }

    /// The underlying row-major matrix.
    pub fn matrix(&self) -> &[[f64; SLOT_DIM]; SLOT_DIM] {
        &self.m
    }

    /// Largest deviation of any row's squared-entry sum from 1.
    pub fn row_square_residual(&self) -> f64 {
        self.m
            .iter()
            .map(|row| (row.iter().map(|v| v * v).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Lifts a unitary to its deviation-space factor (first form of the two
/// equivalent block layouts; this is the one reused for observables and
/// multi-qubit operators).
pub fn lift_unitary(u: &Unitary2) -> LiftedFactor {
    LiftedFactor::from_matrix2(u.matrix())
}

/// Applies the affine transform T[U] to a single-qubit state: the stored
/// deviation becomes M·p, which on full probabilities equals
/// (I − M)·u/8 + M·s.
pub fn apply_affine(m: &LiftedFactor, s: &SimplexState) -> SimplexState {
    SimplexState::from_deviation(m.apply_deviation(s.deviation()))
}

/// Lifted Hadamard gate.
pub fn hadamard() -> LiftedFactor {
    lift_unitary(&Unitary2::hadamard())
}

/// Lifted Rabi rotation.
pub fn rabi(theta: f64) -> LiftedFactor {
    lift_unitary(&Unitary2::rabi(theta))
}

/// Lifted phase gate.
pub fn phase(phi: f64) -> LiftedFactor {
    lift_unitary(&Unitary2::phase(phi))
}

/// Lifted Pauli X.
pub fn pauli_x() -> LiftedFactor {
    lift_unitary(&Unitary2::pauli_x())
}

/// Lifted Pauli Y.
pub fn pauli_y() -> LiftedFactor {
    lift_unitary(&Unitary2::pauli_y())
}

/// Lifted Pauli Z.
pub fn pauli_z() -> LiftedFactor {
    lift_unitary(&Unitary2::pauli_z())
}

/// Lifted Fourier rotation R_k.
pub fn rotation_rk(k: u32) -> LiftedFactor {
    lift_unitary(&Unitary2::rotation_rk(k))
}
