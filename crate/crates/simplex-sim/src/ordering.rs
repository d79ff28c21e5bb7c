//! Relocating stored absolute phase between tensor slots.
//!
//! The map is phase-sensitive: e^{iφ}∣ψ⟩ and ∣ψ⟩ have different images, and
//! when several qubits carry phases the products P_b(e^{iφ})⊗P_{b'}(e^{iφ'})
//! for different phase placements are genuinely different vectors. The
//! operators here move that freedom around without touching measurement
//! outcomes:
//!
//! - Γ₁ on an adjacent slot pair merges the pair's phases into the left
//!   slot: P_b(e^{iφ})⊗P_{b'}(e^{iφ'}) → P_b(e^{i(φ+φ')})⊗p_{b'}.
//! - Ω on an adjacent pair swaps the two slots' phases in place.
//! - Cascades of these produce Γ^{(n)}_σ (collect every phase into slot σ)
//!   and Ω^{(n)}_j (exchange the phases of slots j, j+1).
//!
//! A state with all phase in one slot σ behaves exactly like a single-qubit
//! state tensored with sign vectors, which is what makes amplitude
//! extraction and logical-basis measurement well-defined.

use crate::error::{Error, Result};
use crate::state::{PVec, SimplexState, SLOT_DIM};

/// Builds the 8×8 permutation ω with action ω·(u₂⊗v₄) = v₄⊗u₂ on
/// row-major flattened products.
///
/// The construction is from the defining action; transposes are derived
/// programmatically. ω is not symmetric: ωᵀ = ω².
pub fn omega_perm() -> [[f64; 8]; 8] {
    let mut m = [[0.0; 8]; 8];
    for i in 0..2 {
        for j in 0..4 {
            m[2 * j + i][4 * i + j] = 1.0;
        }
    }
    m
}

/// Builds the 16×16 permutation ι with action ι·(u₄⊗v₄) = v₄⊗u₄;
/// symmetric and involutive.
pub fn iota_perm() -> [[f64; 16]; 16] {
    let mut m = [[0.0; 16]; 16];
    for i in 0..4 {
        for j in 0..4 {
            m[4 * j + i][4 * i + j] = 1.0;
        }
    }
    m
}

/// Small dense square matrix used only while assembling the pair blocks.
#[derive(Clone)]
struct Mat {
    dim: usize,
    a: Vec<f64>,
}

impl Mat {
    fn identity(dim: usize) -> Self {
        let mut a = vec![0.0; dim * dim];
        for i in 0..dim {
            a[i * dim + i] = 1.0;
        }
        Self { dim, a }
    }

    fn from_rows<const D: usize>(rows: &[[f64; D]; D]) -> Self {
        let mut a = Vec::with_capacity(D * D);
        for row in rows {
            a.extend_from_slice(row);
        }
        Self { dim: D, a }
    }

    fn transpose(&self) -> Self {
        let d = self.dim;
        let mut a = vec![0.0; d * d];
        for r in 0..d {
            for c in 0..d {
                a[c * d + r] = self.a[r * d + c];
            }
        }
        Self { dim: d, a }
    }

    fn mul(&self, other: &Mat) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut a = vec![0.0; d * d];
        for r in 0..d {
            for k in 0..d {
                let v = self.a[r * d + k];
                if v == 0.0 {
                    continue;
                }
                for c in 0..d {
                    a[r * d + c] += v * other.a[k * d + c];
                }
            }
        }
        Self { dim: d, a }
    }

    fn kron(&self, other: &Mat) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut a = vec![0.0; d * d];
        for r1 in 0..da {
            for c1 in 0..da {
                let v = self.a[r1 * da + c1];
                if v == 0.0 {
                    continue;
                }
                for r2 in 0..db {
                    for c2 in 0..db {
                        a[(r1 * db + r2) * d + (c1 * db + c2)] = v * other.a[r2 * db + c2];
                    }
                }
            }
        }
        Self { dim: d, a }
    }
}

/// Block pattern of the 64×64 phase-merging core: a 16×16 grid of 4×4
/// identity blocks, two per row, acting on the permuted layout
/// (ξ, −ξ, ζ, −ζ)⊗∣bb'⟩ so that cos/sin products combine into the angle sum.
const MERGE_BLOCKS: [(usize, usize); 16] = [
    (0, 11),
    (1, 10),
    (2, 3),
    (2, 3),
    (4, 15),
    (5, 14),
    (6, 7),
    (6, 7),
    (2, 8),
    (3, 9),
    (10, 11),
    (10, 11),
    (6, 12),
    (7, 13),
    (14, 15),
    (14, 15),
];

/// A 64×64 operator on an adjacent slot pair, row-major, with its row
/// sparsity precomputed (the ordering blocks carry at most two entries per
/// row).
#[derive(Debug, Clone, PartialEq)]
pub struct PairBlock {
    a: Vec<f64>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl PairBlock {
    fn from_mat(m: Mat) -> Self {
        assert_eq!(m.dim, 64);
        let rows = (0..64)
            .map(|r| {
                (0..64)
                    .filter_map(|c| {
                        let v = m.a[r * 64 + c];
                        (v != 0.0).then_some((c, v))
                    })
                    .collect()
            })
            .collect();
        Self { a: m.a, rows }
    }

    /// Entry (r, c).
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.a[r * 64 + c]
    }

    /// Applies the block to a 64-entry vector.
    pub fn apply_vec(&self, v: &[f64; 64]) -> [f64; 64] {
        let mut out = [0.0; 64];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(c, m)| m * v[c]).sum();
        }
        out
    }
}

fn basis_change() -> Mat {
    // I4 (x) omega (x) I2
    Mat::identity(4)
        .kron(&Mat::from_rows(&omega_perm()))
        .kron(&Mat::identity(2))
}

fn merge_core() -> Mat {
    let mut g16 = Mat { dim: 16, a: vec![0.0; 256] };
    for (r, &(c1, c2)) in MERGE_BLOCKS.iter().enumerate() {
        g16.a[r * 16 + c1] = 1.0;
        g16.a[r * 16 + c2] = 1.0;
    }
    g16.kron(&Mat::identity(4))
}

fn iota_ext() -> Mat {
    Mat::from_rows(&iota_perm()).kron(&Mat::identity(4))
}

/// Γ₁ on a slot pair: merges both phases into the left slot.
pub fn gamma1_pair() -> PairBlock {
    let w = basis_change();
    PairBlock::from_mat(w.transpose().mul(&merge_core()).mul(&w))
}

/// Γ₂ on a slot pair: merges both phases into the right slot.
pub fn gamma2_pair() -> PairBlock {
    let w = basis_change();
    let io = iota_ext();
    PairBlock::from_mat(w.transpose().mul(&io).mul(&merge_core()).mul(&io).mul(&w))
}

/// Ω on a slot pair: swaps the two slots' phases, leaving logical bits.
pub fn omega_pair() -> PairBlock {
    let w = basis_change();
    PairBlock::from_mat(w.transpose().mul(&iota_ext()).mul(&w))
}

/// Γ^{(2)}_σ as a pair block, σ ∈ {1, 2}.
pub fn gamma_pair(sigma: usize) -> PairBlock {
    match sigma {
        1 => gamma1_pair(),
        2 => gamma2_pair(),
        _ => panic!("pair ordering index must be 1 or 2"),
    }
}

fn cached_gamma1() -> &'static PairBlock {
    use std::sync::OnceLock;
    static BLOCK: OnceLock<PairBlock> = OnceLock::new();
    BLOCK.get_or_init(gamma1_pair)
}

fn cached_omega() -> &'static PairBlock {
    use std::sync::OnceLock;
    static BLOCK: OnceLock<PairBlock> = OnceLock::new();
    BLOCK.get_or_init(omega_pair)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Stage {
    Gamma1(usize),
    Omega(usize),
}

/// A chain of adjacent-pair operations on an n-qubit state.
///
/// Adjacent pairs are the primitive; distant moves are chains of them.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderOp {
    n: usize,
    stages: Vec<Stage>,
    sets_order: Option<usize>,
}

impl OrderOp {
    /// Ω^{(n)}_j: swap the phases of slots j and j+1, 1 ≤ j ≤ n−1.
    pub fn omega_n(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j + 1 > n {
            return Err(Error::SlotOutOfRange { slot: j, n });
        }
        Ok(Self { n, stages: vec![Stage::Omega(j)], sets_order: None })
    }

    /// Γ^{(n)}_σ: collect every slot's phase into slot σ.
    ///
    /// σ = 1 is the cascade of adjacent Γ₁ from the pair (n−1, n) up to
    /// (1, 2); larger σ conjugates that cascade with adjacent Ω switches.
    pub fn gamma_n(n: usize, sigma: usize) -> Result<Self> {
        if sigma == 0 || sigma > n {
            return Err(Error::OrderOutOfRange { sigma, n });
        }
        let mut stages = Vec::new();
        for j in (1..sigma).rev() {
            stages.push(Stage::Omega(j));
        }
        for j in (1..n).rev() {
            stages.push(Stage::Gamma1(j));
        }
        for j in 1..sigma {
            stages.push(Stage::Omega(j));
        }
        Ok(Self { n, stages, sets_order: Some(sigma) })
    }

    /// Qubit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of adjacent-pair stages.
    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Applies the chain, updating the phase-order tag.
    pub fn apply(&self, s: &SimplexState) -> Result<SimplexState> {
        if s.n() != self.n {
            return Err(Error::DimensionMismatch { op: self.n, state: s.n() });
        }
        let mut data = s.deviation().as_slice().to_vec();
        let mut order = s.order();
        for stage in &self.stages {
            match *stage {
                Stage::Gamma1(j) => pair_apply(&mut data, self.n, j, cached_gamma1()),
                Stage::Omega(j) => {
                    pair_apply(&mut data, self.n, j, cached_omega());
                    order = match order {
                        Some(o) if o == j => Some(j + 1),
                        Some(o) if o == j + 1 => Some(j),
                        other => other,
                    };
                }
            }
        }
        let mut out = SimplexState::from_deviation(PVec::new(self.n, data)?);
        out.set_order(self.sets_order.or(order));
        Ok(out)
    }
}

/// Applies a 64×64 block to adjacent modes (j, j+1) of a dense 8ⁿ vector,
/// j 1-based. Adjacent axes are contiguous in row-major layout, so the
/// vector factors as (outer, 64, inner).
pub(crate) fn pair_apply(data: &mut [f64], n: usize, j: usize, block: &PairBlock) {
    debug_assert!(j >= 1 && j < n);
    let inner = SLOT_DIM.pow((n - j - 1) as u32);
    let span = 64 * inner;
    let outer = data.len() / span;
    let mut vals = [0.0; 64];
    for o in 0..outer {
        let base_o = o * span;
        for i in 0..inner {
            let base = base_o + i;
            for (k, v) in vals.iter_mut().enumerate() {
                *v = data[base + k * inner];
            }
            let out = block.apply_vec(&vals);
            for (k, v) in out.iter().enumerate() {
                data[base + k * inner] = *v;
            }
        }
    }
}

/// Moves a tagged state's phase slot to `target` through a chain of
/// adjacent Ω switches.
pub fn reorder(s: &SimplexState, target: usize) -> Result<SimplexState> {
    let n = s.n();
    if target == 0 || target > n {
        return Err(Error::OrderOutOfRange { sigma: target, n });
    }
    let current = s.order().ok_or(Error::UntaggedOrder)?;
    let mut out = s.clone();
    let mut sigma = current;
    while sigma < target {
        out = OrderOp::omega_n(n, sigma)?.apply(&out)?;
        sigma += 1;
    }
    while sigma > target {
        out = OrderOp::omega_n(n, sigma - 1)?.apply(&out)?;
        sigma -= 1;
    }
    Ok(out)
}
