//! End-to-end algorithm pipelines: Deutsch-Jozsa and the quantum Fourier
//! transform, executed entirely on deviation vectors.

use rand::Rng;

use crate::circuit::{swap_op, Circuit, GateSpec, SingleGate};
use crate::error::{Error, Result};
use crate::gate::Unitary2;
use crate::ordering::{reorder, OrderOp};
use crate::state::{p_basis, PVec, SimplexState, MAX_QUBITS, SLOT_DIM};
use crate::tensor::{simplex_tensor_n, Factor, LiftedOp};

/// Promise attached to a Deutsch-Jozsa oracle table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Promise {
    /// f is the same on every input.
    Constant,
    /// f is 0 on exactly half the inputs.
    Balanced,
    /// No claim; the run flags whether the table actually satisfied the
    /// promise.
    Unknown,
}

/// A black-box boolean function f: {0,1}ⁿ → {0,1} given as a truth table.
#[derive(Debug, Clone, PartialEq)]
pub struct BooleanOracle {
    n: usize,
    table: Vec<bool>,
    promise: Promise,
}

impl BooleanOracle {
    /// Wraps a truth table over n input bits; the table is indexed by the
    /// integer value of (z₁…z_n)₂. Promise flags are checked against the
    /// table.
    pub fn new(n: usize, table: Vec<bool>, promise: Promise) -> Result<Self> {
        if table.len() != 1 << n {
            return Err(Error::BadOracleTable { len: table.len(), n });
        }
        let ones = table.iter().filter(|&&b| b).count();
        match promise {
            Promise::Constant if ones != 0 && ones != table.len() => {
                return Err(Error::PromiseMismatch {
                    detail: format!("flagged constant but has {ones}/{} ones", table.len()),
                })
            }
            Promise::Balanced if ones != table.len() / 2 => {
                return Err(Error::PromiseMismatch {
                    detail: format!("flagged balanced but has {ones}/{} ones", table.len()),
                })
            }
            _ => {}
        }
        Ok(Self { n, table, promise })
    }

    /// The constant function f ≡ bit.
    pub fn constant(n: usize, bit: bool) -> Self {
        Self { n, table: vec![bit; 1 << n], promise: Promise::Constant }
    }

    /// A uniformly random balanced table.
    pub fn random_balanced<R: Rng>(n: usize, rng: &mut R) -> Self {
        let len = 1usize << n;
        let mut table = vec![false; len];
        for slot in table.iter_mut().take(len / 2) {
            *slot = true;
        }
        // Fisher-Yates
        for i in (1..len).rev() {
            let j = rng.gen_range(0..=i);
            table.swap(i, j);
        }
        Self { n, table, promise: Promise::Balanced }
    }

    /// Input bit count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// f(z) for the integer-encoded input.
    pub fn eval(&self, z: usize) -> bool {
        self.table[z]
    }

    /// The declared promise.
    pub fn promise(&self) -> Promise {
        self.promise
    }

    /// Whether the table is actually constant or balanced.
    pub fn satisfies_promise(&self) -> bool {
        let ones = self.table.iter().filter(|&&b| b).count();
        ones == 0 || ones == self.table.len() || ones == self.table.len() / 2
    }
}

/// Oracle operator on n+1 slots: Σ_z (⊗ᵢ P̃_{z_i}) ⊗ M[X]^{f(z)}, sending
/// p_z ⊗ p_y to p_z ⊗ p_{y⊕f(z)}.
pub fn build_dj_oracle(f: &BooleanOracle) -> Result<LiftedOp> {
    let n = f.n();
    if n + 1 > MAX_QUBITS {
        return Err(Error::CapacityExceeded { n: n + 1, max: MAX_QUBITS });
    }
    let x = crate::gate::pauli_x();
    let mut terms = Vec::with_capacity(1 << n);
    for z in 0..(1usize << n) {
        let mut factors = Vec::with_capacity(n + 1);
        for slot in 0..n {
            let bit = ((z >> (n - 1 - slot)) & 1) as u8;
            factors.push(Factor::Dense(Box::new(crate::gate::LiftedFactor::projector(bit))));
        }
        factors.push(if f.eval(z) {
            Factor::Dense(Box::new(x.clone()))
        } else {
            Factor::Identity
        });
        terms.push((1.0, factors));
    }
    Ok(LiftedOp::from_factor_terms(n + 1, terms))
}

/// Hadamard on every slot.
pub fn hadamard_all(n: usize) -> LiftedOp {
    LiftedOp::separable(&vec![Unitary2::hadamard(); n])
}

/// Strips the last tensor slot from a state whose deviation factors as
/// `remainder ⊗ expected`.
///
/// The redundant slot is verified and removed rather than traced out:
/// marginalizing a deviation is not the probability-space trace, while
/// factor-stripping inverts the combination exactly.
pub fn drop_last_slot(s: &SimplexState, expected: &PVec) -> Result<SimplexState> {
    assert_eq!(expected.n(), 1, "expected factor must be a single slot");
    let n = s.n();
    assert!(n >= 2, "cannot strip the only slot");
    let e = expected.as_slice();
    let e_norm_sq: f64 = e.iter().map(|v| v * v).sum();
    assert!(e_norm_sq > 0.0, "expected factor must be nonzero");

    let p = s.deviation().as_slice();
    let rows = p.len() / SLOT_DIM;
    let mut remainder = Vec::with_capacity(rows);
    for r in 0..rows {
        let block = &p[r * SLOT_DIM..(r + 1) * SLOT_DIM];
        remainder.push(block.iter().zip(e).map(|(a, b)| a * b).sum::<f64>() / e_norm_sq);
    }
    // the factorization must reproduce the input
    let mut residual: f64 = 0.0;
    for r in 0..rows {
        for c in 0..SLOT_DIM {
            residual = residual.max((p[r * SLOT_DIM + c] - remainder[r] * e[c]).abs());
        }
    }
    if residual > 1e-9 {
        return Err(Error::NotFactorizable { residual });
    }
    Ok(SimplexState::from_deviation(PVec::new(n - 1, remainder)?))
}

/// Verdict of a Deutsch-Jozsa run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The weight sits entirely on the all-zero pattern.
    Constant,
    /// The all-zero pattern carries no weight.
    Balanced,
}

/// Result of a Deutsch-Jozsa run.
#[derive(Debug, Clone)]
pub struct DjOutcome {
    /// Constant or balanced, from the k = 0 read-out.
    pub verdict: Verdict,
    /// Coefficient of the all-zero basis deviation in the final state;
    /// exactly ±1 for constant f and exactly 0 for balanced f.
    pub k0_coefficient: f64,
    /// False when the supplied table was neither constant nor balanced; the
    /// verdict is then just which side of the threshold the read-out fell.
    pub promise_verified: bool,
    /// Number of separable terms in the oracle operator.
    pub oracle_terms: usize,
    /// The n-slot state after the final Hadamards.
    pub state: SimplexState,
}

/// Runs the Deutsch-Jozsa pipeline: map ∣0…01⟩, Hadamard everywhere, one
/// oracle query, strip the last slot, Hadamard the rest, and read the
/// all-zero coefficient.
pub fn run_deutsch_jozsa(f: &BooleanOracle) -> Result<DjOutcome> {
    let n = f.n();
    let mut slots = Vec::with_capacity(n + 1);
    for _ in 0..n {
        slots.push(SimplexState::from_deviation(p_basis(0)));
    }
    slots.push(SimplexState::from_deviation(p_basis(1)));
    let init = simplex_tensor_n(&slots)?;

    let spread = hadamard_all(n + 1).apply(&init)?;
    let oracle = build_dj_oracle(f)?;
    let queried = oracle.apply(&spread)?;

    // slot n+1 is (p_0 - p_1)/sqrt(2) throughout and carries no answer
    let mut minus = p_basis(0);
    minus.add_scaled(-1.0, &p_basis(1));
    minus.scale(std::f64::consts::FRAC_1_SQRT_2);
    let reduced = drop_last_slot(&queried, &minus)?;

    let state = hadamard_all(n).apply(&reduced)?;

    // coefficient of p_{0...0}: the basis deviations are orthogonal with
    // squared norm 2^n
    let mut zero_pattern = p_basis(0);
    for _ in 1..n {
        zero_pattern = zero_pattern.kron(&p_basis(0))?;
    }
    let k0_coefficient = state.deviation().dot(&zero_pattern) / (1u64 << n) as f64;

    Ok(DjOutcome {
        verdict: if k0_coefficient.abs() > 0.5 { Verdict::Constant } else { Verdict::Balanced },
        k0_coefficient,
        promise_verified: f.satisfies_promise(),
        oracle_terms: oracle.term_count(),
        state,
    })
}

/// The reversed-order Fourier circuit: for slot i = 1..n, a Hadamard on i
/// followed by rotations R_k targeted on i and controlled by slot i+k−1,
/// k = 2..n−i+1.
pub fn qft_circuit(n: usize) -> Circuit {
    let mut gates = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        gates.push(GateSpec::Single { gate: SingleGate::Hadamard, slot: i });
        for k in 2..=(n - i + 1) {
            gates.push(GateSpec::Controlled {
                gate: SingleGate::Rotation(k as u32),
                control: i + k - 1,
                target: i,
            });
        }
    }
    Circuit { n, gates }
}

/// The ⌊n/2⌋ swaps (1,n), (2,n−1), … that undo the circuit's bit reversal.
pub fn swap_network(n: usize) -> Result<Vec<LiftedOp>> {
    (1..=n / 2).map(|a| swap_op(n, a, n + 1 - a)).collect()
}

/// Applies the Fourier transform to a σ-ordered state and returns the
/// result in the same ordering.
///
/// Pipeline: the reversed-order circuit, then phase collection into the
/// last slot, then the swap network, then adjacent switches back to the
/// caller's σ. The controlled-gate swaps exchange logical bits but leave
/// stored phases in place, so after them the state is n-th-ordered; the
/// final switch chain makes the whole pipeline order-preserving.
pub fn run_qft(s: &SimplexState) -> Result<SimplexState> {
    let sigma = s.order().ok_or(Error::UntaggedOrder)?;
    let n = s.n();

    let mut state = qft_circuit(n).run_simplex(s)?;
    state = OrderOp::gamma_n(n, n)?.apply(&state)?;
    for swap in swap_network(n)? {
        let mut swapped = swap.apply(&state)?;
        swapped.set_order(Some(n));
        state = swapped;
    }
    reorder(&state, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::extract_amplitudes;
    use crate::reference::dft;
    use crate::state::validate_state;
    use crate::tensor::map_amplitudes;
    use num_complex::Complex64;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oracle_tables_validate() {
        assert!(matches!(
            BooleanOracle::new(2, vec![true; 3], Promise::Unknown),
            Err(Error::BadOracleTable { .. })
        ));
        assert!(matches!(
            BooleanOracle::new(2, vec![true, false, false, false], Promise::Balanced),
            Err(Error::PromiseMismatch { .. })
        ));
        assert!(BooleanOracle::new(2, vec![true, true, false, false], Promise::Balanced).is_ok());
    }

    #[test]
    fn constant_zero_oracle_is_identity_on_products() {
        let f = BooleanOracle::constant(2, false);
        let oracle = build_dj_oracle(&f).unwrap();
        let s = simplex_tensor_n(&[
            crate::state::map_qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap(),
            crate::state::map_qubit(c(0.28, 0.96), c(0.0, 0.0)).unwrap(),
            crate::state::map_qubit(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
        ])
        .unwrap();
        let out = oracle.apply(&s).unwrap();
        let gap = out
            .deviation()
            .as_slice()
            .iter()
            .zip(s.deviation().as_slice())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-12);
    }

    #[test]
    fn constant_one_oracle_flips_last_slot() {
        let f = BooleanOracle::constant(1, true);
        let oracle = build_dj_oracle(&f).unwrap();
        let s = simplex_tensor_n(&[
            SimplexState::from_deviation(p_basis(1)),
            SimplexState::from_deviation(p_basis(0)),
        ])
        .unwrap();
        let out = oracle.apply(&s).unwrap();
        let want = p_basis(1).kron(&p_basis(1)).unwrap();
        assert_eq!(out.deviation().as_slice(), want.as_slice());
    }

    #[test]
    fn identity_table_oracle_is_cnot() {
        // n=1, f(z)=z is exactly the controlled flip
        let f = BooleanOracle::new(1, vec![false, true], Promise::Balanced).unwrap();
        let oracle = build_dj_oracle(&f).unwrap();
        let cnot = LiftedOp::controlled(2, 1, 2, &Unitary2::pauli_x()).unwrap();
        let s = crate::tensor::map_qubits(&[
            (c(0.6, 0.0), c(0.0, 0.8)),
            (c(0.28, 0.96), c(0.0, 0.0)),
        ])
        .unwrap();
        let a = oracle.apply(&s).unwrap();
        let b = cnot.apply(&s).unwrap();
        let gap = a
            .deviation()
            .as_slice()
            .iter()
            .zip(b.deviation().as_slice())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-12);
    }

    #[test]
    fn dj_constant_and_simple_balanced() {
        let out = run_deutsch_jozsa(&BooleanOracle::constant(2, false)).unwrap();
        assert_eq!(out.verdict, Verdict::Constant);
        assert!((out.k0_coefficient - 1.0).abs() < 1e-12);
        assert!(out.promise_verified);

        // f(z1 z2) = z1
        let f = BooleanOracle::new(2, vec![false, false, true, true], Promise::Balanced).unwrap();
        let out = run_deutsch_jozsa(&f).unwrap();
        assert_eq!(out.verdict, Verdict::Balanced);
        assert!(out.k0_coefficient.abs() < 1e-12);
    }

    #[test]
    fn dj_constant_one_flips_sign_only() {
        let out = run_deutsch_jozsa(&BooleanOracle::constant(2, true)).unwrap();
        assert_eq!(out.verdict, Verdict::Constant);
        assert!((out.k0_coefficient + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dj_oracle_sign_pattern_matches_table() {
        // after the oracle the z-block signs are (-1)^{f(z)}
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let f = BooleanOracle::random_balanced(3, &mut rng);
            let n = 3;
            let mut slots: Vec<SimplexState> =
                (0..n).map(|_| SimplexState::from_deviation(p_basis(0))).collect();
            slots.push(SimplexState::from_deviation(p_basis(1)));
            let spread = hadamard_all(n + 1)
                .apply(&simplex_tensor_n(&slots).unwrap())
                .unwrap();
            let queried = build_dj_oracle(&f).unwrap().apply(&spread).unwrap();

            let mut minus = p_basis(0);
            minus.add_scaled(-1.0, &p_basis(1));
            minus.scale(std::f64::consts::FRAC_1_SQRT_2);
            let reduced = drop_last_slot(&queried, &minus).unwrap();

            let scale = (1u64 << n) as f64;
            for z in 0..(1usize << n) {
                let mut pattern = p_basis(((z >> 2) & 1) as u8);
                pattern = pattern.kron(&p_basis(((z >> 1) & 1) as u8)).unwrap();
                pattern = pattern.kron(&p_basis((z & 1) as u8)).unwrap();
                let coeff = reduced.deviation().dot(&pattern) / scale;
                let want = if f.eval(z) { -1.0 } else { 1.0 } / scale.sqrt();
                assert!((coeff - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hadamard_all_expands_basis_patterns() {
        // p_00 -> (p_00 + p_01 + p_10 + p_11)/2
        let s = simplex_tensor_n(&[
            SimplexState::from_deviation(p_basis(0)),
            SimplexState::from_deviation(p_basis(0)),
        ])
        .unwrap();
        let spread = hadamard_all(2).apply(&s).unwrap();
        let mut want = p_basis(0).kron(&p_basis(0)).unwrap();
        want.add_scaled(1.0, &p_basis(0).kron(&p_basis(1)).unwrap());
        want.add_scaled(1.0, &p_basis(1).kron(&p_basis(0)).unwrap());
        want.add_scaled(1.0, &p_basis(1).kron(&p_basis(1)).unwrap());
        want.scale(0.5);
        let gap = spread
            .deviation()
            .as_slice()
            .iter()
            .zip(want.as_slice())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-15);

        // applying it twice is the identity
        let round = hadamard_all(2).apply(&spread).unwrap();
        let gap = round
            .deviation()
            .as_slice()
            .iter()
            .zip(s.deviation().as_slice())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-14);
    }

    #[test]
    fn drop_last_slot_strips_products() {
        let s = simplex_tensor_n(&[
            SimplexState::from_deviation(p_basis(0)),
            SimplexState::from_deviation(p_basis(1)),
        ])
        .unwrap();
        let out = drop_last_slot(&s, &p_basis(1)).unwrap();
        assert_eq!(out.deviation().as_slice(), p_basis(0).as_slice());

        assert!(matches!(
            drop_last_slot(&s, &p_basis(0)),
            Err(Error::NotFactorizable { .. })
        ));
    }

    #[test]
    fn qft_circuit_shapes() {
        let c1 = qft_circuit(1);
        assert_eq!(c1.gates.len(), 1);
        assert!(matches!(c1.gates[0], GateSpec::Single { gate: SingleGate::Hadamard, slot: 1 }));

        let c2 = qft_circuit(2);
        assert_eq!(
            c2.gates,
            vec![
                GateSpec::Single { gate: SingleGate::Hadamard, slot: 1 },
                GateSpec::Controlled { gate: SingleGate::Rotation(2), control: 2, target: 1 },
                GateSpec::Single { gate: SingleGate::Hadamard, slot: 2 },
            ]
        );

        let c3 = qft_circuit(3);
        assert_eq!(c3.gates.len(), 6);
    }

    #[test]
    fn swap_network_sizes() {
        assert_eq!(swap_network(2).unwrap().len(), 1);
        assert_eq!(swap_network(3).unwrap().len(), 1);
        assert_eq!(swap_network(4).unwrap().len(), 2);
    }

    #[test]
    fn qft_delta_gives_uniform_spectrum() {
        let amps = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let s = map_amplitudes(&amps, 1).unwrap();
        let out = run_qft(&s).unwrap();
        assert_eq!(out.order(), Some(1));
        assert!(validate_state(&out).is_canonical(1e-10));
        let got = extract_amplitudes(&out, 1).unwrap();
        for v in got {
            assert!((v - c(0.5, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn qft_basis_inputs_match_dft_three_qubits() {
        for j in 0..8usize {
            let mut amps = vec![c(0.0, 0.0); 8];
            amps[j] = c(1.0, 0.0);
            let s = map_amplitudes(&amps, 1).unwrap();
            let out = run_qft(&s).unwrap();
            let got = extract_amplitudes(&out, 1).unwrap();
            let want = dft(&amps).unwrap();
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() < 1e-11, "j={j}");
            }
        }
    }

    #[test]
    fn qft_random_sequence_all_orders() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for sigma in 1..=4usize {
            let mut amps: Vec<Complex64> = (0..16)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = amps.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            let s = map_amplitudes(&amps, sigma).unwrap();
            let out = run_qft(&s).unwrap();
            assert_eq!(out.order(), Some(sigma));
            let got = extract_amplitudes(&out, sigma).unwrap();
            let want = dft(&amps).unwrap();
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() < 1e-10, "sigma={sigma}");
            }
        }
    }

    #[test]
    fn qft_untagged_input_rejected() {
        let s = simplex_tensor_n(&[
            SimplexState::from_deviation(p_basis(0)),
            SimplexState::from_deviation(p_basis(0)),
        ])
        .unwrap();
        assert!(matches!(run_qft(&s), Err(Error::UntaggedOrder)));
    }
}
