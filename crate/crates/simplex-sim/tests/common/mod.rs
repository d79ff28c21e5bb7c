//! Shared helpers for the integration suites: seeded random states,
//! unitaries, and Hermitian observables, plus dense bra-ket oracles.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use simplex_sim::prelude::*;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A random normalized amplitude pair, phases included.
pub fn random_qubit<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let raw = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let norm_sq: f64 = raw.iter().map(|v| v * v).sum();
        if norm_sq > 1e-2 {
            let norm = norm_sq.sqrt();
            return (
                c(raw[0] / norm, raw[1] / norm),
                c(raw[2] / norm, raw[3] / norm),
            );
        }
    }
}

/// A Haar-style random element of U(2), global phase included.
pub fn random_unitary2<R: Rng>(rng: &mut R) -> Unitary2 {
    let (a, b) = random_qubit(rng);
    let gamma = rng.gen_range(0.0..std::f64::consts::TAU);
    let phase = Complex64::from_polar(1.0, gamma);
    Unitary2::new([[a, -b.conj() * phase], [b, a.conj() * phase]])
        .expect("constructed columns are orthonormal")
}

/// Random n-qubit product state, returned in both representations.
pub fn random_product<R: Rng>(n: usize, rng: &mut R) -> (SimplexState, StateVector) {
    let qubits: Vec<_> = (0..n).map(|_| random_qubit(rng)).collect();
    let simplex = map_qubits(&qubits).expect("valid product state");
    let reference = StateVector::from_product(&qubits).expect("valid product state");
    (simplex, reference)
}

/// Random dense Hermitian observable on n qubits.
pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> Observable {
    let dim = 1usize << n;
    let mut data = vec![c(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for col in 0..dim {
            data[r * dim + col] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let raw = CMat::new(dim, data).expect("square");
    let dag = raw.dagger();
    let mut sym = vec![c(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for col in 0..dim {
            sym[r * dim + col] = (raw.entry(r, col) + dag.entry(r, col)) / 2.0;
        }
    }
    Observable::dense(CMat::new(dim, sym).expect("square")).expect("hermitian by construction")
}

/// Random diagonal (logical-basis) observable on n qubits.
pub fn random_diagonal<R: Rng>(n: usize, rng: &mut R) -> Observable {
    let dim = 1usize << n;
    let mut data = vec![c(0.0, 0.0); dim * dim];
    for r in 0..dim {
        data[r * dim + r] = c(rng.gen_range(-1.0..1.0), 0.0);
    }
    Observable::dense(CMat::new(dim, data).expect("square")).expect("diagonal is hermitian")
}

/// Random dim×dim unitary via Gram-Schmidt on a random complex matrix.
pub fn random_unitary_dense<R: Rng>(dim: usize, rng: &mut R) -> CMat {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        loop {
            let mut v: Vec<Complex64> = (0..dim)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            for u in &cols {
                let proj: Complex64 =
                    u.iter().zip(&v).map(|(ui, vi)| ui.conj() * vi).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for x in &mut v {
                    *x /= norm;
                }
                cols.push(v);
                break;
            }
        }
    }
    let mut data = vec![c(0.0, 0.0); dim * dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            data[i * dim + j] = *v;
        }
    }
    CMat::new(dim, data).expect("square")
}

/// ⟨ψ∣A∣ψ⟩ straight from dense linear algebra.
pub fn bra_ket(a: &Observable, psi: &StateVector) -> f64 {
    a.to_matrix().expectation(psi.amplitudes()).re
}

pub fn max_gap(a: &PVec, b: &PVec) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Bits of `value` over n slots, leftmost slot = most significant bit.
pub fn bits_of(value: usize, n: usize) -> Vec<u8> {
    (0..n).map(|s| ((value >> (n - 1 - s)) & 1) as u8).collect()
}
