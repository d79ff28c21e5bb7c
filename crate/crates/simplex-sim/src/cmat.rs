//! Small dense complex matrices for observables and reference oracles.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dim×dim complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Wraps row-major data of length dim².
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::BadVectorLength { len: data.len(), expected: dim * dim });
        }
        Ok(Self { dim, data })
    }

    /// The dim×dim identity.
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    /// Builds from a 2×2 array.
    pub fn from_2x2(m: &[[Complex64; 2]; 2]) -> Self {
        Self { dim: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry (r, c).
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    /// Mutable entry (r, c).
    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        Self { dim: d, data }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &CMat) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let v = self.data[r * d + k];
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += v * other.data[k * d + c];
                }
            }
        }
        Self { dim: d, data }
    }

    /// Kronecker product, `self` leftmost.
    pub fn kron(&self, other: &CMat) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r1 in 0..da {
            for c1 in 0..da {
                let v = self.data[r1 * da + c1];
                for r2 in 0..db {
                    for c2 in 0..db {
                        data[(r1 * db + r2) * d + (c1 * db + c2)] =
                            v * other.data[r2 * db + c2];
                    }
                }
            }
        }
        Self { dim: d, data }
    }

    /// Largest absolute entry of A − A†.
    pub fn hermiticity_residual(&self) -> f64 {
        let d = self.dim;
        let mut dev: f64 = 0.0;
        for r in 0..d {
            for c in 0..d {
                dev = dev.max((self.data[r * d + c] - self.data[c * d + r].conj()).norm());
            }
        }
        dev
    }

    /// ⟨ψ∣A∣ψ⟩ for a dense vector ψ.
    pub fn expectation(&self, psi: &[Complex64]) -> Complex64 {
        assert_eq!(psi.len(), self.dim, "vector length mismatch");
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..d {
            let mut row = Complex64::new(0.0, 0.0);
            for c in 0..d {
                row += self.data[r * d + c] * psi[c];
            }
            acc += psi[r].conj() * row;
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), self.dim, "vector length mismatch");
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (r, o) in out.iter_mut().enumerate() {
            for c in 0..d {
                *o += self.data[r * d + c] * psi[c];
            }
        }
        out
    }
}
