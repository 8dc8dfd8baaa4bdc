//! Brute-force full Fock-space reference implementations.
//!
//! Everything here works on the full 2^n space with dense matrices and
//! deliberately re-implements the occupation rules inline, so it shares no
//! code path with the sector machinery it is used to check. Intended for
//! small n (the cost is 4^n per matrix).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::SectorBasis;
use crate::linalg::CMatrix;

/// Full-space matrix builder for `n` modes. State index = packed word with
/// bit `j` holding the occupation of mode `j`.
#[derive(Debug, Clone, Copy)]
pub struct FockOracle {
    n: usize,
}

impl FockOracle {
    pub fn new(n: usize) -> Result<Self> {
        if n > 16 {
            return Err(Error::param(format!("oracle dimension 2^{n} is too large")));
        }
        Ok(FockOracle { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Full matrix of `A†_j`.
    pub fn creation(&self, j: usize) -> CMatrix {
        assert!(j < self.n);
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for word in 0..dim as u64 {
            if word >> j & 1 == 0 {
                let parity = (word & ((1 << j) - 1)).count_ones();
                let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
                let target = word | 1 << j;
                m[(target as usize, word as usize)] = Complex64::new(sign, 0.0);
            }
        }
        m
    }

    /// Full matrix of `A_j`.
    pub fn annihilation(&self, j: usize) -> CMatrix {
        assert!(j < self.n);
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim, dim);
        for word in 0..dim as u64 {
            if word >> j & 1 == 1 {
                let parity = (word & ((1 << j) - 1)).count_ones();
                let sign = if parity.is_multiple_of(2) { 1.0 } else { -1.0 };
                let target = word & !(1 << j);
                m[(target as usize, word as usize)] = Complex64::new(sign, 0.0);
            }
        }
        m
    }

    /// Full matrix of `N_j = A†_j A_j`, formed by an explicit product.
    pub fn number(&self, j: usize) -> CMatrix {
        self.creation(j).mul(&self.annihilation(j))
    }

    /// `T = Σ_{j,k} τ_{j,k} A†_j A_k` assembled by full matrix products.
    pub fn hopping(&self, tau: &CMatrix) -> CMatrix {
        assert_eq!(tau.rows(), self.n);
        assert_eq!(tau.cols(), self.n);
        let dim = self.dim();
        let mut t = CMatrix::zeros(dim, dim);
        for j in 0..self.n {
            let cj = self.creation(j);
            for k in 0..self.n {
                let coeff = tau[(j, k)];
                if coeff.norm() == 0.0 {
                    continue;
                }
                t = t.add(&cj.mul(&self.annihilation(k)).scale(coeff));
            }
        }
        t
    }

    /// `V = Σ_{l,m} ν_{l,m} N_l N_m` assembled by full matrix products.
    pub fn interaction(&self, nu: &[f64]) -> CMatrix {
        assert_eq!(nu.len(), self.n * self.n);
        let dim = self.dim();
        let mut v = CMatrix::zeros(dim, dim);
        for l in 0..self.n {
            let nl = self.number(l);
            for m in 0..self.n {
                let coeff = nu[l * self.n + m];
                if coeff == 0.0 {
                    continue;
                }
                v = v.add(&nl.mul(&self.number(m)).scale(Complex64::new(coeff, 0.0)));
            }
        }
        v
    }

    /// Restrict a full-space matrix to a sector basis (rows and columns at
    /// the basis configurations in canonical order).
    pub fn project(&self, full: &CMatrix, basis: &SectorBasis) -> CMatrix {
        assert_eq!(basis.n(), self.n);
        assert_eq!(full.rows(), self.dim());
        CMatrix::from_fn(basis.dim(), basis.dim(), |i, j| {
            let row = basis.config(i).word() as usize;
            let col = basis.config(j).word() as usize;
            full[(row, col)]
        })
    }

    /// Check that a full-space matrix is block-diagonal across sectors: all
    /// entries between configurations of different weight vanish.
    pub fn number_preserving_defect(&self, full: &CMatrix) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for row in 0..dim {
            for col in 0..dim {
                if (row as u64).count_ones() != (col as u64).count_ones() {
                    worst = worst.max(full[(row, col)].norm());
                }
            }
        }
        worst
    }
}
