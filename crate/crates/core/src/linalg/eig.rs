//! Cyclic Jacobi eigensolver for dense Hermitian matrices.

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::Tolerances;
use crate::error::{Error, Result};

/// Eigendecomposition of a Hermitian matrix: `A = U diag(λ) U†` with the
/// eigenvalues sorted ascending and the columns of `U` orthonormal.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermitianEig {
    /// Largest eigenvalue (matrix must be non-empty).
    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Assemble `U f(Λ) U†` for a scalar function of the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        // U * diag(f) accumulated into the result via the adjoint rows.
        let mut scaled = u.clone();
        for j in 0..n {
            let fj = f(self.eigenvalues[j]);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        scaled.mul(&u.dagger())
    }
}

const MAX_SWEEPS: usize = 100;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Terminates when the off-diagonal Frobenius mass falls below
/// `off_frobenius_factor * ||A||_F`. Rejects non-square or non-Hermitian
/// input (max-norm deviation beyond `tol.hermiticity`).
pub fn hermitian_eig(a: &CMatrix) -> Result<HermitianEig> {
    hermitian_eig_with(a, &Tolerances::default())
}

pub fn hermitian_eig_with(a: &CMatrix, tol: &Tolerances) -> Result<HermitianEig> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let defect = a.hermiticity_defect();
    if defect > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation: defect,
            tol: tol.hermiticity,
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(HermitianEig {
            eigenvalues: vec![],
            eigenvectors: CMatrix::zeros(0, 0),
        });
    }

    let mut m = a.clone();
    // Symmetrize exactly so rounding in the input cannot bias the sweep.
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut u = CMatrix::identity(n);
    let threshold = tol.off_frobenius_factor * a.frobenius();

    let mut sweeps = 0;
    loop {
        let off = offdiag_frobenius(&m);
        if off <= threshold || off == 0.0 {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut u, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("NaN eigenvalue"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn offdiag_frobenius(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating the (p, q) element.
///
/// With g = m_pq = |g| e^{iφ}, the rotation has the 2x2 block
/// [c, s e^{iφ}; -s e^{-iφ}, c]; the angle solves
/// tan(2θ) = 2|g| / (m_qq - m_pp).
fn rotate(m: &mut CMatrix, u: &mut CMatrix, p: usize, q: usize) {
    let g = m[(p, q)];
    let mag = g.norm();
    if mag == 0.0 {
        return;
    }
    let n = m.rows();
    let phase = g / mag; // e^{iφ}
    let alpha = m[(p, p)].re;
    let beta = m[(q, q)].re;

    let t = if alpha == beta {
        1.0
    } else {
        let tau = (beta - alpha) / (2.0 * mag);
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let cs = Complex64::new(c, 0.0);
    let s_ph = phase * s; // s e^{iφ}
    let s_ph_conj = s_ph.conj();

    // Columns p and q of M <- M R, then restore rows by Hermiticity.
    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        let new_ip = cs * mip - s_ph_conj * miq;
        let new_iq = s_ph * mip + cs * miq;
        m[(i, p)] = new_ip;
        m[(i, q)] = new_iq;
        m[(p, i)] = new_ip.conj();
        m[(q, i)] = new_iq.conj();
    }
    let new_pp = alpha * c * c + beta * s * s - 2.0 * c * s * mag;
    let new_qq = alpha * s * s + beta * c * c + 2.0 * c * s * mag;
    m[(p, p)] = Complex64::new(new_pp, 0.0);
    m[(q, q)] = Complex64::new(new_qq, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);

    // Accumulate U <- U R.
    for i in 0..n {
        let uip = u[(i, p)];
        let uiq = u[(i, q)];
        u[(i, p)] = cs * uip - s_ph_conj * uiq;
        u[(i, q)] = s_ph * uip + cs * uiq;
    }
}
