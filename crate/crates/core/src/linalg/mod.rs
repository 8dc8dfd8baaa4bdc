//! Dense complex linear algebra: Hermitian eigendecomposition, spectral
//! norm, numerical radius, Hermitian-generated unitaries, and PSD order.

mod eig;
mod matrix;

pub use eig::{hermitian_eig, hermitian_eig_with, HermitianEig};
pub use matrix::{inner, vec_norm, CMatrix};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Numerical tolerances used across the crate, centralized with their
/// defaults. All thresholds are absolute unless noted.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Max-norm deviation from `A = A†` accepted by Hermitian routines.
    pub hermiticity: f64,
    /// Eigensolver stops when off-diagonal Frobenius mass drops below this
    /// factor times the input Frobenius norm.
    pub off_frobenius_factor: f64,
    /// Relative accuracy target of `spectral_norm`.
    pub spectral_norm: f64,
    /// Absolute accuracy target of `numerical_radius`.
    pub numerical_radius: f64,
    /// Unitarity residual accepted for constructed unitaries.
    pub unitarity: f64,
    /// Default slack for positive-semidefinite order checks.
    pub psd: f64,
    /// Entries at or below this magnitude count as structural zeros when
    /// measuring interaction sparsity and coefficient supports.
    pub support_cutoff: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermiticity: 1e-10,
            off_frobenius_factor: 1e-12,
            spectral_norm: 1e-9,
            numerical_radius: 1e-7,
            unitarity: 1e-9,
            psd: 1e-9,
            support_cutoff: 1e-14,
        }
    }
}

/// Largest singular value, computed as the square root of the top
/// eigenvalue of `A†A`. An empty matrix has norm zero.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    // A†A is Hermitian PSD by construction; the tiny negative eigenvalues
    // that rounding can produce are clamped.
    let gram = a.dagger().mul(a);
    let eig = hermitian_eig(&gram).expect("Gram matrix must be Hermitian");
    eig.lambda_max().max(0.0).sqrt()
}

/// Numerical radius `max_{|ψ|=1} |⟨ψ|A|ψ⟩|`.
///
/// Evaluates `f(θ) = ||(e^{iθ}A + e^{-iθ}A†)/2||` on a 64-point grid over
/// `[0, π)` followed by golden-section refinement around the best bracket.
/// Taking the spectral norm of the Hermitian part covers both half-turns of
/// the phase, so the half-period grid suffices.
pub fn numerical_radius(a: &CMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let half_adjoint = a.dagger().scale(Complex64::new(0.5, 0.0));
    let half = a.scale(Complex64::new(0.5, 0.0));
    let f = |theta: f64| -> f64 {
        let ph = Complex64::from_polar(1.0, theta);
        let h = half.scale(ph).add(&half_adjoint.scale(ph.conj()));
        let eig = hermitian_eig(&h).expect("Hermitian by construction");
        eig.lambda_max().abs().max(eig.lambda_min().abs())
    };

    const GRID: usize = 64;
    let step = std::f64::consts::PI / GRID as f64;
    let mut best_idx = 0;
    let mut best = f64::NEG_INFINITY;
    let values: Vec<f64> = (0..=GRID).map(|k| f(k as f64 * step)).collect();
    for (k, &v) in values.iter().enumerate() {
        if v > best {
            best = v;
            best_idx = k;
        }
    }

    // Golden-section around the winning bracket.
    let mut lo = (best_idx.saturating_sub(1)) as f64 * step;
    let mut hi = ((best_idx + 1).min(GRID)) as f64 * step;
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..40 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        best = best.max(f1.max(f2));
    }
    Ok(best)
}

/// The unitary `e^{-itH} = U diag(e^{-itλ}) U†` for Hermitian `H`.
pub fn unitary_from_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.apply_function(|lam| Complex64::from_polar(1.0, -t * lam)))
}

/// Whether `A ≤ B` in the positive-semidefinite order: `λ_min(B - A) ≥ -tol`.
pub fn psd_order_holds(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<bool> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::dim(format!(
            "psd order on {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let diff = b.sub(a);
    let eig = hermitian_eig(&diff)?;
    if eig.eigenvalues.is_empty() {
        return Ok(true);
    }
    Ok(eig.lambda_min() >= -tol)
}
