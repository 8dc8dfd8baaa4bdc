//! The fermionic η-seminorm and its metric relatives.
//!
//! For a number-preserving operator the seminorm is the largest transition
//! amplitude between η-electron states, which equals the spectral norm of
//! the sector-restricted matrix. The max-expectation metric is the
//! numerical radius of the same matrix; the two differ by at most a factor
//! of two.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::SectorOperator;
use crate::linalg::{self, unitary_from_hermitian, CMatrix};

fn require_number_preserving(x: &SectorOperator, what: &str) -> Result<()> {
    if x.is_number_preserving() {
        Ok(())
    } else {
        Err(Error::sector(format!(
            "{what} is defined for number-preserving operators; got (n={}, η={}) → (n={}, η={})",
            x.domain().n(),
            x.domain().eta(),
            x.codomain().n(),
            x.codomain().eta()
        )))
    }
}

/// `‖X‖_η`: spectral norm of the sector matrix.
pub fn fermionic_seminorm(x: &SectorOperator) -> Result<f64> {
    require_number_preserving(x, "the fermionic seminorm")?;
    Ok(linalg::spectral_norm(x.matrix()))
}

/// `max_{|ψ_η⟩} |⟨ψ_η|X|ψ_η⟩|`: numerical radius of the sector matrix.
pub fn max_expectation(x: &SectorOperator) -> Result<f64> {
    require_number_preserving(x, "the max expectation")?;
    linalg::numerical_radius(x.matrix())
}

/// One seminorm axiom outcome: residual and whether it clears `tol`.
#[derive(Debug, Clone, Copy)]
pub struct AxiomResult {
    pub residual: f64,
    pub passed: bool,
}

impl AxiomResult {
    fn of(residual: f64, tol: f64) -> Self {
        AxiomResult {
            residual,
            passed: residual <= tol,
        }
    }
}

/// Per-axiom report of the seminorm property suite.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// `‖λX‖ = |λ|·‖X‖`
    pub homogeneity: AxiomResult,
    /// `‖X+Y‖ ≤ ‖X‖+‖Y‖` (residual is the violation, 0 when satisfied)
    pub triangle: AxiomResult,
    /// `‖XY‖ ≤ ‖X‖·‖Y‖`
    pub submultiplicativity: AxiomResult,
    /// `‖I‖ = 1`
    pub identity: AxiomResult,
    /// `‖UXW‖ = ‖X‖` for unitaries generated on the sector
    pub unitary_invariance: AxiomResult,
    /// `‖X†‖ = ‖X‖`
    pub adjoint_invariance: AxiomResult,
    /// `‖X†X‖ = ‖X‖²`
    pub dagger_square: AxiomResult,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        [
            self.homogeneity,
            self.triangle,
            self.submultiplicativity,
            self.identity,
            self.unitary_invariance,
            self.adjoint_invariance,
            self.dagger_square,
        ]
        .iter()
        .all(|a| a.passed)
    }
}

/// Check the seminorm axioms on a concrete pair of operators at `tol`.
///
/// The unitary-invariance probe conjugates by `e^{-i(X+X†)/2}` and
/// `e^{-i(Y+Y†)/2}`, unitaries derived deterministically from the inputs.
pub fn seminorm_axiom_check(
    x: &SectorOperator,
    y: &SectorOperator,
    lambda: Complex64,
    tol: f64,
) -> Result<AxiomReport> {
    require_number_preserving(x, "the axiom check")?;
    require_number_preserving(y, "the axiom check")?;
    if !x.domain().same_sector(y.domain()) {
        return Err(Error::sector(
            "axiom check requires operators on the same sector",
        ));
    }

    let norm_x = fermionic_seminorm(x)?;
    let norm_y = fermionic_seminorm(y)?;
    let scale = norm_x.max(norm_y).max(1.0);

    let homogeneity_residual =
        (fermionic_seminorm(&x.scale(lambda))? - lambda.norm() * norm_x).abs();
    let triangle_residual = (fermionic_seminorm(&x.add(y)?)? - norm_x - norm_y).max(0.0);
    let submult_residual = (fermionic_seminorm(&x.compose(y)?)? - norm_x * norm_y).max(0.0);
    let identity_residual =
        (fermionic_seminorm(&SectorOperator::identity(x.domain().clone()))? - 1.0).abs();

    let herm = |op: &SectorOperator| -> CMatrix {
        op.matrix()
            .add(&op.matrix().dagger())
            .scale(Complex64::new(0.5, 0.0))
    };
    let u = SectorOperator::new(
        x.domain().clone(),
        x.domain().clone(),
        unitary_from_hermitian(&herm(x), 1.0)?,
    )?;
    let w = SectorOperator::new(
        x.domain().clone(),
        x.domain().clone(),
        unitary_from_hermitian(&herm(y), 1.0)?,
    )?;
    let conjugated = u.compose(&x.compose(&w)?)?;
    let unitary_residual = (fermionic_seminorm(&conjugated)? - norm_x).abs();

    let adjoint_residual = (fermionic_seminorm(&x.adjoint())? - norm_x).abs();
    let dagger_sq_residual =
        (fermionic_seminorm(&x.adjoint().compose(x)?)? - norm_x * norm_x).abs();

    Ok(AxiomReport {
        homogeneity: AxiomResult::of(homogeneity_residual, tol * scale),
        triangle: AxiomResult::of(triangle_residual, tol * scale),
        submultiplicativity: AxiomResult::of(submult_residual, tol * scale * scale),
        identity: AxiomResult::of(identity_residual, tol),
        unitary_invariance: AxiomResult::of(unitary_residual, tol * scale),
        adjoint_invariance: AxiomResult::of(adjoint_residual, tol * scale),
        dagger_square: AxiomResult::of(dagger_sq_residual, tol * scale * scale),
    })
}

/// Independent confirmation of the projected-spectral-norm identity: a
/// two-sided variational maximization of `|⟨φ|X|ψ⟩|` by alternating power
/// iteration over the bra and the ket.
pub fn variational_seminorm(x: &SectorOperator, iterations: usize) -> Result<f64> {
    require_number_preserving(x, "the variational seminorm")?;
    let m = x.matrix();
    let dim = m.cols();
    if dim == 0 {
        return Ok(0.0);
    }
    // Deterministic full-support start vector.
    let mut psi: Vec<Complex64> = (0..dim)
        .map(|i| {
            Complex64::new(
                1.0 + (i as f64 * 0.7).sin() * 0.3,
                (i as f64 * 1.3).cos() * 0.2,
            )
        })
        .collect();
    normalize(&mut psi);
    let adj = m.dagger();
    let mut amplitude = 0.0;
    for _ in 0..iterations {
        // φ ∝ Xψ maximizes |⟨φ|Xψ⟩| for fixed ψ.
        let mut phi = m.matvec(&psi);
        let phi_norm = linalg::vec_norm(&phi);
        if phi_norm == 0.0 {
            return Ok(0.0);
        }
        for z in &mut phi {
            *z /= phi_norm;
        }
        // ψ ∝ X†φ maximizes for fixed φ.
        psi = adj.matvec(&phi);
        let psi_norm = linalg::vec_norm(&psi);
        if psi_norm == 0.0 {
            return Ok(0.0);
        }
        for z in &mut psi {
            *z /= psi_norm;
        }
        amplitude = linalg::inner(&phi, &m.matvec(&psi)).norm();
    }
    Ok(amplitude)
}

fn normalize(v: &mut [Complex64]) {
    let n = linalg::vec_norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}
