//! Product-formula construction, sector-level evolution, and exact
//! Trotter-error measurement.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, SectorOperator};
use crate::hamiltonian::{assemble, CoefficientPair};
use crate::linalg::{hermitian_eig, spectral_norm, unitary_from_hermitian, Tolerances};

/// Which Hamiltonian term a stage exponentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Hopping,
    Interaction,
}

/// One exponential stage `e^{-i (weight · t) G}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaStage {
    pub generator: Generator,
    pub weight: f64,
}

/// An ordered product formula; stages are listed left to right as written,
/// so the rightmost stage acts first on a state.
#[derive(Debug, Clone)]
pub struct ProductFormula {
    order: u32,
    stages: Vec<FormulaStage>,
}

impl ProductFormula {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn stages(&self) -> &[FormulaStage] {
        &self.stages
    }

    /// Total weight carried by one generator; 1 for a consistent formula.
    pub fn weight_sum(&self, generator: Generator) -> f64 {
        self.stages
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.weight)
            .sum()
    }

    /// Even-order Suzuki formulas are palindromic in (generator, weight).
    pub fn is_palindromic(&self) -> bool {
        let k = self.stages.len();
        (0..k / 2).all(|i| {
            let a = self.stages[i];
            let b = self.stages[k - 1 - i];
            a.generator == b.generator && (a.weight - b.weight).abs() < 1e-12
        })
    }
}

/// Build the order-p formula: the Lie-Trotter product for p = 1, the
/// symmetric Suzuki product for p = 2, and the Suzuki recursion
/// `S_{2k}(t) = S_{2k-2}(u_k t)² S_{2k-2}((1-4u_k)t) S_{2k-2}(u_k t)²`
/// with `u_k = 1/(4 - 4^{1/(2k-1)})` for larger even p. Adjacent stages
/// with the same generator are merged.
pub fn build_formula(p: u32) -> Result<ProductFormula> {
    if p == 1 {
        return Ok(ProductFormula {
            order: 1,
            stages: vec![
                FormulaStage {
                    generator: Generator::Hopping,
                    weight: 1.0,
                },
                FormulaStage {
                    generator: Generator::Interaction,
                    weight: 1.0,
                },
            ],
        });
    }
    if p == 0 || !p.is_multiple_of(2) || p > 10 {
        return Err(Error::UnsupportedOrder { order: p });
    }
    let mut stages = vec![
        FormulaStage {
            generator: Generator::Interaction,
            weight: 0.5,
        },
        FormulaStage {
            generator: Generator::Hopping,
            weight: 1.0,
        },
        FormulaStage {
            generator: Generator::Interaction,
            weight: 0.5,
        },
    ];
    let mut order = 2;
    while order < p {
        let k = order / 2 + 1; // building order 2k from order 2k-2
        let u = 1.0 / (4.0 - 4f64.powf(1.0 / (2.0 * k as f64 - 1.0)));
        let scaled = |factor: f64| -> Vec<FormulaStage> {
            stages
                .iter()
                .map(|s| FormulaStage {
                    generator: s.generator,
                    weight: s.weight * factor,
                })
                .collect()
        };
        let mut next = Vec::new();
        next.extend(scaled(u));
        next.extend(scaled(u));
        next.extend(scaled(1.0 - 4.0 * u));
        next.extend(scaled(u));
        next.extend(scaled(u));
        stages = merge_adjacent(next);
        order += 2;
    }
    Ok(ProductFormula { order: p, stages })
}

fn merge_adjacent(stages: Vec<FormulaStage>) -> Vec<FormulaStage> {
    let mut out: Vec<FormulaStage> = Vec::with_capacity(stages.len());
    for stage in stages {
        match out.last_mut() {
            Some(last) if last.generator == stage.generator => last.weight += stage.weight,
            _ => out.push(stage),
        }
    }
    out
}

/// Evaluate the ordered product of stage exponentials at time `t`.
///
/// The hopping eigendecomposition is computed once and reused across
/// stages; interaction stages exponentiate elementwise when `V` is
/// diagonal in the configuration basis (always true for assembled pairs)
/// and fall back to an eigensolve otherwise.
pub fn apply_formula(
    formula: &ProductFormula,
    t_op: &SectorOperator,
    v_op: &SectorOperator,
    t: f64,
) -> Result<SectorOperator> {
    if !t_op.is_number_preserving()
        || !v_op.is_number_preserving()
        || !t_op.domain().same_sector(v_op.domain())
    {
        return Err(Error::sector(
            "formula stages need T, V on one shared sector",
        ));
    }
    let tol = Tolerances::default();
    let dim = t_op.matrix().rows();

    let t_eig = hermitian_eig(t_op.matrix())?;
    let v_diagonal = v_op.matrix().offdiag_max_abs() <= tol.hermiticity;
    let v_eig = if v_diagonal {
        None
    } else {
        Some(hermitian_eig(v_op.matrix())?)
    };
    let v_diag = v_op.matrix().diag();

    let mut product = crate::linalg::CMatrix::identity(dim);
    for stage in formula.stages() {
        let angle = stage.weight * t;
        let factor = match stage.generator {
            Generator::Hopping => {
                t_eig.apply_function(|lam| Complex64::from_polar(1.0, -angle * lam))
            }
            Generator::Interaction => match &v_eig {
                Some(eig) => eig.apply_function(|lam| Complex64::from_polar(1.0, -angle * lam)),
                None => crate::linalg::CMatrix::from_diag(
                    &v_diag
                        .iter()
                        .map(|z| Complex64::from_polar(1.0, -angle * z.re))
                        .collect::<Vec<_>>(),
                ),
            },
        };
        product = product.mul(&factor);
    }
    SectorOperator::new(t_op.domain().clone(), t_op.codomain().clone(), product)
}

/// Exact sector Trotter error
/// `‖ S_p(t/r)^r − e^{-itH} ‖` on the η-electron sector, which equals the
/// fermionic η-seminorm of the defect since all operators are
/// sector-restricted.
pub fn trotter_error(p: u32, coeff: &CoefficientPair, eta: usize, t: f64, r: u64) -> Result<f64> {
    if r == 0 {
        return Err(Error::param("step count r must be at least 1"));
    }
    let sector = enumerate_sector(coeff.n(), eta)?;
    let parts = assemble(coeff, &sector)?;
    let formula = build_formula(p)?;
    let step = apply_formula(&formula, &parts.hopping, &parts.interaction, t / r as f64)?;
    let evolved = step.matrix().pow(r);
    let exact = unitary_from_hermitian(parts.total.matrix(), t)?;
    Ok(spectral_norm(&evolved.sub(&exact)))
}

/// Least-squares slope of log(error) against log(t).
///
/// Requires at least four samples, strictly positive times, and all errors
/// above the 1e-13 noise floor.
pub fn fit_error_order(ts: &[f64], errors: &[f64]) -> Result<f64> {
    if ts.len() != errors.len() {
        return Err(Error::dim("time and error lists differ in length"));
    }
    if ts.len() < 4 {
        return Err(Error::DegenerateFit {
            context: format!("{} points < 4", ts.len()),
        });
    }
    if ts.iter().any(|&t| t <= 0.0) {
        return Err(Error::DegenerateFit {
            context: "non-positive time sample".into(),
        });
    }
    if errors.iter().any(|&e| e <= 1e-13) {
        return Err(Error::DegenerateFit {
            context: "error below the 1e-13 noise floor".into(),
        });
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    if sxx < 1e-20 {
        return Err(Error::DegenerateFit {
            context: "all time samples identical".into(),
        });
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::{nested_commutator, GammaWord};
    use crate::hamiltonian::random_coefficient_pair;
    use crate::linalg::CMatrix;
    use crate::seminorm::fermionic_seminorm;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn formula_stage_counts() {
        assert_eq!(build_formula(1).unwrap().stages().len(), 2);
        let s2 = build_formula(2).unwrap();
        assert_eq!(s2.stages().len(), 3);
        assert_eq!(s2.stages()[0].generator, Generator::Interaction);
        assert!((s2.stages()[0].weight - 0.5).abs() < 1e-15);
        assert!((s2.stages()[2].weight - 0.5).abs() < 1e-15);
        let s4 = build_formula(4).unwrap();
        assert_eq!(s4.stages().len(), 11);
        // The outermost interaction stage carries u2/2 with u2 = 1/(4-4^{1/3}).
        let u2 = 1.0 / (4.0 - 4f64.powf(1.0 / 3.0));
        assert!((s4.stages()[0].weight - u2 / 2.0).abs() < 1e-14);
        assert!(build_formula(3).is_err());
        assert!(build_formula(12).is_err());
    }

    #[test]
    fn formula_weights_are_consistent_and_palindromic() {
        for p in [1u32, 2, 4, 6, 8, 10] {
            let f = build_formula(p).unwrap();
            assert!(
                (f.weight_sum(Generator::Hopping) - 1.0).abs() < 1e-12,
                "T weights at p={p}"
            );
            assert!(
                (f.weight_sum(Generator::Interaction) - 1.0).abs() < 1e-12,
                "V weights at p={p}"
            );
            if p > 1 {
                assert!(f.is_palindromic(), "S_{p} should be palindromic");
            }
        }
    }

    fn random_instance(
        n: usize,
        eta: usize,
        seed: u64,
    ) -> (CoefficientPair, crate::hamiltonian::AssembledHamiltonian) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeff = random_coefficient_pair(n, &mut rng);
        let sector = enumerate_sector(n, eta).unwrap();
        let parts = assemble(&coeff, &sector).unwrap();
        (coeff, parts)
    }

    #[test]
    fn formula_is_unitary_and_time_zero_is_identity() {
        let (_, parts) = random_instance(4, 2, 5);
        for p in [1u32, 2, 4] {
            let f = build_formula(p).unwrap();
            let u = apply_formula(&f, &parts.hopping, &parts.interaction, 0.4).unwrap();
            let dim = u.matrix().rows();
            let defect = u
                .matrix()
                .dagger()
                .mul(u.matrix())
                .sub(&CMatrix::identity(dim))
                .max_abs();
            assert!(defect < 1e-8, "unitarity defect {defect} at p={p}");
            let id = apply_formula(&f, &parts.hopping, &parts.interaction, 0.0).unwrap();
            assert!(id.matrix().sub(&CMatrix::identity(dim)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn zero_interaction_reduces_to_bare_hopping_evolution() {
        let (_, parts) = random_instance(4, 2, 7);
        let zero_v = SectorOperator::zero(
            parts.interaction.domain().clone(),
            parts.interaction.codomain().clone(),
        );
        for p in [1u32, 2, 4] {
            let f = build_formula(p).unwrap();
            let u = apply_formula(&f, &parts.hopping, &zero_v, 0.9).unwrap();
            let exact = unitary_from_hermitian(parts.hopping.matrix(), 0.9).unwrap();
            assert!(u.matrix().sub(&exact).max_abs() < 1e-9);
        }
    }

    #[test]
    fn palindromic_formulas_are_time_reversible() {
        let (_, parts) = random_instance(4, 2, 9);
        for p in [2u32, 4] {
            let f = build_formula(p).unwrap();
            let fwd = apply_formula(&f, &parts.hopping, &parts.interaction, 0.3).unwrap();
            let bwd = apply_formula(&f, &parts.hopping, &parts.interaction, -0.3).unwrap();
            assert!(bwd.matrix().sub(&fwd.matrix().dagger()).max_abs() < 1e-8);
        }
    }

    #[test]
    fn commuting_instance_has_zero_error() {
        // Diagonal τ makes T and V simultaneously diagonal.
        let tau = CMatrix::from_diag(&[
            Complex64::new(0.3, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.7, 0.0),
            Complex64::new(0.1, 0.0),
        ]);
        let mut nu = vec![0.0; 16];
        nu[6] = 0.8; // (l, m) = (1, 2)
        nu[9] = 0.8; // (l, m) = (2, 1)
        nu[0] = -0.4;
        let coeff = CoefficientPair::new(tau, nu).unwrap();
        for p in [1u32, 2, 4] {
            for r in [1u64, 3] {
                let err = trotter_error(p, &coeff, 2, 0.7, r).unwrap();
                assert!(err < 1e-10, "commuting error {err} at p={p} r={r}");
            }
        }
    }

    #[test]
    fn first_order_error_within_rigorous_commutator_cap() {
        let (coeff, parts) = random_instance(4, 2, 13);
        let t = 0.1;
        let err = trotter_error(1, &coeff, 2, t, 1).unwrap();
        let gamma = GammaWord::new(vec![false, true]).unwrap();
        let comm = nested_commutator(&gamma, &parts.hopping, &parts.interaction).unwrap();
        let cap = t * t / 2.0 * fermionic_seminorm(&comm).unwrap();
        assert!(
            err <= cap + 1e-12,
            "error {err} above (t²/2)‖[T,V]‖ = {cap}"
        );
    }

    #[test]
    fn doubling_steps_scales_like_two_to_p() {
        let (coeff, _) = random_instance(4, 2, 17);
        let t = 0.05;
        for p in [1u32, 2] {
            let e1 = trotter_error(p, &coeff, 2, t, 1).unwrap();
            let e2 = trotter_error(p, &coeff, 2, t, 2).unwrap();
            let ratio = e1 / e2;
            let ideal = 2f64.powi(p as i32);
            assert!(
                ratio > ideal * 0.8 && ratio < ideal * 1.2,
                "ratio {ratio} outside [{}, {}]",
                ideal * 0.8,
                ideal * 1.2
            );
        }
    }

    #[test]
    fn error_decreases_along_doubling_ladder() {
        let (coeff, _) = random_instance(4, 2, 19);
        let mut prev = f64::INFINITY;
        for r in [1u64, 2, 4, 8] {
            let err = trotter_error(2, &coeff, 2, 0.4, r).unwrap();
            assert!(
                err <= prev * 1.2,
                "no decay along the ladder: {err} after {prev}"
            );
            prev = err;
        }
    }

    #[test]
    fn fit_recovers_exact_power_law() {
        let ts = [0.02, 0.04, 0.06, 0.08, 0.1];
        let errors: Vec<f64> = ts.iter().map(|t| 3.7 * t * t).collect();
        let slope = fit_error_order(&ts, &errors).unwrap();
        assert!((slope - 2.0).abs() < 1e-6);
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        assert!(fit_error_order(&[0.1, 0.2, 0.3], &[1.0, 2.0, 3.0]).is_err());
        assert!(fit_error_order(&[0.1; 5], &[1.0; 5]).is_err());
        assert!(fit_error_order(&[0.1, 0.2, 0.3, 0.4], &[1e-14, 1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn measured_order_matches_p_plus_one_smoke() {
        let (coeff, _) = random_instance(4, 2, 23);
        let ts = [0.02, 0.04, 0.06, 0.08, 0.1];
        let errors: Vec<f64> = ts
            .iter()
            .map(|&t| trotter_error(1, &coeff, 2, t, 1).unwrap())
            .collect();
        let slope = fit_error_order(&ts, &errors).unwrap();
        assert!((1.9..=2.1).contains(&slope), "p=1 slope {slope}");
    }
}
