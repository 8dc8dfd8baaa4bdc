//! Closed-form Trotter error bounds, rigorous low-order bounds, and
//! step-count / gate-count estimators.
//!
//! The scaling bounds evaluate the bracketed expressions with unit
//! constants and are reported as scaling values; only
//! [`rigorous_bound_low_order`] is a certified upper bound on the measured
//! error.

use serde::{Deserialize, Serialize};

use crate::commutator::{nested_commutator, GammaWord};
use crate::error::{Error, Result};
use crate::fock::SectorOperator;
use crate::seminorm::fermionic_seminorm;

/// `(‖τ‖ + ‖ν‖_max η)^{p-1} ‖τ‖ ‖ν‖_max η² t^{p+1}`.
pub fn scaling_bound_general(p: u32, spec_tau: f64, max_nu: f64, eta: usize, t: f64) -> f64 {
    let eta = eta as f64;
    (spec_tau + max_nu * eta).powi(p as i32 - 1)
        * spec_tau
        * max_nu
        * eta
        * eta
        * t.powi(p as i32 + 1)
}

/// `(‖τ‖_max + ‖ν‖_max)^{p-1} ‖τ‖_max ‖ν‖_max d^{p+1} η t^{p+1}`.
pub fn scaling_bound_sparse(
    p: u32,
    max_tau: f64,
    max_nu: f64,
    d: usize,
    eta: usize,
    t: f64,
) -> f64 {
    (max_tau + max_nu).powi(p as i32 - 1)
        * max_tau
        * max_nu
        * (d as f64).powi(p as i32 + 1)
        * eta as f64
        * t.powi(p as i32 + 1)
}

/// `(n‖τ‖_max + ‖ν‖_max η)^{p-1} ‖τ‖_max ‖ν‖_max n η² t^{p+1}`.
pub fn scaling_bound_path_dense(
    p: u32,
    max_tau: f64,
    max_nu: f64,
    n: usize,
    eta: usize,
    t: f64,
) -> f64 {
    let eta = eta as f64;
    (n as f64 * max_tau + max_nu * eta).powi(p as i32 - 1)
        * max_tau
        * max_nu
        * n as f64
        * eta
        * eta
        * t.powi(p as i32 + 1)
}

/// Certified single-step bounds from the low-order integral
/// representations: `(t²/2)‖[T,V]‖_η` for p = 1 and
/// `(t³/6)(½‖[T,[T,V]]‖_η + ¼‖[V,[V,T]]‖_η)` for p = 2.
pub fn rigorous_bound_low_order(
    p: u32,
    t_op: &SectorOperator,
    v_op: &SectorOperator,
    t: f64,
) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::param("time must be nonnegative"));
    }
    match p {
        1 => {
            let gamma = GammaWord::new(vec![false, true])?; // [T, V]
            let comm = nested_commutator(&gamma, t_op, v_op)?;
            Ok(t * t / 2.0 * fermionic_seminorm(&comm)?)
        }
        2 => {
            let ttv = GammaWord::new(vec![false, true, true])?; // [T,[T,V]]
            let vvt = GammaWord::new(vec![true, false, false])?; // [V,[V,T]]
            let a = fermionic_seminorm(&nested_commutator(&ttv, t_op, v_op)?)?;
            let b = fermionic_seminorm(&nested_commutator(&vvt, t_op, v_op)?)?;
            Ok(t.powi(3) / 6.0 * (0.5 * a + 0.25 * b))
        }
        other => Err(Error::UnsupportedOrder { order: other }),
    }
}

/// Parameter families accepted by [`step_count`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCountFamily {
    General {
        spec_tau: f64,
        max_nu: f64,
        eta: usize,
    },
    Sparse {
        max_tau: f64,
        max_nu: f64,
        d: usize,
        eta: usize,
    },
    PathDense {
        max_tau: f64,
        max_nu: f64,
        n: usize,
        eta: usize,
    },
    PlaneWave {
        n: usize,
        eta: usize,
    },
    Hubbard {
        eta: usize,
    },
}

/// Trotter steps sufficient for target accuracy with unit constants:
/// `r = ⌈(B t^{p+1} / ε)^{1/p}⌉` where `B` is the t-coefficient of the
/// family's single-step bound. The plane-wave family uses the specialized
/// form `(n^{2/3}/η^{2/3} + n^{1/3}η^{2/3}) (n^{2/3}η^{1/3})^{1/p}` and the
/// Fermi-Hubbard family reduces to `η^{1/p}`.
pub fn step_count(p: u32, family: StepCountFamily, t: f64, eps: f64) -> Result<u64> {
    if eps <= 0.0 {
        return Err(Error::param("accuracy eps must be positive"));
    }
    if t <= 0.0 {
        return Err(Error::param("time must be positive"));
    }
    if p == 0 {
        return Err(Error::UnsupportedOrder { order: p });
    }
    // Work in log space so large orders cannot overflow the B = α^p β
    // coefficients; a vanishing coefficient yields ln B = -inf and r = 1.
    let ln_b = match family {
        StepCountFamily::General {
            spec_tau,
            max_nu,
            eta,
        } => {
            let eta = eta as f64;
            (p as f64 - 1.0) * (spec_tau + max_nu * eta).ln()
                + spec_tau.ln()
                + max_nu.ln()
                + 2.0 * eta.ln()
        }
        StepCountFamily::Sparse {
            max_tau,
            max_nu,
            d,
            eta,
        } => {
            (p as f64 - 1.0) * (max_tau + max_nu).ln()
                + max_tau.ln()
                + max_nu.ln()
                + (p as f64 + 1.0) * (d as f64).ln()
                + (eta as f64).ln()
        }
        StepCountFamily::PathDense {
            max_tau,
            max_nu,
            n,
            eta,
        } => {
            let eta = eta as f64;
            (p as f64 - 1.0) * (n as f64 * max_tau + max_nu * eta).ln()
                + max_tau.ln()
                + max_nu.ln()
                + (n as f64).ln()
                + 2.0 * eta.ln()
        }
        StepCountFamily::PlaneWave { n, eta } => {
            let n = n as f64;
            let eta = eta as f64;
            let alpha =
                n.powf(2.0 / 3.0) / eta.powf(2.0 / 3.0) + n.powf(1.0 / 3.0) * eta.powf(2.0 / 3.0);
            let beta = n.powf(2.0 / 3.0) * eta.powf(1.0 / 3.0);
            p as f64 * alpha.ln() + beta.ln()
        }
        StepCountFamily::Hubbard { eta } => (eta as f64).ln(),
    };
    let ln_r = (ln_b + (p as f64 + 1.0) * t.ln() - eps.ln()) / p as f64;
    let r = ln_r.exp();
    if !r.is_finite() && ln_r > 0.0 {
        return Err(Error::param("step count overflows"));
    }
    Ok(r.ceil().max(1.0) as u64)
}

/// Unit-constant step and gate counts for the plane-wave application at
/// constant time and accuracy. The polylog factor is reported as a single
/// `ln n`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PlaneWaveComplexity {
    pub steps: f64,
    pub gates: f64,
}

pub fn gate_complexity_planewave(n: usize, eta: usize, p: u32) -> PlaneWaveComplexity {
    let nf = n as f64;
    let ef = eta as f64;
    let per_order = nf.powf(1.0 / p as f64);
    let steps = (nf.powf(2.0 / 3.0) / ef.powf(2.0 / 3.0) + nf.powf(1.0 / 3.0) * ef.powf(2.0 / 3.0))
        * per_order;
    let gates = (nf.powf(5.0 / 3.0) / ef.powf(2.0 / 3.0) + nf.powf(4.0 / 3.0) * ef.powf(2.0 / 3.0))
        * per_order
        * nf.ln();
    PlaneWaveComplexity { steps, gates }
}

/// Serializable bound report record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundRecord {
    pub family: String,
    pub params: serde_json::Value,
    pub value: f64,
    pub certified: bool,
}
