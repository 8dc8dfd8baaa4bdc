//! Lower-bound constructions: Fourier-frame operators, two-configuration
//! witness states, and nested-commutator expectation values.
//!
//! The dense construction takes the all-ones hopping matrix together with a
//! half-filled interaction block; conjugating by the fermionic Fourier
//! transform turns the hopping term into `n N_0`, after which the nested
//! commutators have large matrix elements between two specific
//! configurations. The sparse construction repeats the pattern on the
//! first d modes.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, FermionConfig, SectorBasis};
use crate::hamiltonian::{assemble, tightness_instance, TightnessKind};
use crate::linalg::{inner as vec_inner, CMatrix};

/// Which two-configuration witness state to build. The `*Tilde` variants
/// pair with the Fourier-transformed dense operators; the plain variants
/// pair with the untransformed ones. Passing a block width `d` selects the
/// sparse counterpart of each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateVariant {
    PsiTilde,
    PhiTilde,
    Psi,
    Phi,
}

/// A normalized superposition of exactly two configurations.
#[derive(Debug, Clone)]
pub struct TightnessState {
    pub sector: SectorBasis,
    pub amplitudes: Vec<Complex64>,
    pub variant: StateVariant,
    pub block: Option<usize>,
}

fn config_from_modes(modes: &[usize], n: usize) -> FermionConfig {
    FermionConfig::from_occupied(modes, n)
}

/// Build a witness state on the (n, η) sector; `block` selects the sparse
/// (width-d) variant.
pub fn build_states(
    variant: StateVariant,
    n: usize,
    eta: usize,
    block: Option<usize>,
) -> Result<TightnessState> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::param(format!("witness states need even n, got {n}")));
    }
    if eta == 0 || eta > n / 2 {
        return Err(Error::param(format!(
            "witness states need 1 <= eta <= n/2, got eta={eta}, n={n}"
        )));
    }
    if let Some(d) = block {
        if d % 2 != 0 || d < 2 {
            return Err(Error::param(format!(
                "sparse witness states need even d >= 2, got {d}"
            )));
        }
        match variant {
            StateVariant::PsiTilde | StateVariant::PhiTilde => {
                if d > eta + 1 || d > n / 2 {
                    return Err(Error::param(format!(
                        "tilde witness states need d <= min(eta+1, n/2), got d={d}, eta={eta}"
                    )));
                }
            }
            StateVariant::Psi | StateVariant::Phi => {
                if d / 2 > eta || d > n / 2 {
                    return Err(Error::param(format!(
                        "witness states need d/2 <= eta and d <= n/2, got d={d}, eta={eta}"
                    )));
                }
            }
        }
    }

    let trailing = |count: usize| -> Vec<usize> { (n - count..n).collect() };
    let (first, second, phase_on_second) = match (variant, block) {
        // (|010…0 1^{η-1}⟩ + |100…0 1^{η-1}⟩)/√2, phase i for PhiTilde.
        (StateVariant::PsiTilde, None) | (StateVariant::PhiTilde, None) => {
            let mut a = vec![1usize];
            a.extend(trailing(eta - 1));
            let mut b = vec![0usize];
            b.extend(trailing(eta - 1));
            let phase = if variant == StateVariant::PhiTilde {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            (a, b, phase)
        }
        // Sparse: |0 1^{d-1} 0…0 1^{η-d+1}⟩ and |1 0 1^{d-2} 0…0 1^{η-d+1}⟩.
        (StateVariant::PsiTilde, Some(d)) | (StateVariant::PhiTilde, Some(d)) => {
            let mut a: Vec<usize> = (1..d).collect();
            a.extend(trailing(eta + 1 - d));
            let mut b = vec![0usize];
            b.extend(2..d);
            b.extend(trailing(eta + 1 - d));
            let phase = if variant == StateVariant::PhiTilde {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            (a, b, phase)
        }
        // (|0 1^{η-1} 0…0⟩⊗|1 0…0⟩ + i·|1^{η} 0…0⟩⊗|0…0⟩)/√2 for Psi.
        (StateVariant::Psi, None) | (StateVariant::Phi, None) => {
            let mut a: Vec<usize> = (1..eta).collect();
            a.push(n / 2);
            let b: Vec<usize> = (0..eta).collect();
            let phase = if variant == StateVariant::Psi {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            (a, b, phase)
        }
        // Sparse: occupied {1..d/2} ∪ trailing vs {0..d/2-1} ∪ trailing.
        (StateVariant::Psi, Some(d)) | (StateVariant::Phi, Some(d)) => {
            let mut a: Vec<usize> = (1..=d / 2).collect();
            a.extend(trailing(eta - d / 2));
            let mut b: Vec<usize> = (0..d / 2).collect();
            b.extend(trailing(eta - d / 2));
            let phase = if variant == StateVariant::Psi {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(1.0, 0.0)
            };
            (a, b, phase)
        }
    };

    let sector = enumerate_sector(n, eta)?;
    let ca = config_from_modes(&first, n);
    let cb = config_from_modes(&second, n);
    debug_assert_eq!(ca.weight(), eta);
    debug_assert_eq!(cb.weight(), eta);
    let ia = sector.index_of(&ca).expect("witness config in sector");
    let ib = sector.index_of(&cb).expect("witness config in sector");
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); sector.dim()];
    let root_half = std::f64::consts::FRAC_1_SQRT_2;
    amplitudes[ia] = Complex64::new(root_half, 0.0);
    amplitudes[ib] = phase_on_second * root_half;
    Ok(TightnessState {
        sector,
        amplitudes,
        variant,
        block,
    })
}

/// `[outer_p, … [outer_1, inner]] |v⟩` by recursive matrix-vector products.
fn nested_apply(outer: &[&CMatrix], inner: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    match outer.split_first() {
        None => inner.matvec(v),
        Some((head, rest)) => {
            let right = nested_apply(rest, inner, v);
            let left = nested_apply(rest, inner, &head.matvec(v));
            head.matvec(&right)
                .iter()
                .zip(&left)
                .map(|(a, b)| a - b)
                .collect()
        }
    }
}

fn nested_expectation_impl(
    outer: &CMatrix,
    layers: usize,
    inner_op: &CMatrix,
    state: &TightnessState,
) -> Complex64 {
    let outer_refs: Vec<&CMatrix> = std::iter::repeat_n(outer, layers).collect();
    let image = nested_apply(&outer_refs, inner_op, &state.amplitudes);
    vec_inner(&state.amplitudes, &image)
}

/// Conjugate both operators by one shared width-w FFFT sector matrix.
fn conjugate_pair(
    t_op: &crate::fock::SectorOperator,
    v_op: &crate::fock::SectorOperator,
    width: usize,
) -> Result<(crate::fock::SectorOperator, crate::fock::SectorOperator)> {
    let f = crate::hamiltonian::ffft_sector_matrix(t_op.domain(), width)?;
    let f_dag = f.adjoint();
    let t_tilde = f_dag.compose(&t_op.compose(&f)?)?;
    let v_tilde = f_dag.compose(&v_op.compose(&f)?)?;
    Ok((t_tilde, v_tilde))
}

/// `⟨·|[T̃, … [T̃, Ṽ]]|·⟩` with p layers of the Fourier-transformed hopping
/// operator of the dense instance scaled to `‖τ‖ = s`, `‖ν‖_max = w`. Uses
/// the ψ̃ witness for odd p and φ̃ for even p.
pub fn expectation_nested_t_first(
    n: usize,
    eta: usize,
    p: usize,
    s: f64,
    w: f64,
) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::param("at least one commutator layer required"));
    }
    let coeff = tightness_instance(TightnessKind::Dense { s, w }, n)?;
    let sector = enumerate_sector(n, eta)?;
    let parts = assemble(&coeff, &sector)?;
    let (t_tilde, v_tilde) = conjugate_pair(&parts.hopping, &parts.interaction, n)?;
    let variant = if p % 2 == 1 {
        StateVariant::PsiTilde
    } else {
        StateVariant::PhiTilde
    };
    let state = build_states(variant, n, eta, None)?;
    Ok(nested_expectation_impl(
        t_tilde.matrix(),
        p,
        v_tilde.matrix(),
        &state,
    ))
}

/// Sparse counterpart: width-d instance, width-d transform, ψ̃_d / φ̃_d
/// witnesses.
pub fn expectation_nested_t_first_sparse(
    n: usize,
    eta: usize,
    p: usize,
    u: f64,
    w: f64,
    d: usize,
) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::param("at least one commutator layer required"));
    }
    let coeff = tightness_instance(TightnessKind::Sparse { u, w, d }, n)?;
    let sector = enumerate_sector(n, eta)?;
    let parts = assemble(&coeff, &sector)?;
    let (t_tilde, v_tilde) = conjugate_pair(&parts.hopping, &parts.interaction, d)?;
    let variant = if p % 2 == 1 {
        StateVariant::PsiTilde
    } else {
        StateVariant::PhiTilde
    };
    let state = build_states(variant, n, eta, Some(d))?;
    Ok(nested_expectation_impl(
        t_tilde.matrix(),
        p,
        v_tilde.matrix(),
        &state,
    ))
}

/// `⟨·|[V, … [V, T]]|·⟩` with p interaction layers of the unscaled dense
/// instance (`s = n`, `w = 1`); ψ witness for odd p, φ for even p.
pub fn expectation_nested_v_first(n: usize, eta: usize, p: usize) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::param("at least one commutator layer required"));
    }
    let coeff = tightness_instance(
        TightnessKind::Dense {
            s: n as f64,
            w: 1.0,
        },
        n,
    )?;
    let sector = enumerate_sector(n, eta)?;
    let parts = assemble(&coeff, &sector)?;
    let variant = if p % 2 == 1 {
        StateVariant::Psi
    } else {
        StateVariant::Phi
    };
    let state = build_states(variant, n, eta, None)?;
    Ok(nested_expectation_impl(
        parts.interaction.matrix(),
        p,
        parts.hopping.matrix(),
        &state,
    ))
}

/// Sparse counterpart of the V-first expectation.
pub fn expectation_nested_v_first_sparse(
    n: usize,
    eta: usize,
    p: usize,
    u: f64,
    w: f64,
    d: usize,
) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::param("at least one commutator layer required"));
    }
    let coeff = tightness_instance(TightnessKind::Sparse { u, w, d }, n)?;
    let sector = enumerate_sector(n, eta)?;
    let parts = assemble(&coeff, &sector)?;
    let variant = if p % 2 == 1 {
        StateVariant::Psi
    } else {
        StateVariant::Phi
    };
    let state = build_states(variant, n, eta, Some(d))?;
    Ok(nested_expectation_impl(
        parts.interaction.matrix(),
        p,
        parts.hopping.matrix(),
        &state,
    ))
}

/// The lower-bound family a ratio report runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightnessFamily {
    TFirst,
    VFirst,
    SparseT,
    SparseV,
}

impl std::fmt::Display for TightnessFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TightnessFamily::TFirst => "T_first",
            TightnessFamily::VFirst => "V_first",
            TightnessFamily::SparseT => "sparse_T",
            TightnessFamily::SparseV => "sparse_V",
        };
        write!(f, "{name}")
    }
}

/// One grid point of a ratio report.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RatioPoint {
    pub n: usize,
    pub eta: usize,
    #[serde(default)]
    pub d: Option<usize>,
    pub p: usize,
}

/// One row of a ratio report: the witness expectation against the
/// leading-term prediction of its family. `ratio` is absent when the
/// leading term vanishes (e.g. zero interaction strength).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioRow {
    pub family: String,
    pub n: usize,
    pub eta: usize,
    pub d: Option<usize>,
    pub p: usize,
    pub value_re: f64,
    pub value_im: f64,
    pub leading: f64,
    pub ratio: Option<f64>,
}

/// Leading-term prediction with the exact constants of the expectation
/// asymptotics: `s^p w η/π` (T-first), `(2wη)^p s/n` (V-first),
/// `(ud)^p wd/π` (sparse T), `(wd)^p u` (sparse V), so ratios tend to 1.
fn leading_value(
    family: TightnessFamily,
    n: usize,
    eta: usize,
    d: Option<usize>,
    p: usize,
    first: f64,
    w: f64,
) -> f64 {
    match family {
        TightnessFamily::TFirst => first.powi(p as i32) * w * eta as f64 / std::f64::consts::PI,
        TightnessFamily::VFirst => (2.0 * w * eta as f64).powi(p as i32) * first / n as f64,
        TightnessFamily::SparseT => {
            let d = d.unwrap_or(0) as f64;
            (first * d).powi(p as i32) * w * d / std::f64::consts::PI
        }
        TightnessFamily::SparseV => {
            let d = d.unwrap_or(0) as f64;
            (w * d).powi(p as i32) * first
        }
    }
}

/// Evaluate a family over a grid. `scale = None` uses the unscaled
/// construction (`s = n`, `w = 1` dense; `u = w = 1` sparse);
/// `Some((first, w))` fixes `(s, w)` or `(u, w)`.
pub fn tightness_ratio_report(
    family: TightnessFamily,
    points: &[RatioPoint],
    scale: Option<(f64, f64)>,
) -> Result<Vec<RatioRow>> {
    let rows: Vec<Result<RatioRow>> = points
        .par_iter()
        .map(|pt| {
            let (first, w) = match (family, scale) {
                (TightnessFamily::TFirst, None) => (pt.n as f64, 1.0),
                (TightnessFamily::VFirst, None) => (pt.n as f64, 1.0),
                (_, None) => (1.0, 1.0),
                (_, Some(pair)) => pair,
            };
            let value = match family {
                TightnessFamily::TFirst => {
                    expectation_nested_t_first(pt.n, pt.eta, pt.p, first, w)?
                }
                TightnessFamily::VFirst => {
                    // The V-first proposition is stated for the unscaled
                    // instance; rescaling multiplies it by (w)^p (first/n).
                    let base = expectation_nested_v_first(pt.n, pt.eta, pt.p)?;
                    base * Complex64::new(w.powi(pt.p as i32) * first / pt.n as f64, 0.0)
                }
                TightnessFamily::SparseT => {
                    let d = pt.d.ok_or_else(|| Error::param("sparse family needs d"))?;
                    expectation_nested_t_first_sparse(pt.n, pt.eta, pt.p, first, w, d)?
                }
                TightnessFamily::SparseV => {
                    let d = pt.d.ok_or_else(|| Error::param("sparse family needs d"))?;
                    expectation_nested_v_first_sparse(pt.n, pt.eta, pt.p, first, w, d)?
                }
            };
            let leading = leading_value(family, pt.n, pt.eta, pt.d, pt.p, first, w);
            let ratio = if leading.abs() > 0.0 {
                Some(value.norm() / leading)
            } else {
                None
            };
            Ok(RatioRow {
                family: family.to_string(),
                n: pt.n,
                eta: pt.eta,
                d: pt.d,
                p: pt.p,
                value_re: value.re,
                value_im: value.im,
                leading,
                ratio,
            })
        })
        .collect();
    rows.into_iter().collect()
}

/// Expectation of the projected single-layer commutator computed from the
/// explicit twelve-term effective operator of the dense construction, for
/// cross-checking against the full-matrix route.
pub fn effective_commutator_expectation(n: usize, eta: usize) -> Result<Complex64> {
    use crate::fock::{product_operator, Elementary};
    let sector = enumerate_sector(n, eta)?;
    let state = build_states(StateVariant::PsiTilde, n, eta, None)?;

    let half_sum = |delta: i64| -> Complex64 {
        // Σ_{x=0}^{n/2-1} e^{2πi x delta / n}
        let mut acc = Complex64::new(0.0, 0.0);
        for x in 0..n as i64 / 2 {
            let angle = 2.0 * std::f64::consts::PI * (x * delta) as f64 / n as f64;
            acc += Complex64::from_polar(1.0, angle);
        }
        acc
    };
    let quartic_coeff = |j: i64, k: i64, l: i64, m: i64| half_sum(k - j) * half_sum(m - l);

    let dim = sector.dim();
    let mut total = CMatrix::zeros(dim, dim);
    let mut add_term = |j: usize, k: usize, l: usize, m: usize, sign: f64| {
        let ops = [
            Elementary::Create(j),
            Elementary::Annihilate(k),
            Elementary::Create(l),
            Elementary::Annihilate(m),
        ];
        let op = product_operator(&ops, &sector).expect("balanced quartic product");
        let coeff = quartic_coeff(j as i64, k as i64, l as i64, m as i64)
            * Complex64::new(sign / n as f64, 0.0);
        total = total.add(&op.matrix().scale(coeff));
    };

    for l in 0..n {
        add_term(0, 1, l, l, 1.0); // +Σ_l H_{01ll}
        add_term(1, 0, l, l, -1.0); // -Σ_l H_{10ll}
    }
    for k in 0..n {
        add_term(0, k, k, 1, 1.0); // +Σ_k H_{0kk1}
        add_term(1, k, k, 0, -1.0); // -Σ_k H_{1kk0}
    }
    for j in 0..n {
        add_term(j, 0, 1, j, -1.0); // -Σ_j H_{j01j}
        add_term(j, j, 0, 1, 1.0); // +Σ_j H_{jj01}
        add_term(j, 1, 0, j, 1.0); // +Σ_j H_{j10j}
        add_term(j, j, 1, 0, -1.0); // -Σ_j H_{jj10}
    }
    add_term(0, 1, 1, 1, -1.0); // -H_{0111}
    add_term(0, 0, 0, 1, -1.0); // -H_{0001}
    add_term(1, 0, 1, 1, 1.0); // +H_{1011} (vanishing coefficient)
    add_term(1, 0, 0, 0, 1.0); // +H_{1000}
    add_term(1, 1, 0, 1, -1.0); // -H_{1101} (vanishing coefficient)
    add_term(1, 1, 1, 0, 1.0); // +H_{1110}

    let image = total.matvec(&state.amplitudes);
    Ok(vec_inner(&state.amplitudes, &image))
}
