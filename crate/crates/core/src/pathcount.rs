//! Symbolic expansion of nested commutators of indexed terms into signed
//! fermionic paths, configuration degrees, and the path-counting bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commutator::GammaWord;
use crate::error::{Error, Result};
use crate::fock::{Elementary, FermionConfig, SectorBasis};
use crate::hamiltonian::CoefficientPair;

/// Hard cap on (tuple × path) visits per enumeration call. The expansion
/// is exponential in the order by design; the guard keeps calls responsive.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// Which commutation rules drive the expansion.
///
/// `Standard` uses the two-term interaction rules (number operators stay on
/// the side where they are produced); `NormalOrdered` uses the three-term
/// variants that push number operators left of creations and right of
/// annihilations, trading an extra correction path for normal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ruleset {
    Standard,
    NormalOrdered,
}

/// One indexed Hamiltonian summand: `A†_j A_k` when `is_hopping`, else
/// `N_j N_k`. Indices must come from the support of the matching
/// coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedTerm {
    pub is_hopping: bool,
    pub j: usize,
    pub k: usize,
}

impl IndexedTerm {
    pub fn hopping(j: usize, k: usize) -> Self {
        IndexedTerm {
            is_hopping: true,
            j,
            k,
        }
    }

    pub fn interaction(j: usize, k: usize) -> Self {
        IndexedTerm {
            is_hopping: false,
            j,
            k,
        }
    }

    fn base_ops(&self) -> Vec<Elementary> {
        if self.is_hopping {
            vec![Elementary::Create(self.j), Elementary::Annihilate(self.k)]
        } else {
            vec![Elementary::Number(self.j), Elementary::Number(self.k)]
        }
    }
}

/// A signed ordered product of elementary operators; `ops[0]` is leftmost
/// (applied last). Paths are kept as a multiset: the signed sum over the
/// expansion is the identity being preserved, so no deduplication happens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermionicPath {
    pub sign: i8,
    pub ops: Vec<Elementary>,
}

impl FermionicPath {
    /// The adjoint path: reversed op order, each factor daggered.
    pub fn adjoint(&self) -> FermionicPath {
        FermionicPath {
            sign: self.sign,
            ops: self.ops.iter().rev().map(|op| op.adjoint()).collect(),
        }
    }

    /// Rightmost factor (applied first), if any.
    pub fn first_applied(&self) -> Option<&Elementary> {
        self.ops.last()
    }

    /// Leftmost factor (applied last), if any.
    pub fn last_applied(&self) -> Option<&Elementary> {
        self.ops.first()
    }
}

impl std::fmt::Display for FermionicPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if self.sign >= 0 { '+' } else { '-' })?;
        for op in &self.ops {
            write!(f, " {op}")?;
        }
        Ok(())
    }
}

/// Apply a path to a configuration: rightmost factor first. `None` encodes
/// the zero vector.
pub fn apply_path(path: &FermionicPath, c: FermionConfig) -> Option<(FermionConfig, i8)> {
    let mut cur = c;
    let mut sign = path.sign;
    for op in path.ops.iter().rev() {
        let (next, s) = op.apply(cur)?;
        cur = next;
        sign *= s;
    }
    Some((cur, sign))
}

/// Replacement fragments for `[X, Y]` where `X` is the layer term and `Y`
/// one factor of an existing path. Each fragment substitutes in place.
fn commute_with_factor(
    layer: &IndexedTerm,
    target: Elementary,
    ruleset: Ruleset,
) -> Vec<(Vec<Elementary>, i8)> {
    let mut out = Vec::new();
    if layer.is_hopping {
        // [A†_j A_k, ·]; identical in both rulesets.
        let (j, k) = (layer.j, layer.k);
        match target {
            Elementary::Create(jx) => {
                if k == jx {
                    out.push((vec![Elementary::Create(j)], 1));
                }
            }
            Elementary::Annihilate(ky) => {
                if j == ky {
                    out.push((vec![Elementary::Annihilate(k)], -1));
                }
            }
            Elementary::Number(lz) => {
                if k == lz {
                    out.push((vec![Elementary::Create(j), Elementary::Annihilate(k)], 1));
                }
                if j == lz {
                    out.push((vec![Elementary::Create(j), Elementary::Annihilate(k)], -1));
                }
            }
        }
    } else {
        // [N_l N_m, ·] with (l, m) = (j, k).
        let (l, m) = (layer.j, layer.k);
        match (target, ruleset) {
            (Elementary::Create(jx), Ruleset::Standard) => {
                if m == jx {
                    out.push((vec![Elementary::Number(l), Elementary::Create(jx)], 1));
                }
                if l == jx {
                    out.push((vec![Elementary::Create(jx), Elementary::Number(m)], 1));
                }
            }
            (Elementary::Annihilate(kx), Ruleset::Standard) => {
                if m == kx {
                    out.push((vec![Elementary::Number(l), Elementary::Annihilate(kx)], -1));
                }
                if l == kx {
                    out.push((vec![Elementary::Annihilate(kx), Elementary::Number(m)], -1));
                }
            }
            (Elementary::Create(jx), Ruleset::NormalOrdered) => {
                if m == jx {
                    out.push((vec![Elementary::Number(l), Elementary::Create(jx)], 1));
                }
                if l == jx {
                    out.push((vec![Elementary::Number(m), Elementary::Create(jx)], 1));
                }
                if l == jx && m == jx {
                    out.push((vec![Elementary::Create(jx)], -1));
                }
            }
            (Elementary::Annihilate(kx), Ruleset::NormalOrdered) => {
                if m == kx {
                    out.push((vec![Elementary::Annihilate(kx), Elementary::Number(l)], -1));
                }
                if l == kx {
                    out.push((vec![Elementary::Annihilate(kx), Elementary::Number(m)], -1));
                }
                if l == kx && m == kx {
                    out.push((vec![Elementary::Annihilate(kx)], 1));
                }
            }
            (Elementary::Number(_), _) => {}
        }
    }
    out
}

/// Expand the nested commutator
/// `[terms[q-1], … [terms[1], terms[0]]]` of indexed summands into the
/// complete multiset of signed paths. An empty list means the commutator
/// is identically zero.
pub fn expand_paths(terms: &[IndexedTerm], ruleset: Ruleset) -> Result<Vec<FermionicPath>> {
    if terms.is_empty() {
        return Err(Error::param("path expansion needs at least one term"));
    }
    let mut paths = vec![FermionicPath {
        sign: 1,
        ops: terms[0].base_ops(),
    }];
    for layer in &terms[1..] {
        let mut next = Vec::new();
        for path in &paths {
            for (pos, &factor) in path.ops.iter().enumerate() {
                for (fragment, factor_sign) in commute_with_factor(layer, factor, ruleset) {
                    let mut ops = Vec::with_capacity(path.ops.len() + fragment.len());
                    ops.extend_from_slice(&path.ops[..pos]);
                    ops.extend(fragment);
                    ops.extend_from_slice(&path.ops[pos + 1..]);
                    next.push(FermionicPath {
                        sign: path.sign * factor_sign,
                        ops,
                    });
                }
            }
        }
        paths = next;
        if paths.is_empty() {
            break;
        }
    }
    Ok(paths)
}

fn supports_for(gamma: &GammaWord, coeff: &CoefficientPair) -> (Vec<Vec<(usize, usize)>>, u128) {
    let tau_support = coeff.tau_support();
    let nu_support = coeff.nu_support();
    let supports: Vec<Vec<(usize, usize)>> = gamma
        .bits()
        .iter()
        .map(|&is_t| {
            if is_t {
                tau_support.clone()
            } else {
                nu_support.clone()
            }
        })
        .collect();
    let tuples: u128 = supports.iter().map(|s| s.len() as u128).product();
    (supports, tuples)
}

/// Walk all index tuples in the coefficient supports, handing each term
/// sequence to `visit`; parallelized over the outermost support.
///
/// `visit` returns (accumulated half-units, visits); half-units keep the
/// arithmetic exactly dyadic so parallel reduction order cannot change the
/// result.
fn enumerate_tuples<F>(supports: &[Vec<(usize, usize)>], gamma: &GammaWord, visit: F) -> (u64, u64)
where
    F: Fn(&[IndexedTerm]) -> (u64, u64) + Sync,
{
    let depth = supports.len();
    let outer = &supports[depth - 1];
    outer
        .par_iter()
        .map(|&(jo, ko)| {
            let mut terms = vec![
                IndexedTerm {
                    is_hopping: false,
                    j: 0,
                    k: 0
                };
                depth
            ];
            terms[depth - 1] = IndexedTerm {
                is_hopping: gamma.bits()[depth - 1],
                j: jo,
                k: ko,
            };
            let mut totals = (0u64, 0u64);
            let mut counters = vec![0usize; depth - 1];
            loop {
                for (q, &c) in counters.iter().enumerate() {
                    let (j, k) = supports[q][c];
                    terms[q] = IndexedTerm {
                        is_hopping: gamma.bits()[q],
                        j,
                        k,
                    };
                }
                let (units, visits) = visit(&terms);
                totals.0 += units;
                totals.1 += visits;
                // Odometer over the inner supports.
                let mut q = 0;
                loop {
                    if q == depth - 1 {
                        return totals;
                    }
                    counters[q] += 1;
                    if counters[q] < supports[q].len() {
                        break;
                    }
                    counters[q] = 0;
                    q += 1;
                }
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// The degree of a configuration: over all index tuples in the coefficient
/// supports and all expansion paths, `Σ ½(‖P|c⟩‖ + ‖P†|c⟩‖)`.
pub fn degree(
    c: FermionConfig,
    gamma: &GammaWord,
    coeff: &CoefficientPair,
    ruleset: Ruleset,
) -> Result<f64> {
    let (supports, tuples) = supports_for(gamma, coeff);
    if tuples == 0 {
        return Ok(0.0);
    }
    if tuples > ENUMERATION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            visits: tuples as u64,
            cap: ENUMERATION_BUDGET,
        });
    }
    let (half_units, visits) = enumerate_tuples(&supports, gamma, |terms| {
        let paths = expand_paths(terms, ruleset).expect("terms are non-empty");
        let mut units = 0u64;
        for path in &paths {
            if apply_path(path, c).is_some() {
                units += 1;
            }
            if apply_path(&path.adjoint(), c).is_some() {
                units += 1;
            }
        }
        (units, paths.len().max(1) as u64)
    });
    if visits > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            visits,
            cap: ENUMERATION_BUDGET,
        });
    }
    Ok(half_units as f64 / 2.0)
}

/// Degrees of every configuration in a sector (one enumeration pass).
pub fn degree_table(
    sector: &SectorBasis,
    gamma: &GammaWord,
    coeff: &CoefficientPair,
    ruleset: Ruleset,
) -> Result<Vec<f64>> {
    let (supports, tuples) = supports_for(gamma, coeff);
    let dim = sector.dim();
    if tuples == 0 {
        return Ok(vec![0.0; dim]);
    }
    if tuples > ENUMERATION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            visits: tuples as u64,
            cap: ENUMERATION_BUDGET,
        });
    }
    let configs = sector.configs();
    // Exact dyadic accumulation per config, merged across parallel chunks.
    let (units, visits) = {
        let depth = supports.len();
        let outer = &supports[depth - 1];
        outer
            .par_iter()
            .map(|&(jo, ko)| {
                let mut units = vec![0u64; dim];
                let mut visits = 0u64;
                let mut terms = vec![
                    IndexedTerm {
                        is_hopping: false,
                        j: 0,
                        k: 0
                    };
                    depth
                ];
                terms[depth - 1] = IndexedTerm {
                    is_hopping: gamma.bits()[depth - 1],
                    j: jo,
                    k: ko,
                };
                let mut counters = vec![0usize; depth - 1];
                'tuples: loop {
                    for (q, &cidx) in counters.iter().enumerate() {
                        let (j, k) = supports[q][cidx];
                        terms[q] = IndexedTerm {
                            is_hopping: gamma.bits()[q],
                            j,
                            k,
                        };
                    }
                    let paths = expand_paths(&terms, ruleset).expect("non-empty terms");
                    visits += paths.len().max(1) as u64;
                    for path in &paths {
                        let adjoint = path.adjoint();
                        for (i, &c) in configs.iter().enumerate() {
                            if apply_path(path, c).is_some() {
                                units[i] += 1;
                            }
                            if apply_path(&adjoint, c).is_some() {
                                units[i] += 1;
                            }
                        }
                    }
                    let mut q = 0;
                    loop {
                        if q == depth - 1 {
                            break 'tuples;
                        }
                        counters[q] += 1;
                        if counters[q] < supports[q].len() {
                            break;
                        }
                        counters[q] = 0;
                        q += 1;
                    }
                }
                (units, visits)
            })
            .reduce(
                || (vec![0u64; dim], 0u64),
                |mut a, b| {
                    for (x, y) in a.0.iter_mut().zip(&b.0) {
                        *x += y;
                    }
                    (a.0, a.1 + b.1)
                },
            )
    };
    if visits > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            visits,
            cap: ENUMERATION_BUDGET,
        });
    }
    Ok(units.into_iter().map(|u| u as f64 / 2.0).collect())
}

/// The path-counting seminorm bound:
/// `‖τ‖_max^{|γ|} ‖ν‖_max^{p+1-|γ|} · max_{c_η} deg(c_η)`.
pub fn path_bound(
    gamma: &GammaWord,
    coeff: &CoefficientPair,
    eta: usize,
    ruleset: Ruleset,
) -> Result<f64> {
    let sector = crate::fock::enumerate_sector(coeff.n(), eta)?;
    let degrees = degree_table(&sector, gamma, coeff, ruleset)?;
    let max_degree = degrees.into_iter().fold(0.0f64, f64::max);
    let t_count = gamma.t_count() as i32;
    let v_count = (gamma.order() + 1) as i32 - t_count;
    Ok(coeff.max_tau().powi(t_count) * coeff.max_nu().powi(v_count) * max_degree)
}

/// Closed-form path-count caps from the sparse and non-sparse analyses.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountRegime {
    /// `η (2d)^{p+1} (p+1)! / 2`
    Sparse { d: usize, eta: usize },
    /// `η 3^p (p+1)! n^{|γ|} η^{p+1-|γ|}`
    Dense {
        n: usize,
        eta: usize,
        t_count: usize,
    },
}

pub fn closed_form_counts(p: usize, regime: CountRegime) -> f64 {
    let fact: f64 = (1..=p + 1).map(|i| i as f64).product();
    match regime {
        CountRegime::Sparse { d, eta } => {
            eta as f64 * (2.0 * d as f64).powi(p as i32 + 1) * fact / 2.0
        }
        CountRegime::Dense { n, eta, t_count } => {
            let v_count = (p + 1).saturating_sub(t_count);
            eta as f64
                * 3f64.powi(p as i32)
                * fact
                * (n as f64).powi(t_count as i32)
                * (eta as f64).powi(v_count as i32)
        }
    }
}

/// Count (tuple, path) pairs grouped by the site their rightmost factor
/// acts on; used to check the per-site sparse counting claims.
pub fn paths_by_starting_site(
    gamma: &GammaWord,
    coeff: &CoefficientPair,
    ruleset: Ruleset,
) -> Result<Vec<u64>> {
    let (supports, tuples) = supports_for(gamma, coeff);
    let n = coeff.n();
    if tuples == 0 {
        return Ok(vec![0; n]);
    }
    if tuples > ENUMERATION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            visits: tuples as u64,
            cap: ENUMERATION_BUDGET,
        });
    }
    let depth = supports.len();
    let outer = &supports[depth - 1];
    let counts = outer
        .par_iter()
        .map(|&(jo, ko)| {
            let mut counts = vec![0u64; n];
            let mut terms = vec![
                IndexedTerm {
                    is_hopping: false,
                    j: 0,
                    k: 0
                };
                depth
            ];
            terms[depth - 1] = IndexedTerm {
                is_hopping: gamma.bits()[depth - 1],
                j: jo,
                k: ko,
            };
            let mut counters = vec![0usize; depth - 1];
            'tuples: loop {
                for (q, &cidx) in counters.iter().enumerate() {
                    let (j, k) = supports[q][cidx];
                    terms[q] = IndexedTerm {
                        is_hopping: gamma.bits()[q],
                        j,
                        k,
                    };
                }
                for path in expand_paths(&terms, ruleset).expect("non-empty terms") {
                    if let Some(op) = path.first_applied() {
                        counts[op.mode()] += 1;
                    }
                }
                let mut q = 0;
                loop {
                    if q == depth - 1 {
                        break 'tuples;
                    }
                    counters[q] += 1;
                    if counters[q] < supports[q].len() {
                        break;
                    }
                    counters[q] = 0;
                    q += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts)
}
