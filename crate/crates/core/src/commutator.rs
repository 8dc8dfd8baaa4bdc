//! Numeric nested commutators over the T/V alphabet and the operator
//! inequalities used by the recursive seminorm bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{elementary_operator, Elementary, SectorBasis, SectorOperator};
use crate::hamiltonian::CoefficientPair;
use crate::linalg::{psd_order_holds, spectral_norm, CMatrix};
use crate::seminorm::fermionic_seminorm;

/// A word γ ∈ {0,1}^{p+1} selecting V (0) or T (1) at each commutator
/// layer. `bits[0]` is the innermost letter; the innermost pair must
/// differ, since `[T,T] = [V,V] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaWord {
    bits: Vec<bool>,
}

impl GammaWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::InvalidGamma {
                context: format!("word length {} < 2", bits.len()),
            });
        }
        if bits[0] == bits[1] {
            return Err(Error::InvalidGamma {
                context: "innermost pair equal: the commutator vanishes identically".into(),
            });
        }
        Ok(GammaWord { bits })
    }

    /// Innermost-first letters; `true` selects T.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Formula order p (word length minus one).
    pub fn order(&self) -> usize {
        self.bits.len() - 1
    }

    /// Number of T letters, `|γ|`.
    pub fn t_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl std::fmt::Display for GammaWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { 'T' } else { 'V' })?;
        }
        Ok(())
    }
}

/// All words of length p+1 with distinct innermost pair; there are 2^p.
pub fn gamma_enumeration(p: usize) -> Vec<GammaWord> {
    assert!(p >= 1, "order must be at least 1");
    let mut words = Vec::with_capacity(1 << p);
    for mask in 0..(1u64 << p) {
        // Free choices: bits[0] and bits[2..]; bits[1] = !bits[0].
        let first = mask & 1 == 1;
        let mut bits = vec![first, !first];
        for q in 2..=p {
            bits.push(mask >> (q - 1) & 1 == 1);
        }
        words.push(GammaWord { bits });
    }
    words
}

/// Right-fold nested commutator `[H_{γ_{p+1}}, … [H_{γ_2}, H_{γ_1}]]` of
/// sector matrices, with `H_1 = T`, `H_0 = V`.
pub fn nested_commutator(
    gamma: &GammaWord,
    t: &SectorOperator,
    v: &SectorOperator,
) -> Result<SectorOperator> {
    if !t.is_number_preserving() || !v.is_number_preserving() || !t.domain().same_sector(v.domain())
    {
        return Err(Error::sector(
            "nested commutator requires T, V on one sector",
        ));
    }
    let pick = |b: bool| if b { t } else { v };
    let mut acc = pick(self_bit(gamma, 0)).clone();
    for q in 1..gamma.bits.len() {
        acc = pick(self_bit(gamma, q)).commutator(&acc)?;
    }
    Ok(acc)
}

fn self_bit(gamma: &GammaWord, q: usize) -> bool {
    gamma.bits[q]
}

/// The six sums in the expansion of `[T, V]`, in display order with their
/// signs folded in (so the plain sum of the six operators equals `[T, V]`):
///
/// 1. `+Σ τ_{j,k} ν_{k,m} A†_j N_m A_k`
/// 2. `+Σ τ_{j,k} ν_{k,k} A†_j A_k`
/// 3. `+Σ τ_{j,k} ν_{l,k} A†_j N_l A_k`
/// 4. `-Σ τ_{j,k} ν_{j,m} A†_j N_m A_k`
/// 5. `-Σ τ_{j,k} ν_{j,j} A†_j A_k`
/// 6. `-Σ τ_{j,k} ν_{l,j} A†_j N_l A_k`
pub fn single_layer_terms(
    coeff: &CoefficientPair,
    sector: &SectorBasis,
) -> Result<Vec<SectorOperator>> {
    let n = coeff.n();
    if n != sector.n() {
        return Err(Error::dim("coefficient/sector mode counts differ"));
    }
    let dim = sector.dim();
    let mut terms = vec![CMatrix::zeros(dim, dim); 6];

    // Accumulate column-by-column: each summand is A†_j N_x A_k, which maps
    // a configuration to at most one configuration.
    for (col, &c) in sector.configs().iter().enumerate() {
        for (j, k) in coeff.tau_support() {
            let tau_jk = coeff.tau()[(j, k)];
            let Some((mid, s1)) = crate::fock::apply_annihilation(k, c) else {
                continue;
            };
            let Some((out, s2)) = crate::fock::apply_creation(j, mid) else {
                continue;
            };
            let row = sector.index_of(&out).expect("number-preserving");
            let sign = (s1 * s2) as f64;
            let base = tau_jk * sign;

            // Middle number operators act on the intermediate configuration.
            let mut sum_m_occupied_nu_k = 0.0; // Σ_m ν_{k,m} [m occupied in mid]
            let mut sum_l_occupied_nu_to_k = 0.0; // Σ_l ν_{l,k} [l occupied in mid]
            let mut sum_m_occupied_nu_j = 0.0; // Σ_m ν_{j,m} [m occupied in mid]
            let mut sum_l_occupied_nu_to_j = 0.0; // Σ_l ν_{l,j} [l occupied in mid]
            for x in 0..n {
                if mid.occupied(x) {
                    sum_m_occupied_nu_k += coeff.nu(k, x);
                    sum_l_occupied_nu_to_k += coeff.nu(x, k);
                    sum_m_occupied_nu_j += coeff.nu(j, x);
                    sum_l_occupied_nu_to_j += coeff.nu(x, j);
                }
            }
            terms[0][(row, col)] += base * sum_m_occupied_nu_k;
            terms[1][(row, col)] += base * coeff.nu(k, k);
            terms[2][(row, col)] += base * sum_l_occupied_nu_to_k;
            terms[3][(row, col)] -= base * sum_m_occupied_nu_j;
            terms[4][(row, col)] -= base * coeff.nu(j, j);
            terms[5][(row, col)] -= base * sum_l_occupied_nu_to_j;
        }
    }
    terms
        .into_iter()
        .map(|m| SectorOperator::new(sector.clone(), sector.clone(), m))
        .collect()
}

/// Seminorm caps for the six single-layer terms: terms 2 and 5 scale with
/// η, the others with η².
pub fn single_layer_term_bounds(coeff: &CoefficientPair, eta: usize) -> [f64; 6] {
    let base = coeff.spectral_tau() * coeff.max_nu();
    let eta = eta as f64;
    [
        base * eta * eta,
        base * eta,
        base * eta * eta,
        base * eta * eta,
        base * eta,
        base * eta * eta,
    ]
}

/// Closed-form cap on the seminorm of a p-layer nested commutator from the
/// chain decomposition: `6^p p! ‖τ‖^{|γ|} (η‖ν‖_max)^{p+1-|γ|} η`.
pub fn chain_count_bound(gamma: &GammaWord, coeff: &CoefficientPair, eta: usize) -> f64 {
    let p = gamma.order();
    let tcount = gamma.t_count() as i32;
    let vcount = (p + 1) as i32 - tcount;
    let chains = 6f64.powi(p as i32) * factorial(p);
    chains
        * coeff.spectral_tau().powi(tcount)
        * (eta as f64 * coeff.max_nu()).powi(vcount)
        * eta as f64
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

// --- operator-inequality lemmas -------------------------------------------

fn sum_products(
    left: &[SectorOperator],
    right: &[SectorOperator],
    pair: impl Fn(usize, usize) -> (usize, usize),
) -> Result<CMatrix> {
    // Σ_{j,k} B†_{a} C†_{k} C_{b} B_{...}: the closure picks which indices
    // go where; all products must share sectors.
    let mut acc: Option<CMatrix> = None;
    for j in 0..left.len() {
        for k in 0..right.len() {
            let (c_idx, b_idx) = pair(j, k);
            let term = left[j].adjoint().compose(
                &right[k]
                    .adjoint()
                    .compose(&right[c_idx].compose(&left[b_idx])?)?,
            )?;
            acc = Some(match acc {
                None => term.into_matrix(),
                Some(m) => m.add(term.matrix()),
            });
        }
    }
    Ok(acc.expect("non-empty operator lists"))
}

/// Operator Cauchy-Schwarz:
/// `-Σ B†_j C†_k C_k B_j ≤ Σ B†_j C†_k C_j B_k ≤ Σ B†_j C†_k C_k B_j`.
pub fn lemma_cauchy_check(bs: &[SectorOperator], cs: &[SectorOperator], tol: f64) -> Result<bool> {
    if bs.len() != cs.len() || bs.is_empty() {
        return Err(Error::dim(
            "Cauchy-Schwarz lists must be non-empty, equal length",
        ));
    }
    let outer = sum_products(bs, cs, |j, k| (k, j))?; // Σ B†_j C†_k C_k B_j
    let middle = sum_products(bs, cs, |j, k| (j, k))?; // Σ B†_j C†_k C_j B_k
    let neg_outer = outer.scale(Complex64::new(-1.0, 0.0));
    Ok(psd_order_holds(&neg_outer, &middle, tol)? && psd_order_holds(&middle, &outer, tol)?)
}

/// Diagonalization lemma:
/// `-‖μ‖ Σ B†_j B_j ≤ Σ μ_{j,k} B†_j B_k ≤ ‖μ‖ Σ B†_j B_j`.
pub fn lemma_diagonalization_check(mu: &CMatrix, bs: &[SectorOperator], tol: f64) -> Result<bool> {
    if mu.rows() != bs.len() || !mu.is_square() {
        return Err(Error::dim(format!(
            "coefficient matrix is {}x{} but the list has {} operators",
            mu.rows(),
            mu.cols(),
            bs.len()
        )));
    }
    if !mu.is_hermitian_within(1e-10) {
        return Err(Error::NotHermitian {
            deviation: mu.hermiticity_defect(),
            tol: 1e-10,
        });
    }
    let mut weighted: Option<CMatrix> = None;
    let mut plain: Option<CMatrix> = None;
    for j in 0..bs.len() {
        for k in 0..bs.len() {
            let prod = bs[j].adjoint().compose(&bs[k])?.into_matrix();
            let w = prod.scale(mu[(j, k)]);
            weighted = Some(match weighted {
                None => w,
                Some(m) => m.add(&w),
            });
            if j == k {
                plain = Some(match plain {
                    None => prod,
                    Some(m) => m.add(&prod),
                });
            }
        }
    }
    let weighted = weighted.expect("non-empty list");
    let plain = plain.expect("non-empty list");
    let mu_norm = spectral_norm(mu);
    let upper = plain.scale(Complex64::new(mu_norm, 0.0));
    let lower = plain.scale(Complex64::new(-mu_norm, 0.0));
    Ok(psd_order_holds(&lower, &weighted, tol)? && psd_order_holds(&weighted, &upper, tol)?)
}

/// Hölder-type inequality for the expectation:
/// `‖Σ B†_j C†_j C_j B_j‖_η ≤ ‖Σ B†_j B_j‖_η · max_k ‖C†_k C_k‖_ξ`,
/// where the B_j map the η-sector into the ξ-sector and the C_j preserve ξ.
pub fn lemma_holder_check(bs: &[SectorOperator], cs: &[SectorOperator], tol: f64) -> Result<bool> {
    if bs.len() != cs.len() || bs.is_empty() {
        return Err(Error::dim("Hölder lists must be non-empty, equal length"));
    }
    for (b, c) in bs.iter().zip(cs) {
        if !c.is_number_preserving() || !c.domain().same_sector(b.codomain()) {
            return Err(Error::sector(
                "each C must preserve the sector the matching B maps into",
            ));
        }
    }
    let mut lhs_sum: Option<SectorOperator> = None;
    let mut bb_sum: Option<SectorOperator> = None;
    let mut cc_max = 0.0f64;
    for (b, c) in bs.iter().zip(cs) {
        let cb = c.compose(b)?;
        let lhs_term = cb.adjoint().compose(&cb)?;
        lhs_sum = Some(match lhs_sum {
            None => lhs_term,
            Some(m) => m.add(&lhs_term)?,
        });
        let bb = b.adjoint().compose(b)?;
        bb_sum = Some(match bb_sum {
            None => bb,
            Some(m) => m.add(&bb)?,
        });
        let cc = c.adjoint().compose(c)?;
        cc_max = cc_max.max(fermionic_seminorm(&cc)?);
    }
    let lhs = fermionic_seminorm(&lhs_sum.expect("non-empty"))?;
    let rhs = fermionic_seminorm(&bb_sum.expect("non-empty"))? * cc_max;
    Ok(lhs <= rhs + tol)
}

/// Convenience: elementary operator lists of a common shape for the lemma
/// tests (`A_j` from the η-sector, picked modes).
pub fn annihilation_list(modes: &[usize], basis: &SectorBasis) -> Result<Vec<SectorOperator>> {
    modes
        .iter()
        .map(|&j| elementary_operator(Elementary::Annihilate(j), basis))
        .collect()
}
