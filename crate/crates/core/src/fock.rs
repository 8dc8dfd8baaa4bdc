//! Occupation-number basis and elementary fermionic operators.
//!
//! A configuration is the ket `|c_0 c_1 … c_{n-1}⟩` with mode 0 written
//! leftmost. Bit `j` of the packed word stores `c_j`, so Hamming weight and
//! the prefix parity that fixes fermionic signs are single popcounts.
//! Sector bases list all weight-η configurations sorted by the integer value
//! of the ket literal (`|0011⟩ = 3 < |0101⟩ = 5 < …`), which pins every
//! matrix layout in the crate.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Largest sector dimension materialized by default. Dense sector matrices
/// dominate memory, so bigger requests are rejected instead of attempted.
pub const DEFAULT_SECTOR_CAP: usize = 20_000;

/// An n-mode occupation configuration. Bit `j` of `word` is `c_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FermionConfig {
    word: u64,
    n: u8,
}

impl FermionConfig {
    pub fn vacuum(n: usize) -> Self {
        assert!(n <= 64, "at most 64 modes supported");
        FermionConfig {
            word: 0,
            n: n as u8,
        }
    }

    /// Build from a packed word (bit `j` = occupation of mode `j`).
    pub fn from_word(word: u64, n: usize) -> Self {
        assert!(n <= 64, "at most 64 modes supported");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        assert_eq!(word & !mask, 0, "word has bits beyond mode count");
        FermionConfig { word, n: n as u8 }
    }

    pub fn from_occupied(modes: &[usize], n: usize) -> Self {
        let mut word = 0u64;
        for &m in modes {
            assert!(m < n, "mode {m} out of range for {n} modes");
            word |= 1 << m;
        }
        FermionConfig::from_word(word, n)
    }

    /// Parse a ket literal such as `"0110"` (mode 0 first).
    pub fn from_ket_str(s: &str) -> Self {
        let n = s.len();
        let mut word = 0u64;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '1' => word |= 1 << j,
                '0' => {}
                _ => panic!("ket literal must be 0/1"),
            }
        }
        FermionConfig::from_word(word, n)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn word(&self) -> u64 {
        self.word
    }

    #[inline]
    pub fn occupied(&self, j: usize) -> bool {
        debug_assert!(j < self.n());
        self.word >> j & 1 == 1
    }

    /// Hamming weight `|c| = Σ_j c_j`.
    #[inline]
    pub fn weight(&self) -> usize {
        self.word.count_ones() as usize
    }

    /// `(-1)^{Σ_{k<j} c_k}`.
    #[inline]
    pub fn prefix_sign(&self, j: usize) -> i8 {
        let mask = (1u64 << j) - 1;
        if (self.word & mask).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[inline]
    fn with_set(&self, j: usize) -> Self {
        FermionConfig {
            word: self.word | 1 << j,
            n: self.n,
        }
    }

    #[inline]
    fn with_cleared(&self, j: usize) -> Self {
        FermionConfig {
            word: self.word & !(1 << j),
            n: self.n,
        }
    }

    /// Integer value of the ket literal (`c_0` most significant). This is
    /// the canonical sort key of sector bases.
    pub fn ket_value(&self) -> u64 {
        self.word.reverse_bits() >> (64 - self.n as u32)
    }

    pub fn occupied_modes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.occupied(j)).collect()
    }
}

impl fmt::Display for FermionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for j in 0..self.n() {
            write!(f, "{}", if self.occupied(j) { '1' } else { '0' })?;
        }
        write!(f, "⟩")
    }
}

/// `A†_j |c⟩`: `None` when mode `j` is already occupied, otherwise the new
/// configuration together with the sign `(-1)^{Σ_{k<j} c_k}`.
#[inline]
pub fn apply_creation(j: usize, c: FermionConfig) -> Option<(FermionConfig, i8)> {
    assert!(j < c.n(), "mode index {j} out of range for {} modes", c.n());
    if c.occupied(j) {
        None
    } else {
        Some((c.with_set(j), c.prefix_sign(j)))
    }
}

/// `A_j |c⟩`: `None` when mode `j` is empty, otherwise the cleared
/// configuration with the sign `(-1)^{Σ_{k<j} c_k}`.
#[inline]
pub fn apply_annihilation(j: usize, c: FermionConfig) -> Option<(FermionConfig, i8)> {
    assert!(j < c.n(), "mode index {j} out of range for {} modes", c.n());
    if c.occupied(j) {
        Some((c.with_cleared(j), c.prefix_sign(j)))
    } else {
        None
    }
}

/// An elementary fermionic operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Elementary {
    Create(usize),
    Annihilate(usize),
    Number(usize),
}

impl Elementary {
    pub fn mode(&self) -> usize {
        match *self {
            Elementary::Create(j) | Elementary::Annihilate(j) | Elementary::Number(j) => j,
        }
    }

    pub fn adjoint(&self) -> Elementary {
        match *self {
            Elementary::Create(j) => Elementary::Annihilate(j),
            Elementary::Annihilate(j) => Elementary::Create(j),
            Elementary::Number(j) => Elementary::Number(j),
        }
    }

    /// Net change in electron count produced by this operator.
    pub fn charge(&self) -> i64 {
        match *self {
            Elementary::Create(_) => 1,
            Elementary::Annihilate(_) => -1,
            Elementary::Number(_) => 0,
        }
    }

    /// Apply to a configuration, returning the image and sign, or `None`
    /// when the operator annihilates the state.
    #[inline]
    pub fn apply(&self, c: FermionConfig) -> Option<(FermionConfig, i8)> {
        match *self {
            Elementary::Create(j) => apply_creation(j, c),
            Elementary::Annihilate(j) => apply_annihilation(j, c),
            Elementary::Number(j) => {
                assert!(j < c.n());
                if c.occupied(j) {
                    Some((c, 1))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Elementary::Create(j) => write!(f, "A†_{j}"),
            Elementary::Annihilate(j) => write!(f, "A_{j}"),
            Elementary::Number(j) => write!(f, "N_{j}"),
        }
    }
}

#[derive(Debug)]
struct BasisInner {
    n: usize,
    eta: usize,
    configs: Vec<FermionConfig>,
    index: HashMap<u64, usize>,
}

/// Ordered basis of the η-electron sector with config → position lookup.
/// Clones are cheap (shared storage).
#[derive(Debug, Clone)]
pub struct SectorBasis {
    inner: Arc<BasisInner>,
}

/// Binomial coefficient in wide arithmetic (for cap checks).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Canonical basis of all weight-η configurations of `n` modes, capped at
/// [`DEFAULT_SECTOR_CAP`] dimensions.
pub fn enumerate_sector(n: usize, eta: usize) -> Result<SectorBasis> {
    enumerate_sector_capped(n, eta, DEFAULT_SECTOR_CAP)
}

pub fn enumerate_sector_capped(n: usize, eta: usize, cap: usize) -> Result<SectorBasis> {
    if n > 64 {
        return Err(Error::param(format!("mode count {n} exceeds 64")));
    }
    if eta > n {
        return Err(Error::EtaOutOfRange { eta, n });
    }
    let dim = binomial(n, eta);
    if dim > cap as u128 {
        return Err(Error::SectorTooLarge { dim, cap });
    }
    let dim = dim as usize;

    // Enumerate ket keys (big-endian literal values) of fixed popcount in
    // ascending order via Gosper's hack, then unreverse into packed words.
    let mut configs = Vec::with_capacity(dim);
    let mut key: u64 = if eta == 0 { 0 } else { (1u64 << eta) - 1 };
    for _ in 0..dim {
        let word = if n == 0 {
            0
        } else {
            key.reverse_bits() >> (64 - n as u32)
        };
        configs.push(FermionConfig::from_word(word, n));
        if eta == 0 {
            break;
        }
        // Gosper: next larger integer with the same popcount.
        let low = key & key.wrapping_neg();
        let ripple = key.wrapping_add(low);
        if ripple == 0 {
            break;
        }
        key = ripple | (((key ^ ripple) >> 2) / low.max(1));
    }
    let index = configs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.word(), i))
        .collect();
    Ok(SectorBasis {
        inner: Arc::new(BasisInner {
            n,
            eta,
            configs,
            index,
        }),
    })
}

impl SectorBasis {
    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn eta(&self) -> usize {
        self.inner.eta
    }

    pub fn dim(&self) -> usize {
        self.inner.configs.len()
    }

    pub fn configs(&self) -> &[FermionConfig] {
        &self.inner.configs
    }

    pub fn config(&self, i: usize) -> FermionConfig {
        self.inner.configs[i]
    }

    pub fn index_of(&self, c: &FermionConfig) -> Option<usize> {
        self.inner.index.get(&c.word()).copied()
    }

    pub fn same_sector(&self, other: &SectorBasis) -> bool {
        self.n() == other.n() && self.eta() == other.eta()
    }
}

/// A dense matrix between two sector bases.
#[derive(Debug, Clone)]
pub struct SectorOperator {
    domain: SectorBasis,
    codomain: SectorBasis,
    matrix: CMatrix,
}

impl SectorOperator {
    pub fn new(domain: SectorBasis, codomain: SectorBasis, matrix: CMatrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::dim(format!(
                "operator matrix {}x{} does not match codomain {} / domain {}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(SectorOperator {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: SectorBasis, codomain: SectorBasis) -> Self {
        let matrix = CMatrix::zeros(codomain.dim(), domain.dim());
        SectorOperator {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(basis: SectorBasis) -> Self {
        let matrix = CMatrix::identity(basis.dim());
        SectorOperator {
            domain: basis.clone(),
            codomain: basis,
            matrix,
        }
    }

    pub fn domain(&self) -> &SectorBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &SectorBasis {
        &self.codomain
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Domain and codomain are the same (n, η) sector.
    pub fn is_number_preserving(&self) -> bool {
        self.domain.same_sector(&self.codomain)
    }

    pub fn add(&self, other: &SectorOperator) -> Result<SectorOperator> {
        self.check_same_shape(other, "add")?;
        Ok(SectorOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn sub(&self, other: &SectorOperator) -> Result<SectorOperator> {
        self.check_same_shape(other, "sub")?;
        Ok(SectorOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.sub(&other.matrix),
        })
    }

    pub fn scale(&self, s: Complex64) -> SectorOperator {
        SectorOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(s),
        }
    }

    /// Operator composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &SectorOperator) -> Result<SectorOperator> {
        if !self.domain.same_sector(&rhs.codomain) {
            return Err(Error::sector(format!(
                "compose: inner sectors (n={}, η={}) vs (n={}, η={})",
                self.domain.n(),
                self.domain.eta(),
                rhs.codomain.n(),
                rhs.codomain.eta()
            )));
        }
        Ok(SectorOperator {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&rhs.matrix),
        })
    }

    pub fn adjoint(&self) -> SectorOperator {
        SectorOperator {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.dagger(),
        }
    }

    /// `[self, other]` for number-preserving operators on a shared sector.
    pub fn commutator(&self, other: &SectorOperator) -> Result<SectorOperator> {
        if !self.is_number_preserving()
            || !other.is_number_preserving()
            || !self.domain.same_sector(&other.domain)
        {
            return Err(Error::sector(
                "commutator requires one shared square sector",
            ));
        }
        Ok(SectorOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.commutator(&other.matrix),
        })
    }

    fn check_same_shape(&self, other: &SectorOperator, what: &str) -> Result<()> {
        if self.domain.same_sector(&other.domain) && self.codomain.same_sector(&other.codomain) {
            Ok(())
        } else {
            Err(Error::sector(format!("{what} on mismatched sectors")))
        }
    }
}

/// Matrix of a single elementary operator out of `domain`.
///
/// Creation maps into the (η+1)-sector, annihilation into (η−1), number
/// stays put. Every column has at most one nonzero entry of modulus 1.
pub fn elementary_operator(kind: Elementary, domain: &SectorBasis) -> Result<SectorOperator> {
    let n = domain.n();
    let eta = domain.eta();
    if kind.mode() >= n {
        return Err(Error::ModeOutOfRange {
            mode: kind.mode(),
            n,
        });
    }
    let target_eta = eta as i64 + kind.charge();
    if target_eta < 0 || target_eta > n as i64 {
        return Err(Error::EtaOutOfRange {
            eta: target_eta.clamp(0, i64::MAX) as usize,
            n,
        });
    }
    let codomain = if target_eta as usize == eta {
        domain.clone()
    } else {
        enumerate_sector(n, target_eta as usize)?
    };

    let mut matrix = CMatrix::zeros(codomain.dim(), domain.dim());
    for (col, &c) in domain.configs().iter().enumerate() {
        if let Some((image, sign)) = kind.apply(c) {
            let row = codomain
                .index_of(&image)
                .expect("image stays in the target sector");
            matrix[(row, col)] = Complex64::new(sign as f64, 0.0);
        }
    }
    SectorOperator::new(domain.clone(), codomain, matrix)
}

/// Same-sector matrix of `A†_j A_k`, built column-by-column.
pub fn excitation_operator(j: usize, k: usize, basis: &SectorBasis) -> Result<SectorOperator> {
    product_operator(&[Elementary::Create(j), Elementary::Annihilate(k)], basis)
}

/// Same-sector matrix of an ordered product of elementary operators
/// (leftmost applied last). The product must conserve electron count.
pub fn product_operator(ops: &[Elementary], basis: &SectorBasis) -> Result<SectorOperator> {
    let n = basis.n();
    for op in ops {
        if op.mode() >= n {
            return Err(Error::ModeOutOfRange { mode: op.mode(), n });
        }
    }
    let net: i64 = ops.iter().map(|o| o.charge()).sum();
    if net != 0 {
        return Err(Error::param(format!(
            "product changes electron count by {net}; not a sector endomorphism"
        )));
    }
    let mut matrix = CMatrix::zeros(basis.dim(), basis.dim());
    'col: for (col, &c) in basis.configs().iter().enumerate() {
        let mut cur = c;
        let mut sign = 1i8;
        for op in ops.iter().rev() {
            match op.apply(cur) {
                Some((next, s)) => {
                    cur = next;
                    sign *= s;
                }
                None => continue 'col,
            }
        }
        if let Some(row) = basis.index_of(&cur) {
            matrix[(row, col)] += Complex64::new(sign as f64, 0.0);
        }
    }
    SectorOperator::new(basis.clone(), basis.clone(), matrix)
}

/// The total-number operator `N = Σ_j N_j` on a sector (η times identity).
pub fn total_number_operator(basis: &SectorBasis) -> SectorOperator {
    let mut matrix = CMatrix::zeros(basis.dim(), basis.dim());
    for (i, c) in basis.configs().iter().enumerate() {
        matrix[(i, i)] = Complex64::new(c.weight() as f64, 0.0);
    }
    SectorOperator {
        domain: basis.clone(),
        codomain: basis.clone(),
        matrix,
    }
}
