//! Coefficient pairs `(τ, ν)` for `H = T + V`, the supported Hamiltonian
//! families, sector assembly, and the fermionic Fourier transform.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{apply_annihilation, apply_creation, SectorBasis, SectorOperator};
use crate::linalg::{spectral_norm, CMatrix, Tolerances};

/// Hermiticity slack accepted for the hopping coefficients.
const TAU_HERMITICITY_TOL: f64 = 1e-12;

/// The coefficient data of an interacting-electron Hamiltonian
/// `H = Σ τ_{j,k} A†_j A_k + Σ ν_{l,m} N_l N_m`, with cached norms.
///
/// `τ` is Hermitian (validated at construction), `ν` is real and stored
/// exactly symmetrized: only the symmetric part of `ν` is observable since
/// the number operators commute.
#[derive(Debug, Clone)]
pub struct CoefficientPair {
    n: usize,
    tau: CMatrix,
    nu: Vec<f64>,
    spectral_tau: f64,
    max_tau: f64,
    max_nu: f64,
    sparsity: usize,
}

impl CoefficientPair {
    pub fn new(tau: CMatrix, nu: Vec<f64>) -> Result<Self> {
        let n = tau.rows();
        if !tau.is_square() {
            return Err(Error::NotSquare {
                rows: tau.rows(),
                cols: tau.cols(),
            });
        }
        if nu.len() != n * n {
            return Err(Error::dim(format!("nu length {} != {n}x{n}", nu.len())));
        }
        tau.check_finite()?;
        if nu.iter().any(|x| !x.is_finite()) {
            return Err(Error::param("nu contains non-finite entries"));
        }
        let defect = tau.hermiticity_defect();
        if defect > TAU_HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation: defect,
                tol: TAU_HERMITICITY_TOL,
            });
        }
        let mut nu = nu;
        for l in 0..n {
            for m in l + 1..n {
                let avg = 0.5 * (nu[l * n + m] + nu[m * n + l]);
                nu[l * n + m] = avg;
                nu[m * n + l] = avg;
            }
        }
        let spectral_tau = spectral_norm(&tau);
        let max_tau = tau.max_abs();
        let max_nu = nu.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let sparsity = sparsity_of(&tau, &nu, n);
        Ok(CoefficientPair {
            n,
            tau,
            nu,
            spectral_tau,
            max_tau,
            max_nu,
            sparsity,
        })
    }

    pub fn zero(n: usize) -> Self {
        CoefficientPair::new(CMatrix::zeros(n, n), vec![0.0; n * n]).expect("zero pair is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tau(&self) -> &CMatrix {
        &self.tau
    }

    pub fn nu(&self, l: usize, m: usize) -> f64 {
        self.nu[l * self.n + m]
    }

    pub fn nu_data(&self) -> &[f64] {
        &self.nu
    }

    /// Spectral norm of τ (cached).
    pub fn spectral_tau(&self) -> f64 {
        self.spectral_tau
    }

    /// Largest |τ| entry (cached).
    pub fn max_tau(&self) -> f64 {
        self.max_tau
    }

    /// Largest |ν| entry (cached).
    pub fn max_nu(&self) -> f64 {
        self.max_nu
    }

    /// Interaction sparsity d (cached).
    pub fn sparsity(&self) -> usize {
        self.sparsity
    }

    /// Indices (j, k) with |τ_{j,k}| above the support cutoff.
    pub fn tau_support(&self) -> Vec<(usize, usize)> {
        let cutoff = Tolerances::default().support_cutoff;
        let mut out = Vec::new();
        for j in 0..self.n {
            for k in 0..self.n {
                if self.tau[(j, k)].norm() > cutoff {
                    out.push((j, k));
                }
            }
        }
        out
    }

    /// Indices (l, m) with |ν_{l,m}| above the support cutoff.
    pub fn nu_support(&self) -> Vec<(usize, usize)> {
        let cutoff = Tolerances::default().support_cutoff;
        let mut out = Vec::new();
        for l in 0..self.n {
            for m in 0..self.n {
                if self.nu[l * self.n + m].abs() > cutoff {
                    out.push((l, m));
                }
            }
        }
        out
    }
}

/// Max row/column support count over both coefficient matrices.
pub fn interaction_sparsity(coeff: &CoefficientPair) -> usize {
    coeff.sparsity()
}

fn sparsity_of(tau: &CMatrix, nu: &[f64], n: usize) -> usize {
    let cutoff = Tolerances::default().support_cutoff;
    let mut best = 0usize;
    for i in 0..n {
        let mut tau_row = 0;
        let mut tau_col = 0;
        let mut nu_row = 0;
        let mut nu_col = 0;
        for k in 0..n {
            if tau[(i, k)].norm() > cutoff {
                tau_row += 1;
            }
            if tau[(k, i)].norm() > cutoff {
                tau_col += 1;
            }
            if nu[i * n + k].abs() > cutoff {
                nu_row += 1;
            }
            if nu[k * n + i].abs() > cutoff {
                nu_col += 1;
            }
        }
        best = best.max(tau_row).max(tau_col).max(nu_row).max(nu_col);
    }
    best
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientPairJson {
    n: usize,
    tau_re: Vec<f64>,
    tau_im: Vec<f64>,
    nu: Vec<f64>,
}

impl Serialize for CoefficientPair {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let doc = CoefficientPairJson {
            n: self.n,
            tau_re: self.tau.data().iter().map(|z| z.re).collect(),
            tau_im: self.tau.data().iter().map(|z| z.im).collect(),
            nu: self.nu.clone(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoefficientPair {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let doc = CoefficientPairJson::deserialize(deserializer)?;
        if doc.tau_re.len() != doc.n * doc.n || doc.tau_im.len() != doc.n * doc.n {
            return Err(serde::de::Error::custom("tau arrays must have n*n entries"));
        }
        let data: Vec<Complex64> = doc
            .tau_re
            .iter()
            .zip(&doc.tau_im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        let tau = CMatrix::from_vec(doc.n, doc.n, data).map_err(serde::de::Error::custom)?;
        CoefficientPair::new(tau, doc.nu).map_err(serde::de::Error::custom)
    }
}

// --- sector assembly -----------------------------------------------------

/// Assembled sector operators of one coefficient pair.
pub struct AssembledHamiltonian {
    pub hopping: SectorOperator,
    pub interaction: SectorOperator,
    pub total: SectorOperator,
}

/// Materialize `T`, `V`, and `H = T + V` on a sector. `V` is diagonal in
/// the configuration basis; `T` is filled column-by-column through the
/// occupation rules.
pub fn assemble(coeff: &CoefficientPair, sector: &SectorBasis) -> Result<AssembledHamiltonian> {
    if coeff.n() != sector.n() {
        return Err(Error::dim(format!(
            "coefficients have {} modes, sector has {}",
            coeff.n(),
            sector.n()
        )));
    }
    let dim = sector.dim();
    let tau_support = coeff.tau_support();
    let nu_support = coeff.nu_support();

    let mut t = CMatrix::zeros(dim, dim);
    let mut v = CMatrix::zeros(dim, dim);
    for (col, &c) in sector.configs().iter().enumerate() {
        for &(j, k) in &tau_support {
            if let Some((mid, s1)) = apply_annihilation(k, c) {
                if let Some((out, s2)) = apply_creation(j, mid) {
                    let row = sector.index_of(&out).expect("number-preserving image");
                    t[(row, col)] += coeff.tau()[(j, k)] * ((s1 * s2) as f64);
                }
            }
        }
        let mut diag = 0.0;
        for &(l, m) in &nu_support {
            if c.occupied(l) && c.occupied(m) {
                diag += coeff.nu(l, m);
            }
        }
        v[(col, col)] = Complex64::new(diag, 0.0);
    }
    let h = t.add(&v);
    let tol = Tolerances::default();
    if h.hermiticity_defect() > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation: h.hermiticity_defect(),
            tol: tol.hermiticity,
        });
    }
    Ok(AssembledHamiltonian {
        hopping: SectorOperator::new(sector.clone(), sector.clone(), t)?,
        interaction: SectorOperator::new(sector.clone(), sector.clone(), v)?,
        total: SectorOperator::new(sector.clone(), sector.clone(), h)?,
    })
}

// --- plane-wave electronic structure -------------------------------------

/// A nucleus of the plane-wave Hamiltonian: positive charge and fractional
/// position inside the computational cell (units of ω^{1/3}).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NucleusSpec {
    pub charge: f64,
    pub position: [f64; 3],
}

impl NucleusSpec {
    fn validate(&self) -> Result<()> {
        if self.charge <= 0.0 {
            return Err(Error::param("nuclear charge must be positive"));
        }
        if self.position.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::param(
                "nuclear position must lie within the cell ([0,1]^3)",
            ));
        }
        Ok(())
    }
}

fn cube_side(n: usize) -> Result<usize> {
    let side = (n as f64).cbrt().round() as usize;
    if side * side * side != n {
        return Err(Error::param(format!(
            "mode count {n} is not a perfect cube"
        )));
    }
    Ok(side)
}

fn grid_points(side: usize) -> Vec<[i64; 3]> {
    let mut pts = Vec::with_capacity(side * side * side);
    for z in 0..side as i64 {
        for y in 0..side as i64 {
            for x in 0..side as i64 {
                pts.push([x, y, z]);
            }
        }
    }
    pts
}

/// Frequency vectors: integer cube with components in [-side, side].
fn frequency_vectors(side: usize) -> Vec<[i64; 3]> {
    let s = side as i64;
    let mut mus = Vec::new();
    for z in -s..=s {
        for y in -s..=s {
            for x in -s..=s {
                mus.push([x, y, z]);
            }
        }
    }
    mus
}

/// Plane-wave-basis electronic-structure coefficients on a cubic grid.
///
/// The electron grid is `r_p = p (ω/n)^{1/3}` over the integer cube of side
/// `n^{1/3}`; frequencies are `κ_μ = 2πμ/ω^{1/3}` with μ running over the
/// integer cube `[-n^{1/3}, n^{1/3}]^3`. The external-potential term is
/// folded into ν through division by η, which is why the electron count is
/// a construction parameter.
pub fn plane_wave(
    n: usize,
    omega: f64,
    eta: usize,
    nuclei: &[NucleusSpec],
) -> Result<CoefficientPair> {
    if omega <= 0.0 {
        return Err(Error::param("cell volume must be positive"));
    }
    if eta == 0 {
        return Err(Error::param("plane-wave construction requires eta >= 1"));
    }
    for nuc in nuclei {
        nuc.validate()?;
    }
    let side = cube_side(n)?;
    let points = grid_points(side);
    let mus = frequency_vectors(side);

    let omega_third = omega.cbrt();
    let kappa_sq_unit = (2.0 * std::f64::consts::PI / omega_third).powi(2);
    let two_pi = 2.0 * std::f64::consts::PI;

    // τ_{j,k} = (1/2n) Σ_μ κ_μ² cos(κ_μ · r_{k-j}); the phase reduces to
    // 2π μ·(p_k - p_j)/side.
    let mut tau = CMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let delta = [
                points[k][0] - points[j][0],
                points[k][1] - points[j][1],
                points[k][2] - points[j][2],
            ];
            let mut sum = 0.0;
            for mu in &mus {
                let mu_sq = (mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2]) as f64;
                let dot = (mu[0] * delta[0] + mu[1] * delta[1] + mu[2] * delta[2]) as f64;
                sum += kappa_sq_unit * mu_sq * (two_pi * dot / side as f64).cos();
            }
            tau[(j, k)] = Complex64::new(sum / (2.0 * n as f64), 0.0);
        }
    }

    // External potential per mode, divided by η so it can ride on ν.
    let mut external = vec![0.0; n];
    if !nuclei.is_empty() {
        for (l, p) in points.iter().enumerate() {
            let mut sum = 0.0;
            for nuc in nuclei {
                for mu in &mus {
                    let mu_sq = (mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2]) as f64;
                    if mu_sq == 0.0 {
                        continue;
                    }
                    // κ_μ · (r̃_ι - r_l) = 2π (μ·frac - μ·p/side)
                    let dot_nuc = mu[0] as f64 * nuc.position[0]
                        + mu[1] as f64 * nuc.position[1]
                        + mu[2] as f64 * nuc.position[2];
                    let dot_grid =
                        (mu[0] * p[0] + mu[1] * p[1] + mu[2] * p[2]) as f64 / side as f64;
                    let phase = two_pi * (dot_nuc - dot_grid);
                    sum += nuc.charge * phase.cos() / (kappa_sq_unit * mu_sq);
                }
            }
            external[l] = -4.0 * std::f64::consts::PI * sum / (omega * eta as f64);
        }
    }

    let mut nu = vec![0.0; n * n];
    for l in 0..n {
        for m in 0..n {
            let mut value = external[l];
            if l != m {
                let delta = [
                    points[l][0] - points[m][0],
                    points[l][1] - points[m][1],
                    points[l][2] - points[m][2],
                ];
                let mut sum = 0.0;
                for mu in &mus {
                    let mu_sq = (mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2]) as f64;
                    if mu_sq == 0.0 {
                        continue;
                    }
                    let dot = (mu[0] * delta[0] + mu[1] * delta[1] + mu[2] * delta[2]) as f64;
                    sum += (two_pi * dot / side as f64).cos() / (kappa_sq_unit * mu_sq);
                }
                value += 2.0 * std::f64::consts::PI * sum / omega;
            }
            nu[l * n + m] = value;
        }
    }

    CoefficientPair::new(tau, nu)
}

// --- Fermi-Hubbard --------------------------------------------------------

/// Fermi-Hubbard coefficients on an open lattice; mode index = 2·site + σ.
pub fn fermi_hubbard(extents: &[usize], s: f64, v: f64) -> Result<CoefficientPair> {
    fermi_hubbard_with_boundary(extents, s, v, false)
}

pub fn fermi_hubbard_with_boundary(
    extents: &[usize],
    s: f64,
    v: f64,
    periodic: bool,
) -> Result<CoefficientPair> {
    if extents.is_empty() {
        return Err(Error::param("at least one lattice dimension required"));
    }
    if extents.iter().any(|&l| l < 2) {
        return Err(Error::param("every lattice extent must be at least 2"));
    }
    let sites: usize = extents.iter().product();
    let n = 2 * sites;

    let site_index = |coords: &[usize]| -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (c, l) in coords.iter().zip(extents) {
            idx += c * stride;
            stride *= l;
        }
        idx
    };

    let mut tau = CMatrix::zeros(n, n);
    let mut coords = vec![0usize; extents.len()];
    for site in 0..sites {
        // Decode coordinates of this site.
        let mut rem = site;
        for (c, l) in coords.iter_mut().zip(extents) {
            *c = rem % l;
            rem /= l;
        }
        for (dim, &l) in extents.iter().enumerate() {
            let neighbor = if coords[dim] + 1 < l {
                let mut next = coords.clone();
                next[dim] += 1;
                Some(site_index(&next))
            } else if periodic && l > 2 {
                let mut next = coords.clone();
                next[dim] = 0;
                Some(site_index(&next))
            } else {
                None
            };
            if let Some(nb) = neighbor {
                for sigma in 0..2 {
                    let a = 2 * site + sigma;
                    let b = 2 * nb + sigma;
                    tau[(a, b)] = Complex64::new(-s, 0.0);
                    tau[(b, a)] = Complex64::new(-s, 0.0);
                }
            }
        }
    }

    let mut nu = vec![0.0; n * n];
    for site in 0..sites {
        let up = 2 * site;
        let down = 2 * site + 1;
        nu[up * n + down] = v / 2.0;
        nu[down * n + up] = v / 2.0;
    }

    CoefficientPair::new(tau, nu)
}

// --- tightness instances --------------------------------------------------

/// Parameters of the lower-bound constructions.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightnessKind {
    /// τ = (s/n) all-ones, ν = w on the top-left (n/2)×(n/2) block.
    Dense { s: f64, w: f64 },
    /// τ = u all-ones on the top-left d×d block, ν = w on (d/2)×(d/2).
    Sparse { u: f64, w: f64, d: usize },
}

pub fn tightness_instance(kind: TightnessKind, n: usize) -> Result<CoefficientPair> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(Error::param(format!(
            "tightness instance needs even n, got {n}"
        )));
    }
    match kind {
        TightnessKind::Dense { s, w } => {
            let tau = CMatrix::from_fn(n, n, |_, _| Complex64::new(s / n as f64, 0.0));
            let mut nu = vec![0.0; n * n];
            for x in 0..n / 2 {
                for y in 0..n / 2 {
                    nu[x * n + y] = w;
                }
            }
            CoefficientPair::new(tau, nu)
        }
        TightnessKind::Sparse { u, w, d } => {
            if d % 2 != 0 || d < 2 || d > n / 2 {
                return Err(Error::param(format!(
                    "sparse tightness instance needs even d with 2 <= d <= n/2, got d={d}, n={n}"
                )));
            }
            let tau = CMatrix::from_fn(n, n, |j, k| {
                if j < d && k < d {
                    Complex64::new(u, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let mut nu = vec![0.0; n * n];
            for x in 0..d / 2 {
                for y in 0..d / 2 {
                    nu[x * n + y] = w;
                }
            }
            CoefficientPair::new(tau, nu)
        }
    }
}

// --- fermionic Fourier transform -------------------------------------------

/// Mode matrix Ω of the fermionic Fourier transform on the first `width`
/// modes: `FFFT† A†_j FFFT = Σ_l Ω_{j,l} A†_l` with
/// `Ω_{j,l} = e^{-2πi jl/width}/√width` for j, l < width, identity beyond.
pub fn ffft_mode_matrix(n: usize, width: usize) -> Result<CMatrix> {
    if width == 0 || width > n {
        return Err(Error::param(format!(
            "transform width {width} out of range for n={n}"
        )));
    }
    let mut omega = CMatrix::zeros(n, n);
    let scale = 1.0 / (width as f64).sqrt();
    for j in 0..width {
        for l in 0..width {
            let angle = -2.0 * std::f64::consts::PI * (j * l) as f64 / width as f64;
            omega[(j, l)] = Complex64::from_polar(scale, angle);
        }
    }
    for j in width..n {
        omega[(j, j)] = Complex64::new(1.0, 0.0);
    }
    Ok(omega)
}

/// Determinant of a small complex matrix by Gaussian elimination with
/// partial pivoting.
fn det_small(m: &mut CMatrix) -> Complex64 {
    let n = m.rows();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        for row in col + 1..n {
            if m[(row, col)].norm() > m[(pivot, col)].norm() {
                pivot = row;
            }
        }
        if m[(pivot, col)].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in col..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(pivot, k)];
                m[(pivot, k)] = tmp;
            }
            det = -det;
        }
        let diag = m[(col, col)];
        det *= diag;
        for row in col + 1..n {
            let factor = m[(row, col)] / diag;
            for k in col..n {
                let sub = factor * m[(col, k)];
                m[(row, k)] -= sub;
            }
        }
    }
    det
}

/// The sector unitary of the width-`w` fermionic Fourier transform.
///
/// With mode matrix Ω, the induced operator Γ satisfies
/// `Γ A†_j Γ† = Σ_l (Ω†)_{j,l} A†_l`, so basis matrix elements are Slater
/// determinants of Ω† submatrices: `⟨c'|Γ|c⟩ = det Ω†[occ(c), occ(c')]`.
pub fn ffft_sector_matrix(basis: &SectorBasis, width: usize) -> Result<SectorOperator> {
    let omega = ffft_mode_matrix(basis.n(), width)?;
    let w = omega.dagger();
    let dim = basis.dim();
    let occ: Vec<Vec<usize>> = basis.configs().iter().map(|c| c.occupied_modes()).collect();
    let eta = basis.eta();

    use rayon::prelude::*;
    let entries: Vec<Vec<Complex64>> = (0..dim)
        .into_par_iter()
        .map(|row| {
            let mut out = Vec::with_capacity(dim);
            let mut sub = CMatrix::zeros(eta, eta);
            for col in 0..dim {
                for (a, &i) in occ[col].iter().enumerate() {
                    for (b, &m) in occ[row].iter().enumerate() {
                        sub[(a, b)] = w[(i, m)];
                    }
                }
                out.push(det_small(&mut sub));
            }
            out
        })
        .collect();
    let mut matrix = CMatrix::zeros(dim, dim);
    for (row, row_entries) in entries.into_iter().enumerate() {
        for (col, value) in row_entries.into_iter().enumerate() {
            matrix[(row, col)] = value;
        }
    }
    SectorOperator::new(basis.clone(), basis.clone(), matrix)
}

/// Conjugate a number-preserving sector operator by the width-`w` FFFT:
/// returns `F† X F`.
pub fn ffft_conjugate_operator(x: &SectorOperator, width: usize) -> Result<SectorOperator> {
    if !x.is_number_preserving() {
        return Err(Error::sector(
            "FFFT conjugation needs a number-preserving operator",
        ));
    }
    let f = ffft_sector_matrix(x.domain(), width)?;
    f.adjoint().compose(&x.compose(&f)?)
}

/// Coefficient-level transform of the hopping matrix: `τ → Ω τ Ω†`, the
/// coefficient matrix of `F† T F`. The interaction has no closed
/// coefficient form after the transform; conjugate the assembled operator
/// instead.
pub fn ffft_conjugate_hopping(tau: &CMatrix, width: usize) -> Result<CMatrix> {
    let omega = ffft_mode_matrix(tau.rows(), width)?;
    Ok(omega.mul(&tau.mul(&omega.dagger())))
}

// --- random instances -------------------------------------------------------

use rand::Rng;

/// Random dense coefficient pair: τ Hermitian with entries of unit scale,
/// ν symmetric.
pub fn random_coefficient_pair<R: Rng>(n: usize, rng: &mut R) -> CoefficientPair {
    let g = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let tau = g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0));
    let mut nu = vec![0.0; n * n];
    for l in 0..n {
        for m in l..n {
            let x = rng.gen_range(-1.0..1.0);
            nu[l * n + m] = x;
            nu[m * n + l] = x;
        }
    }
    CoefficientPair::new(tau, nu).expect("random pair is well formed")
}

/// Random banded pair with interaction sparsity at most `d` (d >= 2):
/// τ couples modes at circular distance 1..=d/2, ν couples distance
/// 0..=(d-1)/2.
pub fn random_sparse_coefficient_pair<R: Rng>(n: usize, d: usize, rng: &mut R) -> CoefficientPair {
    assert!(d >= 2 && n >= 2);
    let mut tau = CMatrix::zeros(n, n);
    for j in 0..n {
        for off in 1..=d / 2 {
            let k = (j + off) % n;
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            tau[(j, k)] = z;
            tau[(k, j)] = z.conj();
        }
    }
    let mut nu = vec![0.0; n * n];
    for l in 0..n {
        for off in 0..=(d - 1) / 2 {
            let m = (l + off) % n;
            let x = rng.gen_range(-1.0..1.0);
            nu[l * n + m] = x;
            nu[m * n + l] = x;
        }
    }
    CoefficientPair::new(tau, nu).expect("random sparse pair is well formed")
}
