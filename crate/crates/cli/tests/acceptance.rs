//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p fermitrot-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fermitrot::bounds::{
    rigorous_bound_low_order, scaling_bound_general, scaling_bound_path_dense, scaling_bound_sparse,
};
use fermitrot::commutator::{gamma_enumeration, nested_commutator, GammaWord};
use fermitrot::fock::{
    elementary_operator, enumerate_sector, excitation_operator, total_number_operator, Elementary,
    FermionConfig, SectorBasis, SectorOperator,
};
use fermitrot::hamiltonian::{
    assemble, fermi_hubbard, ffft_conjugate_operator, plane_wave, random_coefficient_pair,
    random_sparse_coefficient_pair, tightness_instance, CoefficientPair, TightnessKind,
};
use fermitrot::linalg::CMatrix;
use fermitrot::oracle::FockOracle;
use fermitrot::pathcount::{
    apply_path, closed_form_counts, degree, expand_paths, path_bound, paths_by_starting_site,
    CountRegime, IndexedTerm, Ruleset,
};
use fermitrot::seminorm::{fermionic_seminorm, max_expectation, seminorm_axiom_check};
use fermitrot::tightness::{expectation_nested_t_first, expectation_nested_v_first};
use fermitrot::trotter::{fit_error_order, trotter_error};

/// Signed linear combination of configurations, for exact operator-identity
/// checks. All coefficients stay integral.
#[derive(Default)]
struct SignedMap(HashMap<u64, f64>);

impl SignedMap {
    fn add(&mut self, result: Option<(FermionConfig, i8)>, scale: f64) {
        if let Some((c, s)) = result {
            let entry = self.0.entry(c.word()).or_insert(0.0);
            *entry += s as f64 * scale;
            if *entry == 0.0 {
                self.0.remove(&c.word());
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

fn apply_seq(ops: &[Elementary], c: FermionConfig) -> Option<(FermionConfig, i8)> {
    let mut cur = c;
    let mut sign = 1i8;
    for op in ops.iter().rev() {
        let (next, s) = op.apply(cur)?;
        cur = next;
        sign *= s;
    }
    Some((cur, sign))
}

/// Criterion 1: CAR relations, the fermionic commutation relations, and
/// N = η·I hold exactly on all sectors up to n = 8.
#[test]
fn acceptance_01_algebra_exactness() {
    use Elementary::{Annihilate as A, Create as C, Number as N};
    for n in 2..=8usize {
        for eta in 0..=n {
            let basis = enumerate_sector(n, eta).unwrap();
            for &c in basis.configs() {
                for j in 0..n {
                    for k in 0..n {
                        // A†_j A†_k + A†_k A†_j = 0
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[C(j), C(k)], c), 1.0);
                        acc.add(apply_seq(&[C(k), C(j)], c), 1.0);
                        assert!(acc.is_zero(), "creation CAR failed at n={n} j={j} k={k}");
                        // A_j A_k + A_k A_j = 0
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[A(j), A(k)], c), 1.0);
                        acc.add(apply_seq(&[A(k), A(j)], c), 1.0);
                        assert!(
                            acc.is_zero(),
                            "annihilation CAR failed at n={n} j={j} k={k}"
                        );
                        // A†_j A_k + A_k A†_j = δ_jk I
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[C(j), A(k)], c), 1.0);
                        acc.add(apply_seq(&[A(k), C(j)], c), 1.0);
                        acc.add(Some((c, 1)), if j == k { -1.0 } else { 0.0 });
                        assert!(acc.is_zero(), "mixed CAR failed at n={n} j={j} k={k}");
                    }
                }
                // Commutation relations of the quadratic operators.
                for l in 0..n {
                    for m in 0..n {
                        for j in 0..n {
                            // [A†_l A_m, A†_j] = δ_jm A†_l
                            let mut acc = SignedMap::default();
                            acc.add(apply_seq(&[C(l), A(m), C(j)], c), 1.0);
                            acc.add(apply_seq(&[C(j), C(l), A(m)], c), -1.0);
                            acc.add(apply_seq(&[C(l)], c), if j == m { -1.0 } else { 0.0 });
                            assert!(acc.is_zero(), "[A†A, A†] failed at n={n} l={l} m={m} j={j}");
                            // [A†_l A_m, A_j] = -δ_jl A_m
                            let mut acc = SignedMap::default();
                            acc.add(apply_seq(&[C(l), A(m), A(j)], c), 1.0);
                            acc.add(apply_seq(&[A(j), C(l), A(m)], c), -1.0);
                            acc.add(apply_seq(&[A(m)], c), if j == l { 1.0 } else { 0.0 });
                            assert!(acc.is_zero(), "[A†A, A] failed at n={n} l={l} m={m} j={j}");
                        }
                        // [N_l, N_m] = 0
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[N(l), N(m)], c), 1.0);
                        acc.add(apply_seq(&[N(m), N(l)], c), -1.0);
                        assert!(acc.is_zero(), "[N,N] failed at n={n} l={l} m={m}");
                    }
                    for j in 0..n {
                        // [N_l, A†_j] = δ_lj A†_j and [N_l, A_j] = -δ_lj A_j
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[N(l), C(j)], c), 1.0);
                        acc.add(apply_seq(&[C(j), N(l)], c), -1.0);
                        acc.add(apply_seq(&[C(j)], c), if l == j { -1.0 } else { 0.0 });
                        assert!(acc.is_zero(), "[N, A†] failed at n={n} l={l} j={j}");
                        let mut acc = SignedMap::default();
                        acc.add(apply_seq(&[N(l), A(j)], c), 1.0);
                        acc.add(apply_seq(&[A(j), N(l)], c), -1.0);
                        acc.add(apply_seq(&[A(j)], c), if l == j { 1.0 } else { 0.0 });
                        assert!(acc.is_zero(), "[N, A] failed at n={n} l={l} j={j}");
                    }
                }
            }
            // N acts as η·I on the sector.
            let total = total_number_operator(&basis);
            let expected = CMatrix::identity(basis.dim()).scale(Complex64::new(eta as f64, 0.0));
            assert!(
                total.matrix().sub(&expected).max_abs() <= 1e-12,
                "N != η·I at n={n} eta={eta}"
            );
        }
    }
    println!("acceptance 01 (algebra exactness, n <= 8): PASS");
}

fn acceptance_instances_n4(seed: u64) -> Vec<CoefficientPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        random_coefficient_pair(4, &mut rng),
        random_coefficient_pair(3, &mut rng),
        random_sparse_coefficient_pair(4, 2, &mut rng),
        fermi_hubbard(&[2], 1.0, 4.0).unwrap(),
        tightness_instance(TightnessKind::Dense { s: 4.0, w: 1.0 }, 4).unwrap(),
    ]
}

/// Criterion 2: sector Hamiltonians, commutators, and path expansions
/// match the full Fock-space brute-force oracle at n <= 4, to 1e-12.
#[test]
fn acceptance_02_oracle_equivalence() {
    for coeff in acceptance_instances_n4(20_02) {
        let n = coeff.n();
        let oracle = FockOracle::new(n).unwrap();
        let full_t = oracle.hopping(coeff.tau());
        let full_v = oracle.interaction(coeff.nu_data());
        let full_h = full_t.add(&full_v);
        assert!(oracle.number_preserving_defect(&full_h) <= 1e-12);

        for eta in 0..=n {
            let sector = enumerate_sector(n, eta).unwrap();
            let parts = assemble(&coeff, &sector).unwrap();
            assert!(
                oracle
                    .project(&full_h, &sector)
                    .sub(parts.total.matrix())
                    .max_abs()
                    <= 1e-12,
                "assembled H disagrees with the oracle at eta={eta}"
            );
        }

        let sector = enumerate_sector(n, 2).unwrap();
        let parts = assemble(&coeff, &sector).unwrap();
        for p in 1..=2usize {
            for gamma in gamma_enumeration(p) {
                let ours = nested_commutator(&gamma, &parts.hopping, &parts.interaction).unwrap();
                let pick = |b: bool| if b { &full_t } else { &full_v };
                let mut acc = pick(gamma.bits()[0]).clone();
                for q in 1..gamma.bits().len() {
                    acc = pick(gamma.bits()[q]).commutator(&acc);
                }
                assert!(
                    ours.matrix().sub(&oracle.project(&acc, &sector)).max_abs() <= 1e-12,
                    "nested commutator γ={gamma} disagrees with the oracle"
                );
            }
        }

        // Path expansions: the signed path sum equals the oracle commutator
        // of the indexed terms, projected to the sector.
        let term_full = |t: &IndexedTerm| -> CMatrix {
            if t.is_hopping {
                oracle.creation(t.j).mul(&oracle.annihilation(t.k))
            } else {
                oracle.number(t.j).mul(&oracle.number(t.k))
            }
        };
        let supports = (coeff.tau_support(), coeff.nu_support());
        let mut tuples = Vec::new();
        for &(j1, k1) in supports.0.iter().take(6) {
            for &(j2, k2) in supports.1.iter().take(6) {
                tuples.push([
                    IndexedTerm::hopping(j1, k1),
                    IndexedTerm::interaction(j2, k2),
                ]);
                tuples.push([
                    IndexedTerm::interaction(j2, k2),
                    IndexedTerm::hopping(j1, k1),
                ]);
            }
        }
        for terms in &tuples {
            let mut acc = term_full(&terms[0]);
            for t in &terms[1..] {
                acc = term_full(t).commutator(&acc);
            }
            let expected = oracle.project(&acc, &sector);
            for ruleset in [Ruleset::Standard, Ruleset::NormalOrdered] {
                let paths = expand_paths(terms, ruleset).unwrap();
                let mut sum = CMatrix::zeros(sector.dim(), sector.dim());
                for path in &paths {
                    for (col, &c) in sector.configs().iter().enumerate() {
                        if let Some((out, sign)) = apply_path(path, c) {
                            if let Some(row) = sector.index_of(&out) {
                                sum[(row, col)] += Complex64::new(sign as f64, 0.0);
                            }
                        }
                    }
                }
                assert!(
                    sum.sub(&expected).max_abs() <= 1e-12,
                    "path expansion disagrees with the oracle for {terms:?}"
                );
            }
        }
    }
    println!("acceptance 02 (full-Fock oracle equivalence, n <= 4): PASS");
}

fn random_np_operator(basis: &SectorBasis, rng: &mut ChaCha8Rng) -> SectorOperator {
    let dim = basis.dim();
    let m = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    SectorOperator::new(basis.clone(), basis.clone(), m).unwrap()
}

/// Criterion 3: seminorm axiom suite, the dagger-square identity, and the
/// expectation sandwich on 100 random operators per sector (n <= 6), plus
/// the tight A†_0 A_1 case.
#[test]
fn acceptance_03_seminorm_metric_suite() {
    let mut sector_list = Vec::new();
    for n in 1..=6usize {
        for eta in 0..=n {
            sector_list.push((n, eta));
        }
    }
    sector_list.par_iter().for_each(|&(n, eta)| {
        let basis = enumerate_sector(n, eta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(300 + (n * 16 + eta) as u64);
        for trial in 0..100 {
            let x = random_np_operator(&basis, &mut rng);
            let y = random_np_operator(&basis, &mut rng);
            let lambda = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let report = seminorm_axiom_check(&x, &y, lambda, 1e-6).unwrap();
            assert!(
                report.all_passed(),
                "axiom failure at n={n} eta={eta} trial={trial}: {report:?}"
            );
            let s = fermionic_seminorm(&x).unwrap();
            let w = max_expectation(&x).unwrap();
            assert!(w <= s + 1e-6, "w > seminorm at n={n} eta={eta}");
            assert!(s <= 2.0 * w + 1e-6, "seminorm > 2w at n={n} eta={eta}");
        }
    });
    // The tight case: X = A†_0 A_1 on (n=2, η=1).
    let basis = enumerate_sector(2, 1).unwrap();
    let op = excitation_operator(0, 1, &basis).unwrap();
    assert!((fermionic_seminorm(&op).unwrap() - 1.0).abs() <= 1e-7);
    assert!((max_expectation(&op).unwrap() - 0.5).abs() <= 1e-7);
    println!("acceptance 03 (seminorm metric suite, n <= 6): PASS");
}

fn random_cross_operator(
    domain: &SectorBasis,
    codomain: &SectorBasis,
    rng: &mut ChaCha8Rng,
) -> SectorOperator {
    let m = CMatrix::from_fn(codomain.dim(), domain.dim(), |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    SectorOperator::new(domain.clone(), codomain.clone(), m).unwrap()
}

/// Criterion 4: the operator Cauchy-Schwarz and diagonalization PSD
/// orderings and the Hölder inequality on 100 randomized lists each.
#[test]
fn acceptance_04_lemma_suite() {
    use fermitrot::commutator::{
        lemma_cauchy_check, lemma_diagonalization_check, lemma_holder_check,
    };
    let cases: Vec<u64> = (0..100).collect();
    cases.par_iter().for_each(|&round| {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + round);
        let n = rng.gen_range(3..=5usize);
        let eta = rng.gen_range(1..n);
        let domain = enumerate_sector(n, eta).unwrap();
        let xi = if eta < n && rng.gen_bool(0.5) {
            eta + 1
        } else {
            eta - 1
        };
        let target = enumerate_sector(n, xi.min(n)).unwrap();
        let count = rng.gen_range(2..=3usize);

        let bs: Vec<SectorOperator> = (0..count)
            .map(|_| random_cross_operator(&domain, &target, &mut rng))
            .collect();
        let cs: Vec<SectorOperator> = (0..count)
            .map(|_| random_np_operator(&target, &mut rng))
            .collect();

        assert!(
            lemma_cauchy_check(&bs, &cs, 1e-9).unwrap(),
            "Cauchy-Schwarz ordering failed on round {round}"
        );
        let g = CMatrix::from_fn(count, count, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let mu = g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0));
        assert!(
            lemma_diagonalization_check(&mu, &bs, 1e-9).unwrap(),
            "diagonalization ordering failed on round {round}"
        );
        assert!(
            lemma_holder_check(&bs, &cs, 1e-9).unwrap(),
            "Hölder inequality failed on round {round}"
        );
    });
    println!("acceptance 04 (operator-inequality lemma suite): PASS");
}

/// Criterion 5: fitted log-log error slopes match p + 1 on random (n=6,
/// η=3) instances: within ±0.15 for p ∈ {1,2} and ±0.3 for p = 4.
#[test]
fn acceptance_05_order_scaling() {
    let times = [0.02, 0.04, 0.06, 0.08, 0.1];
    let instances: Vec<u64> = (0..5).collect();
    instances.par_iter().for_each(|&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + i);
        let coeff = random_coefficient_pair(6, &mut rng);
        for (p, tol) in [(1u32, 0.15), (2, 0.15), (4, 0.3)] {
            let errors: Vec<f64> = times
                .iter()
                .map(|&t| trotter_error(p, &coeff, 3, t, 1).unwrap())
                .collect();
            let slope = fit_error_order(&times, &errors).unwrap();
            let target = p as f64 + 1.0;
            assert!(
                (slope - target).abs() <= tol,
                "instance {i}: slope {slope} not within ±{tol} of {target}"
            );
        }
    });
    println!("acceptance 05 (order scaling p ∈ {{1,2,4}}): PASS");
}

/// Criterion 6: the certified low-order bounds dominate the measured error
/// with constant exactly one on every instance tested.
#[test]
fn acceptance_06_certified_dominance() {
    let mut instances = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for _ in 0..4 {
        instances.push((random_coefficient_pair(6, &mut rng), 3usize));
    }
    instances.push((random_sparse_coefficient_pair(6, 2, &mut rng), 2));
    instances.push((fermi_hubbard(&[3], 1.0, 2.0).unwrap(), 3));
    instances.push((
        tightness_instance(TightnessKind::Dense { s: 6.0, w: 1.0 }, 6).unwrap(),
        2,
    ));

    instances.par_iter().for_each(|(coeff, eta)| {
        let sector = enumerate_sector(coeff.n(), *eta).unwrap();
        let parts = assemble(coeff, &sector).unwrap();
        for p in [1u32, 2] {
            for &t in &[0.05, 0.1, 0.2] {
                let certified =
                    rigorous_bound_low_order(p, &parts.hopping, &parts.interaction, t).unwrap();
                let measured = trotter_error(p, coeff, *eta, t, 1).unwrap();
                assert!(
                    measured <= certified + 1e-12,
                    "measured {measured} above certified {certified} (p={p}, t={t})"
                );
            }
        }
    });
    println!("acceptance 06 (certified low-order dominance): PASS");
}

/// Criterion 7: one fitted constant per scaling-bound family covers the
/// measured error, stays stable within ±20% across seeds, and the
/// path-counting dense bound dominates the general one.
#[test]
fn acceptance_07_scaling_bound_dominance() {
    let fit_constants = |seed: u64| -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c_general = 0.0f64;
        let mut c_sparse = 0.0f64;
        for _ in 0..100 {
            let dense = rng.gen_bool(0.5);
            let n = rng.gen_range(4..=6usize);
            let coeff = if dense {
                random_coefficient_pair(n, &mut rng)
            } else {
                random_sparse_coefficient_pair(n, 2, &mut rng)
            };
            let eta = rng.gen_range(2..=3usize);
            for p in [1u32, 2] {
                for &t in &[0.05, 0.1, 0.2] {
                    let measured = trotter_error(p, &coeff, eta, t, 1).unwrap();
                    let general =
                        scaling_bound_general(p, coeff.spectral_tau(), coeff.max_nu(), eta, t);
                    let sparse = scaling_bound_sparse(
                        p,
                        coeff.max_tau(),
                        coeff.max_nu(),
                        coeff.sparsity(),
                        eta,
                        t,
                    );
                    let path = scaling_bound_path_dense(
                        p,
                        coeff.max_tau(),
                        coeff.max_nu(),
                        coeff.n(),
                        eta,
                        t,
                    );
                    assert!(
                        path + 1e-12 >= general,
                        "path-dense bound below the general bound"
                    );
                    c_general = c_general.max(measured / general);
                    c_sparse = c_sparse.max(measured / sparse);
                }
            }
        }
        (c_general, c_sparse)
    };

    let fits: Vec<(f64, f64)> = [700u64, 701, 702]
        .par_iter()
        .map(|&s| fit_constants(s))
        .collect();
    for (idx, accessor) in [0usize, 1].into_iter().enumerate() {
        let values: Vec<f64> = fits
            .iter()
            .map(|f| if accessor == 0 { f.0 } else { f.1 })
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        for v in &values {
            assert!(
                (v - mean).abs() <= 0.2 * mean,
                "family {idx}: fitted constant {v} drifts beyond ±20% of mean {mean}"
            );
        }
        println!(
            "acceptance 07: fitted C[{}] = {:?} (mean {mean:.4})",
            if accessor == 0 { "general" } else { "sparse" },
            values
        );
    }
    println!("acceptance 07 (scaling-bound dominance with stable constants): PASS");
}

/// Brute-force degree oracle: loop tuples and paths, realize each path as
/// a dense sector matrix, and accumulate column norms.
fn brute_force_degree(
    c: FermionConfig,
    gamma: &GammaWord,
    coeff: &CoefficientPair,
    ruleset: Ruleset,
) -> f64 {
    let basis = enumerate_sector(coeff.n(), c.weight()).unwrap();
    let col = basis.index_of(&c).unwrap();
    let tau_support = coeff.tau_support();
    let nu_support = coeff.nu_support();
    let supports: Vec<&Vec<(usize, usize)>> = gamma
        .bits()
        .iter()
        .map(|&b| if b { &tau_support } else { &nu_support })
        .collect();
    if supports.iter().any(|s| s.is_empty()) {
        return 0.0;
    }
    let mut counters = vec![0usize; supports.len()];
    let mut total = 0.0;
    'outer: loop {
        let terms: Vec<IndexedTerm> = counters
            .iter()
            .enumerate()
            .map(|(q, &i)| {
                let (j, k) = supports[q][i];
                IndexedTerm {
                    is_hopping: gamma.bits()[q],
                    j,
                    k,
                }
            })
            .collect();
        for path in expand_paths(&terms, ruleset).unwrap() {
            for p in [&path, &path.adjoint()] {
                let mut matrix = CMatrix::zeros(basis.dim(), basis.dim());
                for (cc, &conf) in basis.configs().iter().enumerate() {
                    if let Some((out, sign)) = apply_path(p, conf) {
                        if let Some(row) = basis.index_of(&out) {
                            matrix[(row, cc)] += Complex64::new(sign as f64, 0.0);
                        }
                    }
                }
                let mut norm_sq = 0.0;
                for row in 0..basis.dim() {
                    norm_sq += matrix[(row, col)].norm_sqr();
                }
                total += 0.5 * norm_sq.sqrt();
            }
        }
        let mut q = 0;
        loop {
            if q == counters.len() {
                break 'outer;
            }
            counters[q] += 1;
            if counters[q] < supports[q].len() {
                break;
            }
            counters[q] = 0;
            q += 1;
        }
    }
    total
}

/// Criterion 8: symbolic degrees equal the brute-force enumeration exactly
/// (n <= 4, p <= 2, both rulesets); per-site sparse counts respect the
/// closed form; the path bound dominates the numeric seminorm.
#[test]
fn acceptance_08_path_count_validity() {
    // Exact degree equality on n <= 4 instances.
    let degree_instances = acceptance_instances_n4(20_08);
    degree_instances.par_iter().for_each(|coeff| {
        for p in 1..=2usize {
            for gamma in gamma_enumeration(p) {
                for eta in [1usize, 2] {
                    let basis = enumerate_sector(coeff.n(), eta).unwrap();
                    for &c in basis.configs() {
                        for ruleset in [Ruleset::Standard, Ruleset::NormalOrdered] {
                            let fast = degree(c, &gamma, coeff, ruleset).unwrap();
                            let slow = brute_force_degree(c, &gamma, coeff, ruleset);
                            assert_eq!(
                                fast, slow,
                                "degree mismatch at γ={gamma} c={c} under {ruleset:?}"
                            );
                        }
                    }
                }
            }
        }
    });

    // Per-site sparse path counts within (2d)^{p+1}(p+1)!/2.
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for d in [2usize, 4] {
        let coeff = random_sparse_coefficient_pair(8, d, &mut rng);
        let d_actual = coeff.sparsity();
        for p in 1..=2usize {
            for gamma in gamma_enumeration(p) {
                let counts = paths_by_starting_site(&gamma, &coeff, Ruleset::Standard).unwrap();
                let cap = closed_form_counts(
                    p,
                    CountRegime::Sparse {
                        d: d_actual,
                        eta: 1,
                    },
                );
                for (site, &count) in counts.iter().enumerate() {
                    assert!(
                        (count as f64) <= cap,
                        "site {site}: {count} paths exceed cap {cap} (γ={gamma})"
                    );
                }
            }
        }
    }

    // Path bound dominates the numeric commutator seminorm on randomized
    // sparse instances, both rulesets.
    let rounds: Vec<u64> = (0..6).collect();
    rounds.par_iter().for_each(|&round| {
        let mut rng = ChaCha8Rng::seed_from_u64(810 + round);
        let coeff = random_sparse_coefficient_pair(6, 2, &mut rng);
        let eta = 2;
        let sector = enumerate_sector(6, eta).unwrap();
        let parts = assemble(&coeff, &sector).unwrap();
        for p in 1..=2usize {
            for gamma in gamma_enumeration(p) {
                let numeric =
                    nested_commutator(&gamma, &parts.hopping, &parts.interaction).unwrap();
                let norm = fermionic_seminorm(&numeric).unwrap();
                for ruleset in [Ruleset::Standard, Ruleset::NormalOrdered] {
                    let bound = path_bound(&gamma, &coeff, eta, ruleset).unwrap();
                    assert!(
                        bound + 1e-9 >= norm,
                        "round {round}: path bound {bound} < seminorm {norm} (γ={gamma})"
                    );
                }
            }
        }
    });
    println!("acceptance 08 (path-count validity): PASS");
}

/// Criterion 9: tightness reproduction.
#[test]
fn acceptance_09_tightness_reproduction() {
    // (a) FFFT turns the all-ones hopping term into n N_0 exactly.
    for n in [6usize, 8] {
        let coeff = tightness_instance(
            TightnessKind::Dense {
                s: n as f64,
                w: 1.0,
            },
            n,
        )
        .unwrap();
        let sector = enumerate_sector(n, 2).unwrap();
        let parts = assemble(&coeff, &sector).unwrap();
        let t_tilde = ffft_conjugate_operator(&parts.hopping, n).unwrap();
        let n0 = elementary_operator(Elementary::Number(0), &sector).unwrap();
        let expected = n0.matrix().scale(Complex64::new(n as f64, 0.0));
        let defect = t_tilde.matrix().sub(&expected).max_abs();
        assert!(defect <= 1e-10, "T̃ - nN_0 defect {defect} at n={n}");
    }

    // (b) Single-layer V-first expectation within additive 4 of (-1)^η 2iη.
    for n in [8usize, 12] {
        for eta in [2usize, 3] {
            let val = expectation_nested_v_first(n, eta, 1).unwrap();
            let target = if eta % 2 == 0 {
                2.0 * eta as f64
            } else {
                -2.0 * eta as f64
            };
            let deviation = (val - Complex64::new(0.0, target)).norm();
            assert!(
                deviation <= 4.0,
                "V-first p=1 at n={n} η={eta}: {val} deviates {deviation} from {target}i"
            );
        }
    }

    // (c) T-first ratio strictly approaches 1 along n ∈ {8, 12, 16}, η=n/4.
    let mut prev_gap = f64::INFINITY;
    for n in [8usize, 12, 16] {
        let eta = n / 4;
        let val = expectation_nested_t_first(n, eta, 1, n as f64, 1.0).unwrap();
        let leading = (n * eta) as f64 / std::f64::consts::PI;
        let ratio = val.norm() / leading;
        let gap = (ratio - 1.0).abs();
        assert!(
            gap < prev_gap,
            "T-first ratio gap did not shrink at n={n}: {gap} after {prev_gap}"
        );
        assert!(
            (0.4..=2.5).contains(&ratio),
            "wild T-first ratio {ratio} at n={n}"
        );
        prev_gap = gap;
    }

    // (d) Double-layer V-first magnitude within additive 8η of 4η².
    for (n, eta) in [(8usize, 2usize), (12, 3)] {
        let val = expectation_nested_v_first(n, eta, 2).unwrap();
        let magnitude = 4.0 * (eta * eta) as f64;
        assert!(
            (val.norm() - magnitude).abs() <= 8.0 * eta as f64,
            "V-first p=2 at n={n} η={eta}: |{val}| vs 4η² = {magnitude}"
        );
    }
    println!("acceptance 09 (tightness reproduction): PASS");
}

/// Criterion 10: plane-wave coefficient norms follow the claimed scalings
/// at constant density: the compensated values vary by less than 2x over
/// n ∈ {8, 27, 64}.
#[test]
fn acceptance_10_plane_wave_norm_scalings() {
    let mut scaled_tau = Vec::new();
    let mut scaled_nu = Vec::new();
    for n in [8usize, 27, 64] {
        let omega = n as f64;
        let coeff = plane_wave(n, omega, n, &[]).unwrap();
        scaled_tau.push(coeff.spectral_tau() * omega.powf(2.0 / 3.0) / (n as f64).powf(2.0 / 3.0));
        scaled_nu.push(coeff.max_nu() * omega.powf(1.0 / 3.0) / (n as f64).powf(1.0 / 3.0));
    }
    for (name, values) in [("spectral(τ)", &scaled_tau), ("max(ν)", &scaled_nu)] {
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        let min = values.iter().cloned().fold(f64::MAX, f64::min);
        assert!(min > 0.0, "{name}: compensated value vanished");
        assert!(
            max / min < 2.0,
            "{name}: compensated values {values:?} vary by {}x >= 2x",
            max / min
        );
    }
    println!(
        "acceptance 10 (plane-wave norm scalings): PASS (τ: {scaled_tau:?}, ν: {scaled_nu:?})"
    );
}

/// Criterion 11: CLI runs with identical config and seed are
/// byte-identical, independent of the worker count.
#[test]
fn acceptance_11_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("error.json");
    std::fs::write(
        &cfg,
        r#"{"family":{"random":{"n":5}},"eta":2,"orders":[1,2],"times":[0.04,0.06,0.08,0.1],"instances":2}"#,
    )
    .unwrap();

    let run_to = |name: &str, args: &[&str]| -> Vec<u8> {
        let out = dir.path().join(name);
        let mut full = vec!["fermitrot"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", out.to_str().unwrap()]);
        let code = fermitrot_cli::run(full);
        assert_eq!(code, 0, "CLI run failed");
        std::fs::read(&out).unwrap()
    };

    let cfg_s = cfg.to_str().unwrap().to_string();
    let first = run_to(
        "a.csv",
        &["error", "--config", &cfg_s, "--seed", "11", "--jobs", "1"],
    );
    let second = run_to(
        "b.csv",
        &["error", "--config", &cfg_s, "--seed", "11", "--jobs", "2"],
    );
    assert_eq!(first, second, "error subcommand is not byte-deterministic");

    let first = run_to("c.csv", &["tightness", "--seed", "5", "--jobs", "2"]);
    let second = run_to("d.csv", &["tightness", "--seed", "5", "--jobs", "1"]);
    assert_eq!(
        first, second,
        "tightness subcommand is not byte-deterministic"
    );

    let first = run_to("e.json", &["selfcheck", "--seed", "9", "--format", "json"]);
    let second = run_to("f.json", &["selfcheck", "--seed", "9", "--format", "json"]);
    assert_eq!(
        first, second,
        "selfcheck subcommand is not byte-deterministic"
    );
    println!("acceptance 11 (CLI determinism): PASS");
}
