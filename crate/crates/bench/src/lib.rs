//! Shared fixtures for the kernel benchmarks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fermitrot::hamiltonian::{random_coefficient_pair, CoefficientPair};
use fermitrot::CMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(dim: usize, seed: u64) -> CMatrix {
    let mut rng = seeded_rng(seed);
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

pub fn random_hermitian(dim: usize, seed: u64) -> CMatrix {
    let g = random_matrix(dim, seed);
    g.add(&g.dagger()).scale(Complex64::new(0.5, 0.0))
}

pub fn random_instance(n: usize, seed: u64) -> CoefficientPair {
    random_coefficient_pair(n, &mut seeded_rng(seed))
}
