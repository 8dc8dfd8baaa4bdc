//! Kernel benchmarks: sector enumeration, dense linear algebra, sector
//! assembly, Trotter-error measurement, FFFT construction, and degree
//! enumeration.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fermitrot::commutator::GammaWord;
use fermitrot::fock::enumerate_sector;
use fermitrot::hamiltonian::{assemble, fermi_hubbard, ffft_sector_matrix};
use fermitrot::linalg::{hermitian_eig, numerical_radius, spectral_norm};
use fermitrot::pathcount::{degree_table, Ruleset};
use fermitrot::trotter::trotter_error;
use fermitrot_bench::{random_hermitian, random_instance, random_matrix};

fn bench_sector_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("sector_enumeration");
    for (n, eta) in [(12usize, 6usize), (16, 4)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_eta{eta}")),
            &(n, eta),
            |b, &(n, eta)| b.iter(|| black_box(enumerate_sector(n, eta).unwrap().dim())),
        );
    }
    group.finish();
}

fn bench_eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eig");
    group.sample_size(20);
    for dim in [16usize, 64] {
        let m = random_hermitian(dim, 11);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| black_box(hermitian_eig(m).unwrap().eigenvalues[0]))
        });
    }
    group.finish();
}

fn bench_norms(c: &mut Criterion) {
    let mut group = c.benchmark_group("norms");
    group.sample_size(20);
    let m64 = random_matrix(64, 13);
    group.bench_function("spectral_norm_64", |b| {
        b.iter(|| black_box(spectral_norm(&m64)))
    });
    let m20 = random_matrix(20, 17);
    group.bench_function("numerical_radius_20", |b| {
        b.iter(|| black_box(numerical_radius(&m20).unwrap()))
    });
    group.finish();
}

fn bench_matmul(c: &mut Criterion) {
    let mut group = c.benchmark_group("matmul");
    group.sample_size(10);
    for dim in [128usize, 256] {
        let a = random_matrix(dim, 19);
        let bm = random_matrix(dim, 23);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &dim, |bench, _| {
            bench.iter(|| black_box(a.mul(&bm).max_abs()))
        });
    }
    group.finish();
}

fn bench_assembly_and_error(c: &mut Criterion) {
    let mut group = c.benchmark_group("hamiltonian");
    group.sample_size(20);
    let coeff = random_instance(6, 29);
    let sector = enumerate_sector(6, 3).unwrap();
    group.bench_function("assemble_n6_eta3", |b| {
        b.iter(|| black_box(assemble(&coeff, &sector).unwrap().total.matrix().max_abs()))
    });
    group.bench_function("trotter_error_p2_n6_eta3", |b| {
        b.iter(|| black_box(trotter_error(2, &coeff, 3, 0.1, 1).unwrap()))
    });
    group.finish();
}

fn bench_ffft(c: &mut Criterion) {
    let mut group = c.benchmark_group("ffft_sector_matrix");
    group.sample_size(10);
    for (n, eta) in [(8usize, 2usize), (10, 3)] {
        let basis = enumerate_sector(n, eta).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_eta{eta}")),
            &basis,
            |b, basis| b.iter(|| black_box(ffft_sector_matrix(basis, basis.n()).unwrap())),
        );
    }
    group.finish();
}

fn bench_degree_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree_table");
    group.sample_size(10);
    let coeff = fermi_hubbard(&[3], 1.0, 2.0).unwrap();
    let sector = enumerate_sector(6, 3).unwrap();
    let gamma = GammaWord::new(vec![true, false, false]).unwrap();
    group.bench_function("hubbard_l3_p2", |b| {
        b.iter(|| black_box(degree_table(&sector, &gamma, &coeff, Ruleset::Standard).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_sector_enumeration,
    bench_eigensolver,
    bench_norms,
    bench_matmul,
    bench_assembly_and_error,
    bench_ffft,
    bench_degree_enumeration
);
criterion_main!(benches);
