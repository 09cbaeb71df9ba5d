use std::hint::black_box;

use carlitz_core::{
    certify_absolute_irreducibility, m_matrix_nonsingular, Carlitz, Field, DEFAULT_SIZE_LIMIT,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn field(q: u64) -> Field {
    Field::with_order(q, None).unwrap()
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("certificate");
    for (q, s) in [(2u64, 3u32), (3, 2), (4, 2)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("q{q}_s{s}")),
            &(q, s),
            |b, &(q, s)| {
                // fresh context each time so cached g_k do not hide the work
                b.iter(|| certify_absolute_irreducibility(&Carlitz::new(&field(q)), black_box(s)).unwrap())
            },
        );
    }
    group.finish();
}

fn m_determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("det_m");
    for (q, k) in [(2u64, 5u32), (3, 3)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("q{q}_k{k}")),
            &(q, k),
            |b, &(q, k)| b.iter(|| m_matrix_nonsingular(q, black_box(k), DEFAULT_SIZE_LIMIT).unwrap()),
        );
    }
    group.finish();
}

fn beta_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("beta");
    for (q, k) in [(2u64, 63u64), (3, 80), (4, 63)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("q{q}_k{k}")),
            &(q, k),
            |b, &(q, k)| b.iter(|| Carlitz::new(&field(q)).beta(black_box(k)).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, certificates, m_determinants, beta_construction);
criterion_main!(benches);
