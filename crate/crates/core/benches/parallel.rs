//! Parallel vs sequential throughput of the quadrature kernels.
//!
//! Run with the default features for the rayon path; the sequential numbers
//! use the same chunked reduction so the values are bitwise identical.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use racahlab::expansion::{build_grid, inner_product_tab, inner_product_tab_seq, tabulate};
use racahlab::parallel::{sum_indexed_seq, tabulate_seq};
use racahlab::sphere::{psi_jet, BasisIndex, Params3};

#[cfg(feature = "parallel")]
use racahlab::parallel::sum_indexed_par;

fn bench_inner_product(c: &mut Criterion) {
    let k = Params3::new(0.7, 1.1, 0.4).unwrap();
    let mut group = c.benchmark_group("inner_product");
    for order in [48usize, 96, 192] {
        let grid = build_grid(&k, order).unwrap();
        let idx = BasisIndex::new(6, 3).unwrap();
        let vals = tabulate(&|x, y| psi_jet(idx, &k, x, y).unwrap().f, &grid);
        group.bench_with_input(BenchmarkId::new("sequential", order), &order, |b, _| {
            b.iter(|| inner_product_tab_seq(black_box(&vals), black_box(&vals), &grid))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("rayon", order), &order, |b, _| {
            b.iter(|| inner_product_tab(black_box(&vals), black_box(&vals), &grid))
        });
    }
    group.finish();
}

fn bench_basis_tabulation(c: &mut Criterion) {
    let k = Params3::new(0.7, 1.1, 0.4).unwrap();
    let idx = BasisIndex::new(8, 4).unwrap();
    let mut group = c.benchmark_group("basis_tabulation");
    for order in [48usize, 96] {
        let grid = build_grid(&k, order).unwrap();
        let eval = |i: usize| {
            let (x, y) = grid.node(i);
            psi_jet(idx, &k, x, y).unwrap().f
        };
        group.bench_with_input(BenchmarkId::new("sequential", order), &order, |b, _| {
            b.iter(|| tabulate_seq(grid.len(), black_box(&eval)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("rayon", order), &order, |b, _| {
            b.iter(|| racahlab::parallel::tabulate_par(grid.len(), black_box(&eval)))
        });
    }
    group.finish();
}

fn bench_reduction(c: &mut Criterion) {
    let f = |i: usize| ((i as f64) * 1e-3).sin() / (1.0 + i as f64);
    let mut group = c.benchmark_group("chunked_sum");
    for n in [100_000usize, 1_000_000] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| sum_indexed_seq(n, black_box(&f)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("rayon", n), &n, |b, &n| {
            b.iter(|| sum_indexed_par(n, black_box(&f)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_inner_product, bench_basis_tabulation, bench_reduction);
criterion_main!(benches);
