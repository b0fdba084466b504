use std::hint::black_box;

use balanced_lines::{enumerate_naive, enumerate_sweep_with, gen_random, Exec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (r, b) in [(10, 14), (30, 36), (60, 64)] {
        let inst = gen_random(7, r, b, 1 << 20).unwrap();
        let n = r + b;
        if n <= 64 {
            group.bench_with_input(BenchmarkId::new("naive", n), &inst, |bch, inst| {
                bch.iter(|| enumerate_naive(black_box(inst)))
            });
        }
        group.bench_with_input(BenchmarkId::new("sweep-seq", n), &inst, |bch, inst| {
            bch.iter(|| enumerate_sweep_with(black_box(inst), Exec::Sequential))
        });
        group.bench_with_input(BenchmarkId::new("sweep-par", n), &inst, |bch, inst| {
            bch.iter(|| enumerate_sweep_with(black_box(inst), Exec::Parallel))
        });
    }
    group.finish();
}

criterion_group!(benches, enumerate);
criterion_main!(benches);
