use std::hint::black_box;

use balanced_lines::sliding::find_gamma_with;
use balanced_lines::{batch_params, gen_clustered, gen_random, verify_lower_bound, Color, Exec, Instance};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn batch(seeds: u64, max_n: usize) -> Vec<Instance> {
    (0..seeds)
        .map(|s| {
            let (r, b) = batch_params(s, max_n).unwrap();
            gen_random(s, r, b, 1000).unwrap()
        })
        .collect()
}

// one certificate per instance, fanned out across the batch
fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify-batch");
    group.sample_size(20);
    let insts = batch(64, 30);
    for (name, exec) in [("seq", Exec::Sequential), ("par", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::new(name, insts.len()), &insts, |bch, insts| {
            bch.iter(|| exec.map(black_box(insts), |i| verify_lower_bound(i).map(|c| c.total)))
        });
    }
    group.finish();
}

// candidate curves of one instance, evaluated concurrently
fn curve_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("find-gamma");
    group.sample_size(20);
    let inst = gen_clustered(3, 14, 20, 1000, Color::Blue, 150).unwrap();
    for (name, exec) in [("seq", Exec::Sequential), ("par", Exec::Parallel)] {
        group.bench_function(name, |bch| bch.iter(|| find_gamma_with(black_box(&inst), exec)));
    }
    group.finish();
}

criterion_group!(benches, certificates, curve_search);
criterion_main!(benches);
