//! Membership-matrix construction and the exact solver, on a single-thread
//! pool versus the default pool. With the `parallel` feature disabled both
//! configurations run the sequential fallback, which makes the overhead of
//! the parallel path directly visible.

use criterion::{criterion_group, criterion_main, Criterion};

use covernum::solver::{min_cover, MinCoverOptions};
use covernum::universe::{build_matrix, build_universe, type_index_for, GroupFlavor};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let multi = rayon::ThreadPoolBuilder::new().build().unwrap();
    let multi_name = format!("{}-threads", multi.current_num_threads());
    vec![("1-thread".into(), single), (multi_name, multi)]
}

fn build_s40(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix_build_s40");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(&name, |bench| {
            bench.iter(|| {
                pool.install(|| {
                    let classes = build_universe(40, GroupFlavor::S, &[]).unwrap();
                    let types = type_index_for(40, GroupFlavor::S, None).unwrap();
                    build_matrix(GroupFlavor::S, classes, types).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn gamma_a30(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_a30_end_to_end");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(&name, |bench| {
            bench.iter(|| {
                pool.install(|| {
                    let classes = build_universe(30, GroupFlavor::A, &[]).unwrap();
                    let types = type_index_for(30, GroupFlavor::A, None).unwrap();
                    let matrix = build_matrix(GroupFlavor::A, classes, types).unwrap();
                    min_cover(&matrix, &MinCoverOptions::default()).unwrap().minimum_size
                })
            })
        });
    }
    group.finish();
}

fn solver_only_s30(c: &mut Criterion) {
    let classes = build_universe(30, GroupFlavor::S, &[]).unwrap();
    let types = type_index_for(30, GroupFlavor::S, None).unwrap();
    let matrix = build_matrix(GroupFlavor::S, classes, types).unwrap();
    c.bench_function("min_cover_s30", |bench| {
        bench.iter(|| min_cover(&matrix, &MinCoverOptions::default()).unwrap().minimum_size)
    });
}

criterion_group!(benches, build_s40, gamma_a30, solver_only_s30);
criterion_main!(benches);
