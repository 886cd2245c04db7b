//! Building blocks the solver leans on in its hot path: bound
//! computation, separation at an integer point, and model construction.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ccp_core::bounds;
use ccp_core::gen::{generate, ColorDistribution, GenSpec};
use ccp_core::graph::ColoredGraph;
use ccp_core::milp::{build_model, ModelConfig};
use ccp_core::separation::{separate_connectivity, separate_paths, IntegerPoint};
use ccp_core::solution::{Partition, Problem};

fn instance(n: usize, seed: u64) -> ColoredGraph {
    generate(&GenSpec {
        n,
        edge_probability: 0.4,
        colors: (n / 3).max(2),
        distribution: ColorDistribution::Uniform,
        seed,
    })
    .expect("valid spec")
}

fn bench_bounds(c: &mut Criterion) {
    let g = instance(16, 3);
    let mut group = c.benchmark_group("bounds");
    for problem in Problem::ALL {
        group.bench_function(problem.to_string(), |b| {
            b.iter(|| black_box(bounds::bound_and_warmstart(&g, problem)))
        });
    }
    group.finish();
}

fn bench_separation(c: &mut Criterion) {
    let g = instance(16, 4);
    // A deliberately bad point: everything in one slot.
    let whole = Partition::from_parts(g.n(), &[(0..g.n()).collect::<Vec<_>>()]);
    let point = IntegerPoint::from_partition(&g, whole);
    let mut group = c.benchmark_group("separation");
    group.bench_function("connectivity", |b| {
        b.iter(|| black_box(separate_connectivity(&g, &point)))
    });
    group.bench_function("paths", |b| {
        b.iter(|| black_box(separate_paths(&g, &point, 1_000)))
    });
    group.finish();
}

fn bench_model_build(c: &mut Criterion) {
    let g = instance(16, 5);
    c.bench_function("build_model", |b| {
        let cfg = ModelConfig::standard(Problem::Mec, g.n());
        b.iter(|| black_box(build_model(&g, &cfg).expect("model fits")))
    });
}

criterion_group!(benches, bench_bounds, bench_separation, bench_model_build);
criterion_main!(benches);
