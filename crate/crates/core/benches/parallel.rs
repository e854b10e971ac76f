//! Point counting and the group order, one thread vs the rayon pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quartic_jacobian::counting::{count_points_with, jacobian_order_with};
use quartic_jacobian::curve::CurveContext;
use quartic_jacobian::par::Execution;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if Execution::available() != Execution::Sequential {
        m.push(("parallel", Execution::available()));
    }
    m
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_points");
    group.sample_size(10);
    for (p, k) in [(31, 2), (13, 3)] {
        let ctx = CurveContext::reference(p).unwrap();
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, format!("{p}^{k}")), &k, |b, &k| {
                b.iter(|| count_points_with(&ctx, k, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn order(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobian_order");
    group.sample_size(10);
    let ctx = CurveContext::reference(11).unwrap();
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| jacobian_order_with(&ctx, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, counting, order);
criterion_main!(benches);
