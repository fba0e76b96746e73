use criterion::{black_box, criterion_group, criterion_main, Criterion};
use noflab::search::{alpha_bar_exact, alpha_exact, DEFAULT_BUDGET};
use noflab::{closure_fixpoint, closure_min, AbelianGroup, Dims, PointSet};

fn extremal(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let xor4 = AbelianGroup::binary(2).unwrap().table(3).unwrap();
    g.bench_function("alpha_xor4", |b| b.iter(|| alpha_exact(&xor4, DEFAULT_BUDGET).unwrap()));
    g.bench_function("alpha_bar_4_4", |b| b.iter(|| alpha_bar_exact(3, 4, 4, DEFAULT_BUDGET).unwrap()));
    g.finish();
}

fn closures(c: &mut Criterion) {
    let dims = Dims::new(4, 4, 4).unwrap();
    // Every third point of the box.
    let s = PointSet::new(dims, dims.points().step_by(3)).unwrap();
    c.bench_function("closure_min_k4", |b| b.iter(|| closure_min(black_box(&s))));
    c.bench_function("closure_fixpoint_k4", |b| b.iter(|| closure_fixpoint(black_box(&s)).unwrap()));
}

criterion_group!(benches, extremal, closures);
criterion_main!(benches);
