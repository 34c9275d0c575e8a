use std::collections::BTreeMap;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rug::Complex;

use rowpade::hermite::{compute_hermite, MultiIndex};
use rowpade::numerics::{Context, Gauss};
use rowpade::rows::{build_row, estimate_rstar, telescope_terms, RowSource};
use rowpade::series::{catalog, SystemOfSeries};

fn fw() -> SystemOfSeries {
    let params: BTreeMap<String, String> = [("p".to_string(), "2".to_string())].into();
    catalog("5.1-fw", &params).unwrap()
}

fn source(system: &SystemOfSeries) -> RowSource {
    RowSource::System { system: system.clone(), mindex: MultiIndex::new(vec![1, 1]).unwrap() }
}

fn hermite(c: &mut Criterion) {
    let system = fw();
    let mindex = MultiIndex::new(vec![1, 1]).unwrap();
    let ctx = Context::default();
    let mut group = c.benchmark_group("hermite");
    for n in [10, 30, 60] {
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |b, &n| {
            b.iter(|| compute_hermite::<Gauss>(black_box(&system), n, &mindex, &ctx).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("float", n), &n, |b, &n| {
            b.iter(|| compute_hermite::<Complex>(black_box(&system), n, &mindex, &ctx).unwrap())
        });
    }
    group.finish();
}

fn row(c: &mut Criterion) {
    let system = fw();
    let ctx = Context::default();
    let mut group = c.benchmark_group("row");
    group.sample_size(10);
    group.bench_function("exact 4..40", |b| b.iter(|| build_row::<Gauss>(source(&system), 4, 40, &ctx).unwrap()));
    group.bench_function("float 4..40", |b| b.iter(|| build_row::<Complex>(source(&system), 4, 40, &ctx).unwrap()));
    group.finish();
}

fn radius(c: &mut Criterion) {
    let system = fw();
    let ctx = Context::default();
    let row = build_row::<Gauss>(source(&system), 4, 40, &ctx).unwrap();
    let mut group = c.benchmark_group("radius");
    group.sample_size(20);
    group.bench_function("telescope + fit", |b| {
        b.iter(|| estimate_rstar(&telescope_terms(black_box(&row), 0).unwrap()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, hermite, row, radius);
criterion_main!(benches);
