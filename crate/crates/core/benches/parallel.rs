use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mirrormap_core::checker::{self, CheckKind, CheckRequest};
use mirrormap_core::dataset;
use mirrormap_core::delaygue::{self, DelaygueData};
use mirrormap_core::mirrormap::{BundleRequest, MirrorMapBundle};
use mirrormap_core::par::Execution;
use num_rational::Rational64;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn criterion_grid(c: &mut Criterion) {
    // Rank three, all-Fano: the grid search has to visit every point.
    let data = DelaygueData::from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]], vec![4]).unwrap();
    let mut group = c.benchmark_group("criterion_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, 120), &120i64, |b, &q| {
            b.iter(|| delaygue::criterion_check(black_box(&data), q, exec).unwrap())
        });
    }
    group.finish();
}

fn series_bundle(c: &mut Criterion) {
    let config = dataset::polygon(16).unwrap().config();
    let mut group = c.benchmark_group("bundle");
    group.sample_size(10);
    for (name, exec) in MODES {
        let req = BundleRequest {
            d: Rational64::from_integer(12),
            dprime: vec![Some(Rational64::from_integer(14)); config.len()],
            exec,
        };
        group.bench_function(name, |b| b.iter(|| MirrorMapBundle::build(black_box(&config), &req).unwrap()));
    }
    group.finish();
}

fn dataset_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("dataset_batch_p25");
    group.sample_size(10);
    for (name, exec) in MODES {
        let requests: Vec<CheckRequest> = dataset::reflexive_polygons()
            .iter()
            .map(|p| {
                let mut r = CheckRequest::new(p.config(), 25).with_checks(CheckKind::CONJECTURES);
                r.exec = exec;
                r
            })
            .collect();
        group.bench_function(name, |b| b.iter(|| checker::run_batch(black_box(&requests), None, exec)));
    }
    group.finish();
}

criterion_group!(benches, criterion_grid, series_bundle, dataset_batch);
criterion_main!(benches);
