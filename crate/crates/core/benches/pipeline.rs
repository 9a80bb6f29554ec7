//! Catalog construction and distance scanning, one worker against the full pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polypi_core::catalog::{Catalog, CatalogConfig};
use polypi_core::par;
use polypi_core::search::{scan_distances, SearchParams, TargetConstant};

/// `(label, jobs)`; zero jobs means every available core.
const MODES: [(&str, usize); 2] = [("sequential", 1), ("parallel", 0)];

fn catalog_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog_build");
    group.sample_size(10);
    for n in [8u32, 12] {
        let config = CatalogConfig::new(n);
        for (label, jobs) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &config, |b, config| {
                b.iter(|| par::with_jobs(jobs, || Catalog::build(config).unwrap()))
            });
        }
    }
    group.finish();
}

fn distance_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_scan");
    group.sample_size(10);
    let params = SearchParams::default();
    for n in [8u32, 12] {
        let catalog = Catalog::build(&CatalogConfig::new(n)).unwrap();
        for (label, jobs) in MODES {
            group.bench_with_input(BenchmarkId::new(label, n), &catalog, |b, catalog| {
                b.iter(|| par::with_jobs(jobs, || scan_distances(catalog, &TargetConstant::Pi, &params).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, catalog_build, distance_scan);
criterion_main!(benches);
