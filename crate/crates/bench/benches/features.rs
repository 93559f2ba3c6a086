use criterion::{criterion_group, criterion_main, Criterion};
use mqg_bench::fixture;
use mqg_core::features::feature_vector;
use mqg_core::generators::MdgpKind;
use mqg_core::mappers::{map_mqg, MappingConfig};
use std::hint::black_box;

fn features(c: &mut Criterion) {
    let mut group = c.benchmark_group("features");
    group.sample_size(20);
    for kind in [MdgpKind::IBwn, MdgpKind::SVar, MdgpKind::SVgarch] {
        let net = map_mqg(&fixture(kind, 10_000), &MappingConfig::with_eta(50)).unwrap();
        group.bench_function(kind.name(), |b| b.iter(|| feature_vector(black_box(&net)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, features);
criterion_main!(benches);
