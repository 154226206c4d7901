//! Sequential versus rayon mapping over the two hot per-item workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gvmot_core::gwseries::{gv_to_gw, GVTable};
use gvmot_core::lefschetz::{alt_ng, census_from_bispin, hst_ng, BispinContent};
use gvmot_core::par;
use gvmot_core::verify::gen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn both_routes(v: &BispinContent) -> bool {
    let c = census_from_bispin(v).expect("nonnegative content");
    (0..=5).all(|g| hst_ng(v, g) == alt_ng(&c, g))
}

fn hst(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let inputs: Vec<BispinContent> = (0..1000).map(|_| gen::bispin(&mut rng, 6, 5, 5)).collect();
    let mut group = c.benchmark_group("hst_1000_contents");
    group.bench_function(BenchmarkId::new("map", "seq"), |b| b.iter(|| par::map_seq(black_box(&inputs), both_routes)));
    group.bench_function(BenchmarkId::new("map", "par"), |b| b.iter(|| par::map_par(black_box(&inputs), both_routes)));
    group.finish();
}

fn gw(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let tables: Vec<GVTable> = (0..200).map(|_| gen::gv_table(&mut rng)).collect();
    let forward = |t: &GVTable| gv_to_gw(t, 6, 4).expect("within cuts");
    let mut group = c.benchmark_group("gv_to_gw_200_tables");
    group.bench_function(BenchmarkId::new("map", "seq"), |b| b.iter(|| par::map_seq(black_box(&tables), forward)));
    group.bench_function(BenchmarkId::new("map", "par"), |b| b.iter(|| par::map_par(black_box(&tables), forward)));
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = hst, gw
}
criterion_main!(benches);
