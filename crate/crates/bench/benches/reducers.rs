use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rsar_bench::synthetic_table;
use rsar_core::{bee_rsar, ebr, gen_rsar, quick_reduct, BeeConfig, GaConfig};

fn bench_quick_reduct(c: &mut Criterion) {
    let table = synthetic_table(500, 14, 4, 7);
    c.bench_function("quick_reduct/500x14", |b| {
        b.iter(|| quick_reduct(black_box(&table)).unwrap())
    });
}

fn bench_ebr(c: &mut Criterion) {
    let table = synthetic_table(500, 14, 4, 7);
    c.bench_function("ebr/500x14", |b| {
        b.iter(|| ebr(black_box(&table)).unwrap())
    });
}

fn bench_gen_rsar(c: &mut Criterion) {
    let table = synthetic_table(200, 12, 4, 7);
    let cfg = GaConfig {
        generations: 20,
        ..GaConfig::default()
    };
    c.bench_function("gen_rsar/200x12/20gen", |b| {
        b.iter(|| gen_rsar(black_box(&table), black_box(&cfg), 1).unwrap())
    });
}

fn bench_bee_rsar(c: &mut Criterion) {
    let table = synthetic_table(200, 12, 4, 7);
    let cfg = BeeConfig {
        max_cycles: 50,
        ..BeeConfig::for_table(&table)
    };
    c.bench_function("bee_rsar/200x12/50cyc", |b| {
        b.iter(|| bee_rsar(black_box(&table), black_box(&cfg), 1).unwrap())
    });
}

criterion_group!(
    benches,
    bench_quick_reduct,
    bench_ebr,
    bench_gen_rsar,
    bench_bee_rsar
);
criterion_main!(benches);
