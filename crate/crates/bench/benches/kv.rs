use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kv_core::{bch, extend_solkv_step, jacobian, krv_dim, LieElt, TAutElt};

fn tower(level: usize) -> TAutElt {
    let mut f = TAutElt::identity(1);
    while f.cap() < level {
        f = extend_solkv_step(&f).unwrap();
    }
    f
}

fn bench_bch(c: &mut Criterion) {
    c.bench_function("bch degree 8", |b| {
        b.iter(|| bch(black_box(&LieElt::x(8)), black_box(&LieElt::y(8))).unwrap())
    });
}

fn bench_extension(c: &mut Criterion) {
    let mut group = c.benchmark_group("extend_solkv_step");
    group.sample_size(10);
    for level in [4, 6, 8] {
        let f = tower(level);
        group.bench_function(format!("from level {level}"), |b| {
            b.iter(|| extend_solkv_step(black_box(&f)).unwrap())
        });
    }
    group.finish();
}

fn bench_jacobian(c: &mut Criterion) {
    let f = tower(7);
    c.bench_function("jacobian at cap 7", |b| b.iter(|| jacobian(black_box(&f))));
}

fn bench_krv_dim(c: &mut Criterion) {
    c.bench_function("krv_dim 8", |b| b.iter(|| krv_dim(black_box(8)).unwrap()));
}

criterion_group!(
    benches,
    bench_bch,
    bench_extension,
    bench_jacobian,
    bench_krv_dim
);
criterion_main!(benches);
