use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rossby_core::spectral::{build_mode_grid, random_spectrum, Convolution, SpectralModel};
use rossby_core::ModelParams;
use std::hint::black_box;

fn rhs(c: &mut Criterion) {
    let params = ModelParams::new(0.1, 0.7).unwrap();
    let mut group = c.benchmark_group("nonlinear_term");
    for n in [16usize, 32] {
        let modes = build_mode_grid(n, 4.0).unwrap().retained();
        let state = random_spectrum(&modes, 42, 0.05, 1.5).unwrap();
        let model = SpectralModel::new(modes, params, Convolution::Direct).unwrap();
        let label = if rossby_core::par::is_parallel() {
            "direct_rayon"
        } else {
            "direct_serial_build"
        };
        group.bench_with_input(BenchmarkId::new(label, n), &state, |b, s| {
            b.iter(|| model.rhs_with(black_box(s), Convolution::Direct).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("direct_sequential", n), &state, |b, s| {
            b.iter(|| model.nonlinear_direct_sequential(black_box(&s.amplitudes)))
        });
        group.bench_with_input(BenchmarkId::new("transform", n), &state, |b, s| {
            b.iter(|| {
                model
                    .rhs_with(black_box(s), Convolution::Transform)
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, rhs);
criterion_main!(benches);
