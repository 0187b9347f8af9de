use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kuramoto_heol::presets;
use kuramoto_heol::{nominal_control, run, EstimatorWindow, WindowSample};

fn preset_runs(c: &mut Criterion) {
    let multiplicative = presets::paper_multiplicative();
    let additive = presets::paper_additive();
    c.bench_function("run paper-multiplicative 40s", |b| {
        b.iter(|| run(black_box(&multiplicative)).unwrap())
    });
    c.bench_function("run paper-additive 40s", |b| {
        b.iter(|| run(black_box(&additive)).unwrap())
    });
}

fn estimator(c: &mut Criterion) {
    let mut window = EstimatorWindow::new(0.3, 0.01).unwrap();
    for k in 0..window.capacity() {
        let t = k as f64 * 0.01;
        window
            .push(WindowSample {
                time: t,
                delta_theta: t.sin(),
                alpha_delta_u: t.cos(),
            })
            .unwrap();
    }
    c.bench_function("estimate F (31 nodes)", |b| {
        b.iter(|| black_box(&window).estimate())
    });
}

fn feedforward(c: &mut Criterion) {
    let cfg = presets::paper_multiplicative();
    c.bench_function("nominal control N=3", |b| {
        b.iter(|| nominal_control(&cfg.plan, &cfg.model, black_box(12.3)).unwrap())
    });
}

criterion_group!(benches, preset_runs, estimator, feedforward);
criterion_main!(benches);
