use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dzk_core::estimates::{oscillatory_kernel_h, van_der_corput_check};
use dzk_core::initial::{random_bandlimited, GaussianData};
use dzk_core::solver::{IfRk4, NonlinearOperator, SolverConfig};
use dzk_core::spectral::{apply_multiplier, forward_transform, inverse_transform, TWO_THIRDS};
use dzk_core::{DispersionParams, Grid, MultiplierSpec, Propagator, Sign};

const GRIDS: [(usize, usize); 3] = [(128, 32), (256, 64), (512, 128)];

fn grid(nx: usize, ny: usize) -> Grid {
    Grid::new(nx, ny, 64.0 * PI).unwrap()
}

fn transforms(c: &mut Criterion) {
    let mut g = c.benchmark_group("transform");
    for (nx, ny) in GRIDS {
        let u = random_bandlimited(grid(nx, ny), 1);
        let s = forward_transform(&u).unwrap();
        let id = format!("{nx}x{ny}");
        g.bench_with_input(BenchmarkId::new("forward", &id), &u, |b, u| {
            b.iter(|| forward_transform(black_box(u)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("inverse", &id), &s, |b, s| {
            b.iter(|| inverse_transform(black_box(s)))
        });
    }
    g.finish();
}

fn multipliers(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiplier");
    let s = forward_transform(&random_bandlimited(grid(256, 64), 2)).unwrap();
    let j = MultiplierSpec::j(2.0);
    g.bench_function("bessel_256x64", |b| b.iter(|| apply_multiplier(black_box(&s), &j).unwrap()));
    let w = Propagator::new(grid(256, 64), DispersionParams::zk());
    g.bench_function("propagator_256x64", |b| b.iter(|| w.evolve(black_box(&s), 0.5).unwrap()));
    g.finish();
}

fn solver(c: &mut Criterion) {
    let mut g = c.benchmark_group("solver");
    let cfg = SolverConfig::default();
    for (nx, ny) in GRIDS {
        let gr = grid(nx, ny);
        let u = forward_transform(&GaussianData::default().sample(gr)).unwrap();
        let id = format!("{nx}x{ny}");
        let op = NonlinearOperator::new(gr, TWO_THIRDS);
        g.bench_with_input(BenchmarkId::new("nonlinear_term", &id), &u, |b, u| {
            b.iter(|| op.apply(black_box(u.coeffs())))
        });
        let rk = IfRk4::new(gr, DispersionParams::zk(), 1e-3, &cfg);
        g.bench_with_input(BenchmarkId::new("if_rk4_step", &id), &u, |b, u| {
            b.iter(|| rk.advance(black_box(u.coeffs()), 0.0).unwrap())
        });
    }
    g.finish();
}

fn estimates(c: &mut Criterion) {
    let mut g = c.benchmark_group("estimates");
    g.sample_size(10);
    g.bench_function("kernel_h_beta2", |b| {
        b.iter(|| oscillatory_kernel_h(black_box(12.5), 2.0, Sign::Plus).unwrap())
    });
    g.bench_function("vdc_j5_l8", |b| b.iter(|| van_der_corput_check(5, 8, 1.0, 32).unwrap()));
    g.finish();
}

criterion_group!(benches, transforms, multipliers, solver, estimates);
criterion_main!(benches);
