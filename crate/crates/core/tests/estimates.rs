//! Oracle checks of the estimates laboratory.

use std::f64::consts::PI;

use dzk_core::estimates::{
    continuous_dependence, energy_estimate_check, gaussian_pair, kato_ponce, oscillatory_kernel_h,
    poisson_residual, van_der_corput_check,
};
use dzk_core::initial::{random_smooth, GaussianData};
use dzk_core::solver::{evolve, SolverConfig};
use dzk_core::spectral::{forward_transform, sobolev_norm, Field, Grid};
use dzk_core::{DispersionParams, Sign};
use proptest::prelude::*;
use statrs::function::gamma::gamma;

#[test]
fn kernel_at_origin_matches_the_gamma_closed_form() {
    // int_R e^{i|eta|^p} d eta = 2 Gamma(1 + 1/p) e^{i pi / (2p)}, p = 1 + beta
    for beta in [1.0, 1.5, 2.0, 3.0] {
        let p = 1.0 + beta;
        let modulus = 2.0 * gamma(1.0 + 1.0 / p);
        let arg = PI / (2.0 * p);
        for (sign, s) in [(Sign::Plus, 1.0), (Sign::Minus, -1.0)] {
            let h = oscillatory_kernel_h(0.0, beta, sign).unwrap();
            assert!((h.value.norm() - modulus).abs() < 1e-8, "beta {beta}: {}", h.value);
            assert!((h.value.arg() - s * arg).abs() < 1e-8, "beta {beta}: {}", h.value);
            assert!(h.error <= 1e-4);
        }
    }
    let h = oscillatory_kernel_h(0.0, 3.0, Sign::Plus).unwrap();
    assert!((h.value.norm() - 1.812805).abs() < 1e-6);
}

#[test]
fn kernel_is_bounded_on_the_sweep() {
    for beta in [1.0, 1.5, 2.0, 3.0] {
        for i in 0..=200 {
            let eta1 = -50.0 + 0.5 * i as f64;
            let h = oscillatory_kernel_h(eta1, beta, Sign::Plus).unwrap();
            assert!(h.value.norm() <= 4.0, "beta {beta}, eta1 {eta1}: {}", h.value);
            if beta == 1.0 {
                assert!((h.value.norm() - PI.sqrt()).abs() < 1e-3);
            }
        }
    }
}

#[test]
fn vdc_ratio_is_stable_when_the_bound_is_held_fixed() {
    // alpha = 1: l - j is constant along (4, 8), (5, 9), (6, 10)
    let ratios: Vec<f64> = [(4, 8), (5, 9), (6, 10)]
        .iter()
        .map(|&(j, l)| van_der_corput_check(j, l, 1.0, 64).unwrap().max_ratio)
        .collect();
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(lo > 0.0 && hi / lo <= 2.0, "{ratios:?}");
    assert!(hi <= 10.0);
}

#[test]
fn vdc_widest_window_is_finite() {
    let r = van_der_corput_check(4, 4, 0.0, 64).unwrap();
    assert!(r.max_ratio.is_finite() && r.max_ratio <= 10.0);
    assert!(r.max_error_ratio < 0.01);
}

#[test]
fn poisson_examples() {
    for s in [1.0, 10.0] {
        let (fh, f) = gaussian_pair(s);
        assert!(poisson_residual(&fh, &f, 200) < 1e-12);
    }
}

#[test]
fn kato_ponce_ratios_survive_grid_doubling() {
    let coarse = Grid::new(128, 32, 40.0).unwrap();
    let fine = Grid::new(256, 64, 40.0).unwrap();
    for seed in 0..10u64 {
        for s in [1.0, 2.0, 2.5] {
            let pair = |g| {
                (
                    random_smooth(g, 2 * seed, 3, 3),
                    random_smooth(g, 2 * seed + 1, 3, 3),
                )
            };
            let (f0, g0) = pair(coarse);
            let (f1, g1) = pair(fine);
            let r0 = kato_ponce(&f0, &g0, s).unwrap().ratio;
            let r1 = kato_ponce(&f1, &g1, s).unwrap().ratio;
            assert!(r0.is_finite() && r0 > 0.0);
            assert!((r1 / r0 - 1.0).abs() <= 0.1, "seed {seed}, s {s}: {r0} vs {r1}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kato_ponce_vanishes_for_x_only_factors(seed in any::<u64>(), s in 1.0f64..3.0, w in 1.0f64..4.0) {
        let g = Grid::new(64, 16, 40.0).unwrap();
        let f = Field::from_fn(g, |x, _| 1.0 + (-(x / w).powi(2)).exp());
        let other = random_smooth(g, seed, 3, 3);
        prop_assert_eq!(kato_ponce(&f, &other, s).unwrap().commutator, 0.0);
    }
}

#[test]
fn continuous_dependence_is_linear_in_delta() {
    let g = Grid::new(256, 64, 64.0 * PI).unwrap();
    let phi = GaussianData::default().sample(g);
    let cfg = SolverConfig {
        dt: 1e-2,
        snapshot_stride: 10,
        ..SolverConfig::default()
    };
    let table =
        continuous_dependence(&phi, &[0.0, 1e-2, 5e-3, 2.5e-3], &DispersionParams::zk(), &cfg, 2.0)
            .unwrap();
    assert!(table.zero_row_exact());
    assert!(table.stable(), "{table:?}");
}

#[test]
fn continuous_dependence_in_the_linear_regime() {
    let g = Grid::new(256, 64, 64.0 * PI).unwrap();
    let phi = GaussianData {
        amplitude: 1e-6,
        ..GaussianData::default()
    }
    .sample(g);
    let cfg = SolverConfig {
        dt: 1e-2,
        t_final: 0.5,
        ..SolverConfig::default()
    };
    let table =
        continuous_dependence(&phi, &[1e-2, 5e-3], &DispersionParams::zk(), &cfg, 2.0).unwrap();
    // unit-L2 perturbation, carried by an L2 isometry
    for row in &table.rows {
        assert!((row.ratio_l2() - 1.0).abs() < 2e-2, "{row:?}");
    }
}

#[test]
fn energy_ratio_on_a_zk_run() {
    let g = Grid::new(256, 64, 64.0 * PI).unwrap();
    let phi = GaussianData::default().sample(g);
    let cfg = SolverConfig {
        dt: 1e-2,
        snapshot_stride: 5,
        ..SolverConfig::default()
    };
    let t = evolve(&phi, &DispersionParams::zk(), &cfg).unwrap();
    let norm = sobolev_norm(&forward_transform(&phi).unwrap(), 2.0);
    let r = energy_estimate_check(&t, 2.0, norm).unwrap();
    assert!(r > 0.0 && r <= 10.0, "{r}");
}
