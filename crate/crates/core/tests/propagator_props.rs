//! Invariants of the linear group.

use dzk_core::initial::random_bandlimited;
use dzk_core::solver::mass;
use dzk_core::spectral::{
    forward_transform, inverse_transform, inverse_transform_with_residue, l2_norm, lp_project,
    Grid,
};
use dzk_core::{dispersion_symbol, DispersionParams, Propagator, Sign};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = DispersionParams> {
    (-0.9f64..4.0, 1.0f64..4.0, any::<bool>()).prop_map(|(a, b, s)| {
        DispersionParams::new(a, b, if s { Sign::Plus } else { Sign::Minus }).unwrap()
    })
}

fn grid() -> Grid {
    Grid::new(64, 16, 25.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn symbol_is_odd(p in params(), xi in -1e3f64..1e3, n in -500i64..500) {
        prop_assert_eq!(dispersion_symbol(&p, -xi, n), -dispersion_symbol(&p, xi, n));
        prop_assert_eq!(dispersion_symbol(&p, 0.0, n), 0.0);
    }

    #[test]
    fn unitary(p in params(), seed in any::<u64>(), t in -1e4f64..1e4) {
        let s = forward_transform(&random_bandlimited(grid(), seed)).unwrap();
        let out = Propagator::new(grid(), p).evolve(&s, t).unwrap();
        prop_assert!((l2_norm(&out) / l2_norm(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn group_law_and_inverse(p in params(), seed in any::<u64>()) {
        let prop = Propagator::new(grid(), p);
        let s = forward_transform(&random_bandlimited(grid(), seed)).unwrap();
        let a = prop.evolve(&prop.evolve(&s, 0.3).unwrap(), 0.7).unwrap();
        let b = prop.evolve(&s, 1.0).unwrap();
        let back = prop.evolve(&prop.evolve(&s, 2.5).unwrap(), -2.5).unwrap();
        // Phase rounding grows with the largest |t F| on the grid.
        let fmax = prop.symbol_table().iter().fold(0.0_f64, |m, f| m.max(f.abs()));
        let scale = l2_norm(&s);
        prop_assert!(l2_norm(&a.sub(&b).unwrap()) < 16.0 * f64::EPSILON * fmax * scale + 1e-13 * scale);
        prop_assert!(l2_norm(&back.sub(&s).unwrap()) < 32.0 * f64::EPSILON * fmax * scale + 1e-13 * scale);
    }

    #[test]
    fn commutes_with_projectors(p in params(), seed in any::<u64>(), j in 0u32..6, k in 0u32..4, t in -50.0f64..50.0) {
        let prop = Propagator::new(grid(), p);
        let s = forward_transform(&random_bandlimited(grid(), seed)).unwrap();
        let a = lp_project(&prop.evolve(&s, t).unwrap(), j, k);
        let b = prop.evolve(&lp_project(&s, j, k), t).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn real_data_stays_real(p in params(), seed in any::<u64>(), t in -100.0f64..100.0) {
        let u = random_bandlimited(grid(), seed);
        let out = Propagator::new(grid(), p).evolve(&forward_transform(&u).unwrap(), t).unwrap();
        let (_, residue) = inverse_transform_with_residue(&out);
        prop_assert!(residue < 1e-12);
    }

    #[test]
    fn mass_is_invariant(p in params(), seed in any::<u64>(), t in -100.0f64..100.0) {
        let u = random_bandlimited(grid(), seed);
        let out = inverse_transform(
            &Propagator::new(grid(), p).evolve(&forward_transform(&u).unwrap(), t).unwrap(),
        );
        prop_assert!((mass(&out) / mass(&u) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn zero_time_is_identity_bitwise() {
    let mut s = forward_transform(&random_bandlimited(grid(), 7)).unwrap();
    s.zero_nyquist();
    let out = Propagator::new(grid(), DispersionParams::zk()).evolve(&s, 0.0).unwrap();
    assert_eq!(out, s);
}
