//! The oscillatory kernel `H(eta1) = int_R exp(i (eta1 eta ± |eta|^{1+beta})) d eta`.
//!
//! Split at 0 into `G(eta1) + G(-eta1)` with
//! `G(a) = int_0^inf exp(i (a z + z^p))`, `p = 1 + beta`. Each half is
//! integrated on `[0, b]` along the real axis and then along the ray
//! `b + r e^{i pi/(2p)}`, where the integrand decays exponentially. `b` sits
//! past the stationary point so that the ray stays in the decaying sector.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use super::quadrature::{adaptive_gk, Quadrature};
use crate::error::{Error, Result};
use crate::params::Sign;

const TOL: f64 = 1e-11;
const MAX_EVALS: usize = 4_000_000;
// exp(-DECAY) is the neglected size of the ray integrand beyond the cutoff
const DECAY: f64 = 50.0;

/// Value of `H` with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub error: f64,
}

/// Stationary point of `a z + z^p` on `z > 0` (zero when `a >= 0`).
pub fn stationary_point(a: f64, p: f64) -> f64 {
    if a >= 0.0 {
        0.0
    } else {
        (-a / p).powf(1.0 / (p - 1.0))
    }
}

fn half_line(a: f64, p: f64) -> Result<Quadrature> {
    let b = (2.0 * stationary_point(a, p)).max(1.0);
    let real = adaptive_gk(
        &|z: f64| Complex64::cis(a * z + z.powf(p)),
        0.0,
        b,
        TOL,
        MAX_EVALS,
    );
    let theta = PI / (2.0 * p);
    let dir = Complex64::cis(theta);
    let phase = move |r: f64| {
        let z = Complex64::new(b, 0.0) + dir * r;
        z * a + z.powf(p)
    };
    let mut cut = 1.0;
    while phase(cut).im < DECAY {
        cut *= 2.0;
        if cut > 1e12 {
            return Err(Error::Quadrature {
                estimate: f64::INFINITY,
                tolerance: TOL,
            });
        }
    }
    let ray = adaptive_gk(
        &|r: f64| dir * (Complex64::new(0.0, 1.0) * phase(r)).exp(),
        0.0,
        cut,
        TOL,
        MAX_EVALS,
    );
    let tail = (-DECAY).exp() * cut;
    Ok(real.combine(Quadrature {
        error: ray.error + tail,
        ..ray
    }))
}

/// `H(eta1)` for `beta >= 1`; the `-` sign is the complex conjugate of `+`.
pub fn oscillatory_kernel_h(eta1: f64, beta: f64, sign: Sign) -> Result<KernelValue> {
    if !(beta >= 1.0) || !beta.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "β = {beta} violates β ≥ 1; H is not bounded below it"
        )));
    }
    if !eta1.is_finite() {
        return Err(Error::InvalidArgument(format!("eta1 = {eta1}")));
    }
    let p = 1.0 + beta;
    let q = half_line(eta1, p)?.combine(half_line(-eta1, p)?);
    let value = match sign {
        Sign::Plus => q.value,
        Sign::Minus => q.value.conj(),
    };
    Ok(KernelValue {
        value,
        error: q.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresnel_closed_form() {
        // beta = 1: completing the square gives sqrt(pi) e^{i pi/4} e^{-i eta1^2/4}
        for &eta1 in &[0.0, 0.7, -3.0, 12.5, -50.0, 50.0] {
            let h = oscillatory_kernel_h(eta1, 1.0, Sign::Plus).unwrap();
            let exact = PI.sqrt() * Complex64::cis(PI / 4.0 - eta1 * eta1 / 4.0);
            assert!((h.value - exact).norm() < 1e-8, "{eta1}: {}", (h.value - exact).norm());
            assert!(h.error < 1e-4);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for &eta1 in &[-4.0, 0.3, 9.0] {
            let a = oscillatory_kernel_h(eta1, 2.0, Sign::Plus).unwrap();
            let b = oscillatory_kernel_h(eta1, 2.0, Sign::Minus).unwrap();
            assert_eq!(a.value.conj(), b.value);
        }
    }

    #[test]
    fn rejects_beta_below_one() {
        let e = oscillatory_kernel_h(0.0, 0.5, Sign::Plus).unwrap_err();
        assert!(e.to_string().contains("β ≥ 1"));
    }
}
